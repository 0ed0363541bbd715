"""
Finite non-degenerate set-theoretic solutions of the Yang–Baxter equation.

Purpose: tables (λ, ρ) with r(x,y) = (λ_x(y), ρ_y(x)) and their constructions
- validate_solution checks non-degeneracy, bijectivity and the braid relation
- derived solution, retract and the retract tower
- the solution r_B attached to a skew brace
- decomposition factors, minimal factors (atoms) and a brute-force oracle
- random permutation solutions and exhaustive enumeration of small solutions
"""

import logging
from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from skewlab.shared import config
from skewlab.shared.brace import FiniteSkewBrace
from skewlab.shared.elementset import ElementSet
from skewlab.shared.errors import (
    BraidFailure,
    Degenerate,
    IllDefined,
    NotBijective,
    PartialResult,
    TableShapeError,
    TooLarge,
    ensure,
)
from skewlab.shared.groups import as_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteSolution:
    """
    A solution on 0..n-1.

    lam[x][y] = λ_x(y) and rho[x][y] = ρ_x(y), so r(x,y) = (lam[x][y], rho[y][x]).
    """

    lam: np.ndarray
    rho: np.ndarray

    @property
    def size(self) -> int:
        return int(self.lam.shape[0])

    def r(self, x: int, y: int) -> Tuple[int, int]:
        return int(self.lam[x, y]), int(self.rho[y, x])

    def lam_inverse(self) -> np.ndarray:
        return np.argsort(self.lam, axis=1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteSolution)
            and np.array_equal(self.lam, other.lam)
            and np.array_equal(self.rho, other.rho)
        )

    def __hash__(self) -> int:
        return hash((self.lam.tobytes(), self.rho.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteSolution(size={self.size})"


@dataclass(frozen=True)
class Partition:
    """Blocks of a carrier: block_id[x] is the block of x, ids contiguous from 0."""

    block_id: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.block_id)

    @classmethod
    def from_blocks(cls, n: int, blocks: List[ElementSet]) -> 'Partition':
        ids = [-1] * n
        ordered = sorted(blocks, key=lambda b: min(b))
        for i, block in enumerate(ordered):
            for x in block:
                ids[x] = i
        return cls(tuple(ids))

    def blocks(self) -> List[ElementSet]:
        count = max(self.block_id, default=-1) + 1
        return [
            ElementSet.from_iterable(self.size, [x for x, b in enumerate(self.block_id) if b == i])
            for i in range(count)
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {'size': self.size, 'block_id': list(self.block_id), 'blocks': [b.to_list() for b in self.blocks()]}


# =============================================================================
# Validation
# =============================================================================

def _apply_r(lam: np.ndarray, rho: np.ndarray, u: np.ndarray, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return lam[u, v], rho[v, u]


def _braid_sides(lam: np.ndarray, rho: np.ndarray):
    n = lam.shape[0]
    x, y, z = np.indices((n, n, n))
    # (r×id)(id×r)(r×id)
    a, b = _apply_r(lam, rho, x, y)
    b, c = _apply_r(lam, rho, b, z)
    a, b = _apply_r(lam, rho, a, b)
    # (id×r)(r×id)(id×r)
    e, f = _apply_r(lam, rho, y, z)
    d, e = _apply_r(lam, rho, x, e)
    e, f = _apply_r(lam, rho, e, f)
    return (a, b, c), (d, e, f)


def validate_solution(lam, rho) -> FiniteSolution:
    """
    Validate (λ, ρ) tables as a non-degenerate bijective solution.

    Raises:
        TableShapeError, Degenerate(kind, x), NotBijective, BraidFailure(x,y,z)
    """
    L = as_table(lam)
    R = as_table(rho)
    if L.shape != R.shape:
        raise TableShapeError(f"λ table {L.shape} and ρ table {R.shape} differ in size")
    n = L.shape[0]
    expected = np.arange(n)
    for kind, table in (('lambda', L), ('rho', R)):
        bad = np.flatnonzero(~np.all(np.sort(table, axis=1) == expected, axis=1))
        if bad.size:
            raise Degenerate(kind, int(bad[0]))

    x, y = np.indices((n, n))
    codes = (L[x, y] * n + R[y, x]).ravel()
    values, counts = np.unique(codes, return_counts=True)
    if np.any(counts > 1):
        hit = int(values[np.argmax(counts > 1)])
        raise NotBijective(divmod(hit, n))

    lhs, rhs = _braid_sides(L, R)
    diff = (lhs[0] != rhs[0]) | (lhs[1] != rhs[1]) | (lhs[2] != rhs[2])
    bad = np.argwhere(diff)
    if bad.size:
        raise BraidFailure(*(int(v) for v in bad[0]))

    L.setflags(write=False)
    R.setflags(write=False)
    return FiniteSolution(lam=L, rho=R)


def is_involutive(X: FiniteSolution) -> bool:
    n = X.size
    x, y = np.indices((n, n))
    u, v = _apply_r(X.lam, X.rho, x, y)
    a, b = _apply_r(X.lam, X.rho, u, v)
    return bool(np.array_equal(a, x) and np.array_equal(b, y))


def is_solution_morphism(X: FiniteSolution, Y: FiniteSolution, f: np.ndarray) -> bool:
    """f(λ_x(y)) = λ_{f x}(f y) and f(ρ_x(y)) = ρ_{f x}(f y)."""
    f = np.asarray(f)
    fx, fy = f[:, None], f[None, :]
    return bool(np.array_equal(f[X.lam], Y.lam[fx, fy]) and np.array_equal(f[X.rho], Y.rho[fx, fy]))


# =============================================================================
# Constructions
# =============================================================================

def flip_solution(n: int) -> FiniteSolution:
    rows = np.tile(np.arange(n), (n, 1))
    return validate_solution(rows, rows)


def permutation_solution(sigma, tau) -> FiniteSolution:
    """r(x,y) = (σ(y), τ(x)); a solution exactly when στ = τσ."""
    n = len(sigma)
    return validate_solution(np.tile(np.asarray(sigma), (n, 1)), np.tile(np.asarray(tau), (n, 1)))


def shift_solution(n: int) -> FiniteSolution:
    """r(x,y) = (y, x+1) on ℤ_n."""
    return permutation_solution(np.arange(n), (np.arange(n) + 1) % n)


def disjoint_union(X: FiniteSolution, Y: FiniteSolution) -> FiniteSolution:
    """X ⊔ Y with Y shifted by |X|; points from different parts are swapped by r."""
    m, n = X.size, Y.size
    lam = np.tile(np.arange(m + n), (m + n, 1))
    rho = lam.copy()
    lam[:m, :m] = X.lam
    rho[:m, :m] = X.rho
    lam[m:, m:] = Y.lam + m
    rho[m:, m:] = Y.rho + m
    return validate_solution(lam, rho)


def random_solution(n: int, seed: int) -> FiniteSolution:
    """
    Seeded permutation solution with σ, τ powers of one random permutation.

    Args:
        n: size, at least 1
        seed: seed for numpy's default generator
    """
    rng = np.random.default_rng(seed)
    base = rng.permutation(n)
    i, j = (int(v) for v in rng.integers(0, n + 1, size=2))
    return permutation_solution(_perm_power(base, i), _perm_power(base, j))


def _perm_power(perm: np.ndarray, k: int) -> np.ndarray:
    result = np.arange(len(perm))
    for _ in range(k):
        result = perm[result]
    return result


def derived_solution(X: FiniteSolution) -> FiniteSolution:
    """r'(x,y) = (y, λ_y ρ_{λ_x⁻¹(y)}(x))."""
    n = X.size
    inv = X.lam_inverse()
    x, y = np.indices((n, n))
    rho = np.empty((n, n), dtype=np.int64)
    rho[y, x] = X.lam[y, X.rho[inv[x, y], x]]
    return validate_solution(np.tile(np.arange(n), (n, 1)), rho)


def brace_to_solution(B: FiniteSkewBrace) -> FiniteSolution:
    """r_B(a,b) = (λ_a(b), (λ_a(b))‾ ∘ a ∘ b)."""
    n = B.order
    M = B.mul.table
    a, b = np.indices((n, n))
    rho = np.empty((n, n), dtype=np.int64)
    rho[b, a] = M[M[B.mul.inv[B.lam[a, b]], a], b]
    return validate_solution(np.array(B.lam), rho)


# =============================================================================
# Retract
# =============================================================================

def retract(X: FiniteSolution) -> Tuple[FiniteSolution, np.ndarray]:
    """
    Quotient by x ∼ y iff λ_x = λ_y and ρ_x = ρ_y.

    Returns:
        (retract solution, projection array with projection[x] = class of x)

    Raises:
        IllDefined: the induced tables disagree between representatives
    """
    classes: Dict[bytes, int] = {}
    proj = np.empty(X.size, dtype=np.int64)
    reps: List[int] = []
    for x in range(X.size):
        key = X.lam[x].tobytes() + X.rho[x].tobytes()
        if key not in classes:
            classes[key] = len(reps)
            reps.append(x)
        proj[x] = classes[key]

    block = np.ix_(reps, reps)
    lam = proj[X.lam[block]]
    rho = proj[X.rho[block]]
    for name, table, induced in (('lambda', X.lam, lam), ('rho', X.rho, rho)):
        bad = np.argwhere(proj[table] != induced[proj[:, None], proj[None, :]])
        if bad.size:
            raise IllDefined(name, tuple(int(v) for v in bad[0]))
    return validate_solution(lam, rho), proj


def retract_tower(X: FiniteSolution, max_steps: Optional[int] = None) -> List[int]:
    """Sizes of the iterated retracts until the size stops changing."""
    sizes = [X.size]
    current = X
    steps = 0
    while max_steps is None or steps < max_steps:
        nxt, _ = retract(current)
        steps += 1
        if nxt.size == current.size:
            break
        sizes.append(nxt.size)
        current = nxt
    return sizes


class UnionFind:
    """Disjoint sets over 0..n-1 with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)

    def labels(self) -> List[int]:
        """Class labels numbered by least member."""
        roots: Dict[int, int] = {}
        out = []
        for i in range(len(self.parent)):
            out.append(roots.setdefault(self.find(i), len(roots)))
        return out


def retract_tower_by_merging(X: FiniteSolution, max_steps: Optional[int] = None) -> List[int]:
    """Retract tower computed by pairwise row comparison and union-find merging."""
    sizes = [X.size]
    lam, rho = np.array(X.lam), np.array(X.rho)
    steps = 0
    while max_steps is None or steps < max_steps:
        n = lam.shape[0]
        uf = UnionFind(n)
        for x in range(n):
            for y in range(x + 1, n):
                if np.array_equal(lam[x], lam[y]) and np.array_equal(rho[x], rho[y]):
                    uf.union(x, y)
        labels = np.array(uf.labels())
        m = int(labels.max()) + 1
        steps += 1
        if m == n:
            break
        new_lam = np.empty((m, m), dtype=np.int64)
        new_rho = np.empty((m, m), dtype=np.int64)
        for x in range(n):
            for y in range(n):
                new_lam[labels[x], labels[y]] = labels[lam[x, y]]
                new_rho[labels[x], labels[y]] = labels[rho[x, y]]
        lam, rho = new_lam, new_rho
        sizes.append(m)
    return sizes


# =============================================================================
# Decomposition factors
# =============================================================================

def is_decomposition_factor(X: FiniteSolution, Y: ElementSet) -> bool:
    """Y and its complement are both closed under r."""
    for part in (Y, Y.complement()):
        if not len(part):
            continue
        idx = part.as_array()
        mask = part.as_mask()
        block = np.ix_(idx, idx)
        if not (np.all(mask[X.lam[block]]) and np.all(mask[X.rho[block]])):
            return False
        for table in (X.lam, X.rho):
            restricted = table[block]
            ensure(
                all(len(np.unique(row)) == len(idx) for row in restricted),
                'is_decomposition_factor',
                'a restricted map on a closed part is not bijective',
            )
    return True


def generated_orbit(X: FiniteSolution, x: int) -> ElementSet:
    """Orbit of x under the group generated by every λ_y and ρ_y."""
    seen = np.zeros(X.size, dtype=bool)
    seen[x] = True
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for w in np.concatenate([X.lam[:, v], X.rho[:, v]]):
            w = int(w)
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return ElementSet.from_mask(seen)


@dataclass(frozen=True)
class MinimalFactor:
    """The atom containing an element; `exact` is False when only the orbit bound is known."""

    members: ElementSet
    exact: bool

    def to_dict(self) -> Dict[str, Any]:
        return {'members': self.members.to_list(), 'exact': self.exact}


class _BipartitionSearch:
    """
    Two-colourings of an orbit O whose colour classes are both r-closed.

    Elements outside O act on O by permutations; a factor inside O is a union of
    their orbits, so those orbits are merged up front. Within O the rule is
    unit propagation: if a and b share a side then λ_a(b) and ρ_b(a) are forced
    onto it.
    """

    def __init__(self, X: FiniteSolution, orbit: ElementSet):
        members = orbit.as_array()
        local = {int(v): i for i, v in enumerate(members)}
        m = len(members)
        self.size = m
        block = np.ix_(members, members)
        to_local = np.vectorize(local.__getitem__, otypes=[np.int64])
        self.lam = to_local(X.lam[block])
        # ρ_b(a) stored at [a, b] so both tables read as "a, b on one side ⇒ image on it"
        self.rho = to_local(X.rho[block]).T

        uf = UnionFind(m)
        outside = [z for z in range(X.size) if z not in orbit]
        for z in outside:
            for i, v in enumerate(members):
                uf.union(i, local[int(X.lam[z, v])])
                uf.union(i, local[int(X.rho[z, v])])
        self.cls = np.array(uf.labels())
        self.classes = int(self.cls.max()) + 1

    def propagate(self, side: np.ndarray) -> Optional[np.ndarray]:
        side = side.copy()
        changed = True
        while changed:
            changed = False
            per = side[self.cls]
            for a in range(self.size):
                if per[a] < 0:
                    continue
                same = np.flatnonzero(per == per[a])
                for target in np.concatenate([self.lam[a, same], self.rho[a, same]]):
                    c = self.cls[target]
                    if side[c] < 0:
                        side[c] = per[a]
                        per = side[self.cls]
                        changed = True
                    elif side[c] != per[a]:
                        return None
        return side

    def solve(self, side: np.ndarray) -> Optional[np.ndarray]:
        side = self.propagate(side)
        if side is None:
            return None
        free = np.flatnonzero(side < 0)
        if not free.size:
            return side
        for colour in (0, 1):
            trial = side.copy()
            trial[free[0]] = colour
            found = self.solve(trial)
            if found is not None:
                return found
        return None

    def separating(self, x_local: int, y_local: int) -> Optional[np.ndarray]:
        """A full colouring with x on side 0 and y on side 1, or None."""
        cx, cy = self.cls[x_local], self.cls[y_local]
        if cx == cy:
            return None
        side = np.full(self.classes, -1, dtype=np.int64)
        side[cx], side[cy] = 0, 1
        found = self.solve(side)
        return None if found is None else found[self.cls]


def minimal_factor(X: FiniteSolution, x: int, search_limit: Optional[int] = None) -> MinimalFactor:
    """
    The smallest decomposition factor containing x.

    The orbit of x under ⟨λ_y, ρ_y⟩ is a factor and bounds the atom from above.
    Inside it, y belongs to the atom iff no valid bipartition separates it from
    x. Orbits larger than `search_limit` (default SKEWLAB_FACTOR_SEARCH_LIMIT)
    are returned as the bound with exact=False.
    """
    limit = search_limit or config.factor_search_limit()
    orbit = generated_orbit(X, x)
    if len(orbit) == 1:
        return MinimalFactor(orbit, True)
    if len(orbit) > limit:
        logger.warning(f"Orbit of {x} has {len(orbit)} points; reporting it as an upper bound")
        return MinimalFactor(orbit, False)

    members = orbit.as_array()
    search = _BipartitionSearch(X, orbit)
    x_local = int(np.flatnonzero(members == x)[0])
    separable = np.zeros(len(members), dtype=bool)
    for y_local in range(len(members)):
        if y_local == x_local or separable[y_local]:
            continue
        colouring = search.separating(x_local, y_local)
        if colouring is not None:
            separable |= colouring == 1
    atom = ElementSet.from_iterable(X.size, members[~separable])
    return MinimalFactor(atom, True)


def decomposition_atoms(X: FiniteSolution, search_limit: Optional[int] = None) -> Partition:
    """
    Partition of X into minimal decomposition factors.

    Raises:
        PartialResult: some orbit exceeded the exact search limit; the attached
            partition uses orbits for those blocks
    """
    ids = [-1] * X.size
    flagged = []
    block = 0
    for x in range(X.size):
        if ids[x] >= 0:
            continue
        factor = minimal_factor(X, x, search_limit)
        if not factor.exact:
            flagged.append(x)
        for y in factor.members:
            if ids[y] < 0:
                ids[y] = block
        block += 1
    partition = Partition(tuple(ids))
    if flagged:
        raise PartialResult(partition, tuple(flagged))
    return partition


def delta_f(X: FiniteSolution) -> ElementSet:
    """Elements lying in a finite decomposition factor: the whole carrier of a finite solution."""
    covered = ElementSet.empty(X.size)
    for x in range(X.size):
        if x not in covered:
            covered = covered | generated_orbit(X, x)
    ensure(is_decomposition_factor(X, covered), 'delta_f', 'Δ_f is not a decomposition factor')
    return covered


def brute_force_factors(X: FiniteSolution) -> List[ElementSet]:
    """
    Every decomposition factor, by subset enumeration.

    Raises:
        TooLarge: size above SKEWLAB_BRUTE_FORCE_LIMIT
    """
    limit = config.brute_force_limit()
    if X.size > limit:
        raise TooLarge('solution for brute-force factor enumeration', X.size, limit)
    return [
        Y for Y in (ElementSet(X.size, bits) for bits in range(1 << X.size))
        if is_decomposition_factor(X, Y)
    ]


def atoms_from_factors(n: int, factors: List[ElementSet]) -> Partition:
    """Atoms of a Boolean algebra of factors: for each x, meet of the factors containing x."""
    blocks: Dict[int, ElementSet] = {}
    for x in range(n):
        meet = ElementSet.full(n)
        for Y in factors:
            if x in Y:
                meet = meet & Y
        blocks[meet.bits] = meet
    return Partition.from_blocks(n, list(blocks.values()))


# =============================================================================
# Exhaustive enumeration
# =============================================================================

def _partial_conflict(L: np.ndarray, R: np.ndarray) -> bool:
    """Braid or bijectivity violation among entries already assigned (-1 = unknown)."""
    n = L.shape[0]

    def r(u, v):
        ok = (u >= 0) & (v >= 0)
        uu, vv = np.where(ok, u, 0), np.where(ok, v, 0)
        return np.where(ok, L[uu, vv], -1), np.where(ok, R[vv, uu], -1)

    x, y, z = np.indices((n, n, n))
    a, b = r(x, y)
    b, c = r(b, z)
    a, b = r(a, b)
    e, f = r(y, z)
    d, e = r(x, e)
    e, f = r(e, f)
    for p, q in ((a, d), (b, e), (c, f)):
        if np.any((p >= 0) & (q >= 0) & (p != q)):
            return True

    u, v = np.indices((n, n))
    first, second = L[u, v], R[v, u]
    known = (first >= 0) & (second >= 0)
    codes = (first * n + second)[known]
    return len(np.unique(codes)) != len(codes)


def enumerate_solutions(n: int) -> List[FiniteSolution]:
    """
    Every non-degenerate solution on n points, by row-wise backtracking.

    Rows are assigned in the order λ_0, ρ_0, λ_1, ρ_1, ...; any braid or
    bijectivity violation visible among assigned rows prunes the branch.

    Raises:
        TooLarge: n above SKEWLAB_SOLUTION_ENUM_LIMIT
    """
    limit = config.solution_enum_limit()
    if n > limit:
        raise TooLarge('solution enumeration size', n, limit)

    perms = [np.array(p, dtype=np.int64) for p in permutations(range(n))]
    L = np.full((n, n), -1, dtype=np.int64)
    R = np.full((n, n), -1, dtype=np.int64)
    found: List[FiniteSolution] = []

    def search(step: int):
        if step == 2 * n:
            found.append(validate_solution(L.copy(), R.copy()))
            return
        table = L if step % 2 == 0 else R
        row = step // 2
        for p in perms:
            table[row] = p
            if not _partial_conflict(L, R):
                search(step + 1)
        table[row] = -1

    search(0)
    logger.info(f"Enumerated {len(found)} solutions of size {n}")
    return found
