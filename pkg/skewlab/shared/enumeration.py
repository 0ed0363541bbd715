"""
Exhaustive enumeration of small groups and skew braces.

Purpose: catalogs of isomorphism classes that feed every sweep
- enumerate_groups: regular-representation backtracking with identity at 0
- enumerate_braces_on_group: two independent searches that must agree
  (i) multiplication rows constrained by left distributivity
  (ii) λ maps into Aut(B,+) with λ_{a+λ_a(b)} = λ_a λ_b
- canonical_key / brace_isomorphic: complete invariant and direct isomorphism test
- build_catalog: every brace up to a given order, sorted by (order, key)
"""

import logging
from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from skewlab.shared import config
from skewlab.shared.brace import FiniteSkewBrace, fix, is_two_sided, ker_lambda, soc, theta_orbit, validate_brace
from skewlab.shared.constructions import trivial_brace
from skewlab.shared.errors import StrategyMismatch, TooLarge
from skewlab.shared.groups import (
    FiniteGroup,
    automorphisms,
    generated_subgroup,
    minimal_generators,
    validate_group,
)
from skewlab.shared.report import AnalysisReport, report

logger = logging.getLogger(__name__)

STRATEGIES = ('direct', 'lambda', 'both')

Rows = List[Optional[np.ndarray]]


def _check_order(what: str, n: int) -> None:
    limit = config.max_order()
    if n > limit:
        raise TooLarge(what, n, limit)


def _propagate(
    rows: Rows,
    pending: Sequence[int],
    product_of: Callable[[int, int], int],
    compose: Callable[[int, int], np.ndarray],
    accept: Callable[[int, np.ndarray], bool],
) -> bool:
    """
    Close a partial assignment under row(x ⋆ y) = compose(x, y).

    Pairs are visited semi-naively: each newly known index is combined with
    every known index in both orders. Returns False on a conflict.
    """
    known = [x for x, row in enumerate(rows) if row is not None]
    queue = deque(pending)
    while queue:
        u = queue.popleft()
        for v in list(known):
            for x, y in ((u, v), (v, u)):
                z = product_of(x, y)
                row = compose(x, y)
                if rows[z] is None:
                    if not accept(z, row):
                        return False
                    rows[z] = row
                    known.append(z)
                    queue.append(z)
                elif not np.array_equal(rows[z], row):
                    return False
    return True


def _columns_free(rows: Rows, row: np.ndarray) -> bool:
    return all(not np.any(other == row) for other in rows if other is not None)


# =============================================================================
# Groups
# =============================================================================

def _block_cycle(n: int, m: int) -> np.ndarray:
    perm = np.arange(n)
    for start in range(0, n, m):
        for k in range(m):
            perm[start + k] = start + (k + 1) % m
    return perm


def _uniform_cycles(perm: np.ndarray, max_length: int) -> bool:
    """All cycles of `perm` have one common length, at most `max_length`."""
    seen = np.zeros(len(perm), dtype=bool)
    lengths = set()
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.add(length)
    return len(lengths) == 1 and lengths.pop() <= max_length


def _row_candidates(rows: Rows, x: int, max_order: int) -> List[np.ndarray]:
    """Permutations p with p(0) = x, differing from every known row in every column."""
    n = len(rows)
    forbidden = [{int(r[j]) for r in rows if r is not None} for j in range(n)]
    found = []
    perm = [x] + [-1] * (n - 1)
    used = {x}

    def fill(j: int):
        if j == n:
            candidate = np.array(perm, dtype=np.int64)
            if _uniform_cycles(candidate, max_order):
                found.append(candidate)
            return
        for v in range(n):
            if v in used or v in forbidden[j]:
                continue
            perm[j] = v
            used.add(v)
            fill(j + 1)
            used.discard(v)

    if x in forbidden[0]:
        return []
    fill(1)
    return found


def _groups_with_max_order(n: int, m: int) -> List[FiniteGroup]:
    # element 1 has maximal order m and its left multiplication is a product of consecutive m-cycles
    rows: Rows = [None] * n
    rows[0] = np.arange(n)
    rows[1] = _block_cycle(n, m)
    found: List[FiniteGroup] = []

    def search(rows: Rows, pending: List[int]):
        product_of = lambda x, y: int(rows[x][y])  # noqa: E731
        compose = lambda x, y: rows[x][rows[y]]  # noqa: E731
        accept = lambda z, row: _columns_free(rows, row)  # noqa: E731
        if not _propagate(rows, pending, product_of, compose, accept):
            return
        unknown = [x for x, row in enumerate(rows) if row is None]
        if not unknown:
            group = validate_group(np.array(rows))
            if max(group.element_orders()) == m:
                found.append(group)
            return
        x = unknown[0]
        for candidate in _row_candidates(rows, x, m):
            branch = list(rows)
            branch[x] = candidate
            search(branch, [x])

    search(rows, [0, 1])
    return found


def enumerate_groups(n: int) -> List[FiniteGroup]:
    """
    One group per isomorphism class of order n.

    The search runs over left-regular representations: row x of the Cayley
    table is the permutation y ↦ x·y, and known rows force row(x·y) = row(x)∘row(y).

    Raises:
        TooLarge: n above SKEWLAB_MAX_ORDER
    """
    _check_order('group order', n)
    if n == 1:
        return [validate_group([[0]])]
    classes: List[FiniteGroup] = []
    for m in range(2, n + 1):
        if n % m:
            continue
        for group in _groups_with_max_order(n, m):
            if not any(group_isomorphic(group, rep) for rep in classes):
                classes.append(group)
    classes.sort(key=lambda G: canonical_key(trivial_brace(G)))
    logger.info(f"Found {len(classes)} groups of order {n}")
    return classes


def describe_group(G: FiniteGroup) -> str:
    """Conventional name of a group of order at most 8."""
    n = G.order
    orders = G.element_orders()
    if max(orders) == n:
        return f"Z{n}"
    if G.is_abelian():
        if n == 4:
            return 'Z2xZ2'
        if n == 8:
            return 'Z4xZ2' if max(orders) == 4 else 'Z2^3'
    if n == 6:
        return 'S3'
    if n == 8:
        return 'D4' if orders.count(2) == 5 else 'Q8'
    return f"G{n}"


# =============================================================================
# Isomorphism
# =============================================================================

def _extend_map(source: np.ndarray, target: np.ndarray, zero: int, target_zero: int,
                gens: Sequence[int], images: Sequence[int]) -> Optional[Dict[int, int]]:
    """Extend gens ↦ images along right multiplication; None when inconsistent or not injective."""
    phi = {zero: target_zero}
    used = {target_zero}
    queue = deque([zero])
    pairs = list(zip(gens, images))
    while queue:
        x = queue.popleft()
        for g, h in pairs:
            y = int(source[x, g])
            image = int(target[phi[x], h])
            if y in phi:
                if phi[y] != image:
                    return None
            elif image in used:
                return None
            else:
                phi[y] = image
                used.add(image)
                queue.append(y)
    return phi


def element_invariants(B: FiniteSkewBrace) -> List[Tuple[int, ...]]:
    """Per-element data preserved by isomorphisms."""
    kernel, fixed, socle = ker_lambda(B), fix(B), soc(B)
    add_orders = B.add.element_orders()
    mul_orders = B.mul.element_orders()
    return [
        (
            add_orders[x],
            mul_orders[x],
            int(np.unique(B.lam[:, x]).size),
            len(theta_orbit(B, x)),
            int(x in kernel),
            int(x in fixed),
            int(x in socle),
        )
        for x in range(B.order)
    ]


def _structure_isomorphism(
    tables1: Sequence[np.ndarray],
    tables2: Sequence[np.ndarray],
    zero1: int,
    zero2: int,
    labels1: Sequence[Tuple],
    labels2: Sequence[Tuple],
) -> Optional[np.ndarray]:
    """A bijection preserving every table, found from images of generators of the first table."""
    n = tables1[0].shape[0]
    group = FiniteGroup(table=tables1[0], identity=zero1, inv=np.argmax(tables1[0] == zero1, axis=1))
    gens = minimal_generators(group)

    def search(images: List[int]) -> Optional[np.ndarray]:
        phi = _extend_map(tables1[0], tables2[0], zero1, zero2, gens[:len(images)], images)
        if phi is None:
            return None
        if len(images) == len(gens):
            perm = np.empty(n, dtype=np.int64)
            for x, y in phi.items():
                perm[x] = y
            ok = all(np.array_equal(perm[t1], t2[perm[:, None], perm[None, :]]) for t1, t2 in zip(tables1, tables2))
            return perm if ok else None
        g = gens[len(images)]
        used = set(phi.values())
        for h in range(n):
            if h in used or labels2[h] != labels1[g]:
                continue
            found = search(images + [h])
            if found is not None:
                return found
        return None

    return search([])


def group_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    if G.order != H.order or sorted(G.element_orders()) != sorted(H.element_orders()):
        return False
    return _structure_isomorphism(
        [G.table], [H.table], G.identity, H.identity, G.element_orders(), H.element_orders()
    ) is not None


def brace_isomorphic(B1: FiniteSkewBrace, B2: FiniteSkewBrace) -> bool:
    """
    Whether some bijection maps both tables of B1 onto those of B2.

    Candidates are pruned by element invariants (orders in both groups, λ- and
    θ-orbit sizes, membership in ker λ, Fix and Soc) and by two-sidedness.
    """
    if B1.order != B2.order:
        return False
    inv1, inv2 = element_invariants(B1), element_invariants(B2)
    if sorted(inv1) != sorted(inv2) or is_two_sided(B1) != is_two_sided(B2):
        return False
    return _structure_isomorphism(
        [B1.add.table, B1.mul.table], [B2.add.table, B2.mul.table], B1.zero, B2.zero, inv1, inv2
    ) is not None


def _bfs_labeling(table: np.ndarray, zero: int, gens: Sequence[int]) -> List[int]:
    order = [zero]
    seen = {zero}
    i = 0
    while i < len(order):
        x = order[i]
        for g in gens:
            y = int(table[x, g])
            if y not in seen:
                seen.add(y)
                order.append(y)
        i += 1
    return order


def _relabel(table: np.ndarray, order: Sequence[int]) -> np.ndarray:
    new = np.empty(len(order), dtype=np.int64)
    new[list(order)] = np.arange(len(order))
    return new[table[np.ix_(order, order)]]


def canonical_form(B: FiniteSkewBrace) -> Tuple[bytes, FiniteSkewBrace]:
    """
    Canonical key and the relabeled brace that realizes it.

    The key is the least byte string bytes([n]) + add + mul over the
    breadth-first relabelings from every additive generating tuple of minimum
    size whose element-invariant signature is least.
    """
    n = B.order
    if n == 1:
        return bytes([1, 0, 0]), B
    inv = element_invariants(B)
    nonzero = [x for x in range(n) if x != B.zero]
    tuples: List[Tuple[int, ...]] = []
    k = 0
    while not tuples:
        k += 1
        tuples = [t for t in permutations(nonzero, k) if generated_subgroup(B.add, t).is_full()]
    best_signature = min(tuple(inv[g] for g in t) for t in tuples)
    best: Optional[Tuple[bytes, List[int]]] = None
    for t in tuples:
        if tuple(inv[g] for g in t) != best_signature:
            continue
        order = _bfs_labeling(B.add.table, B.zero, t)
        add = _relabel(B.add.table, order).astype(np.uint8)
        mul = _relabel(B.mul.table, order).astype(np.uint8)
        key = bytes([n]) + add.tobytes() + mul.tobytes()
        if best is None or key < best[0]:
            best = (key, order)
    key, order = best
    return key, validate_brace(_relabel(B.add.table, order), _relabel(B.mul.table, order))


def canonical_key(B: FiniteSkewBrace) -> bytes:
    return canonical_form(B)[0]


# =============================================================================
# Braces on a fixed additive group
# =============================================================================

def _distributive_rows(add: FiniteGroup, a: int) -> Dict[bytes, np.ndarray]:
    """Bijective rows b ↦ a∘b with a∘(b+g) = a∘b − a + a∘g, keyed by their bytes."""
    A, neg = add.table, add.inv
    n = add.order
    gens = minimal_generators(add)
    rows: Dict[bytes, np.ndarray] = {}
    for images in product(range(n), repeat=len(gens)):
        row = np.full(n, -1, dtype=np.int64)
        row[add.identity] = a
        queue = deque([add.identity])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for g, v in zip(gens, images):
                y = int(A[x, g])
                value = int(A[A[row[x], neg[a]], v])
                if row[y] < 0:
                    row[y] = value
                    queue.append(y)
                elif row[y] != value:
                    ok = False
                    break
        if ok and len(np.unique(row)) == n and row.min() >= 0:
            rows[row.tobytes()] = row
    return rows


def _braces_direct(add: FiniteGroup) -> List[FiniteSkewBrace]:
    n = add.order
    zero = add.identity
    candidates = {a: _distributive_rows(add, a) for a in range(n) if a != zero}
    found: List[FiniteSkewBrace] = []

    def search(rows: Rows, pending: List[int]):
        accept = lambda z, row: row.tobytes() in candidates.get(z, {}) and _columns_free(rows, row)  # noqa: E731
        if not _propagate(rows, pending, lambda x, y: int(rows[x][y]), lambda x, y: rows[x][rows[y]], accept):
            return
        unknown = [x for x, row in enumerate(rows) if row is None]
        if not unknown:
            found.append(validate_brace(add, np.array(rows)))
            return
        a = unknown[0]
        for row in candidates[a].values():
            if not _columns_free(rows, row):
                continue
            branch = list(rows)
            branch[a] = row
            search(branch, [a])

    rows: Rows = [None] * n
    rows[zero] = np.arange(n)
    search(rows, [zero])
    return found


def _braces_lambda(add: FiniteGroup) -> List[FiniteSkewBrace]:
    n = add.order
    A = add.table
    zero = add.identity
    auts = automorphisms(add)
    found: List[FiniteSkewBrace] = []

    def latin(lam: Rows, a: int, phi: np.ndarray) -> bool:
        # the multiplication row b ↦ a + λ_a(b) must differ from every known one in every column
        known = [A[x, row] for x, row in enumerate(lam) if row is not None]
        return _columns_free(known, A[a, phi])

    def search(lam: Rows, pending: List[int]):
        product_of = lambda a, b: int(A[a, lam[a][b]])  # noqa: E731
        compose = lambda a, b: lam[a][lam[b]]  # noqa: E731
        if not _propagate(lam, pending, product_of, compose, lambda z, row: latin(lam, z, row)):
            return
        unknown = [x for x, row in enumerate(lam) if row is None]
        if not unknown:
            table = np.array(lam)
            mul = A[np.arange(n)[:, None], table]
            found.append(validate_brace(add, mul))
            return
        a = unknown[0]
        for phi in auts:
            if not latin(lam, a, phi):
                continue
            branch = list(lam)
            branch[a] = phi
            search(branch, [a])

    lam: Rows = [None] * n
    lam[zero] = np.arange(n)
    search(lam, [zero])
    return found


def _classes(braces: List[FiniteSkewBrace]) -> Dict[bytes, FiniteSkewBrace]:
    classes: Dict[bytes, FiniteSkewBrace] = {}
    for B in braces:
        key, canon = canonical_form(B)
        classes.setdefault(key, canon)
    return classes


def enumerate_braces_on_group(add: FiniteGroup, strategy: str = 'both') -> List[FiniteSkewBrace]:
    """
    Every skew brace with additive group `add`, one per isomorphism class.

    Args:
        add: additive group
        strategy: 'direct', 'lambda', or 'both' (run both and compare)

    Returns:
        canonical representatives sorted by canonical key

    Raises:
        TooLarge: order above SKEWLAB_MAX_ORDER
        StrategyMismatch: the two searches found different classes
    """
    _check_order('brace order', add.order)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    direct = _classes(_braces_direct(add)) if strategy in ('direct', 'both') else None
    via_lambda = _classes(_braces_lambda(add)) if strategy in ('lambda', 'both') else None
    if direct is not None and via_lambda is not None and set(direct) != set(via_lambda):
        raise StrategyMismatch(len(direct), len(via_lambda))
    classes = direct if direct is not None else via_lambda
    logger.debug(f"Found {len(classes)} brace classes on a group of order {add.order}")
    return [classes[key] for key in sorted(classes)]


# =============================================================================
# Catalog
# =============================================================================

@dataclass
class BraceCatalogEntry:
    order: int
    brace: FiniteSkewBrace
    canonical_key: bytes
    add_group: str
    report: AnalysisReport

    def to_dict(self) -> Dict:
        return {
            'order': self.order,
            'key': self.canonical_key.hex(),
            'add_group': self.add_group,
            'report': self.report.to_dict(),
        }


def build_catalog(max_order: int, strategy: str = 'both') -> List[BraceCatalogEntry]:
    """
    All skew braces of order 1..max_order up to isomorphism, with reports.

    Raises:
        TooLarge: max_order above SKEWLAB_MAX_ORDER
    """
    _check_order('catalog order', max_order)
    entries: List[BraceCatalogEntry] = []
    for n in range(1, max_order + 1):
        for group in enumerate_groups(n):
            name = describe_group(group)
            for B in enumerate_braces_on_group(group, strategy):
                entries.append(BraceCatalogEntry(n, B, canonical_key(B), name, report(B)))
    entries.sort(key=lambda e: (e.order, e.canonical_key))
    logger.info(f"Built catalog of {len(entries)} braces up to order {max_order}")
    return entries
