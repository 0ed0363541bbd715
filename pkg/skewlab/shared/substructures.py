"""
Sub skew braces, ideals, index theory and orbit-size bounds.

Purpose: every constructive procedure on the substructure lattice
- closures: additive, multiplicative, sub skew brace, strong left ideal
- predicates: sub skew brace ⊃ left ideal ⊃ strong left ideal ⊃ ideal
- index by explicit coset partition in both groups
- strong left ideal (and, for two-sided braces, ideal) inside a sub skew brace
- Dietzmann closure of a set of θ-finite elements
- bound checks on |B:ker λ|, |B:Soc|, θ-orbit sizes, exponents and λ orders
- stabilizer quotients and the coset generators of B²
"""

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Union

import numpy as np

from skewlab.shared import config
from skewlab.shared.brace import (
    FiniteSkewBrace,
    center_add,
    fix,
    is_two_sided,
    ker_lambda,
    lambda_orbit,
    soc,
    star_span,
    star_table,
    theta_orbit,
)
from skewlab.shared.elementset import ElementSet
from skewlab.shared.errors import (
    InvalidSubbrace,
    NotAddSubgroup,
    NotAdditivelyGenerating,
    NotGenerating,
    NotTwoSided,
    TooLarge,
    ensure,
)
from skewlab.shared.groups import (
    FiniteGroup,
    automorphism_count,
    center,
    conjugacy_classes,
    generated_subgroup,
    is_normal,
    is_subgroup,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubBraceHandle:
    """A sub skew brace of `parent`, identified by its member set."""

    parent: FiniteSkewBrace
    members: ElementSet

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(self.members)


SetLike = Union[ElementSet, SubBraceHandle]


def _members(S: SetLike) -> ElementSet:
    return S.members if isinstance(S, SubBraceHandle) else S


@dataclass
class BoundReport:
    """Outcome of a quantitative check: value ≤ bound (or divisibility)."""

    name: str
    value: int
    bound: int
    holds: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'value': self.value,
            'bound': self.bound,
            'holds': self.holds,
            'details': self.details,
        }


# =============================================================================
# Closures
# =============================================================================

def add_closure(B: FiniteSkewBrace, S: SetLike) -> ElementSet:
    return generated_subgroup(B.add, _members(S))


def mul_closure(B: FiniteSkewBrace, S: SetLike) -> ElementSet:
    return generated_subgroup(B.mul, _members(S))


def subbrace_closure(B: FiniteSkewBrace, S: SetLike) -> SubBraceHandle:
    """Least sub skew brace containing S: alternate both closures to a fixpoint."""
    current = add_closure(B, S)
    while True:
        closed = add_closure(B, mul_closure(B, current))
        if closed == current:
            return SubBraceHandle(B, current)
        current = closed


def strong_left_ideal_closure(B: FiniteSkewBrace, S: SetLike) -> ElementSet:
    """
    Least strong left ideal containing S.

    Grows an additive subgroup until it is stable under every λ_b and every
    additive conjugation.
    """
    A, neg = B.add.table, B.add.inv
    everyone = np.arange(B.order)
    current = add_closure(B, S)
    while True:
        idx = current.as_array()
        images = set(np.unique(B.lam[:, idx]).tolist())
        images.update(np.unique(A[A[everyone[:, None], idx[None, :]], neg[:, None]]).tolist())
        grown = add_closure(B, current | ElementSet.from_iterable(B.order, images))
        if grown == current:
            return current
        current = grown


def dietzmann_closure(B: FiniteSkewBrace, X: SetLike) -> ElementSet:
    """Additive closure of the θ-orbits of X."""
    X = _members(X)
    seeds = ElementSet.from_iterable(B.order, [B.zero])
    for x in X:
        seeds = seeds | theta_orbit(B, x)
    return add_closure(B, seeds)


# =============================================================================
# Predicates
# =============================================================================

def is_subbrace(B: FiniteSkewBrace, S: SetLike) -> bool:
    S = _members(S)
    return is_subgroup(B.add, S) and is_subgroup(B.mul, S)


def is_left_ideal(B: FiniteSkewBrace, S: SetLike) -> bool:
    S = _members(S)
    if not is_subgroup(B.add, S):
        return False
    return bool(np.all(S.as_mask()[B.lam[:, S.as_array()]]))


def is_strong_left_ideal(B: FiniteSkewBrace, S: SetLike) -> bool:
    S = _members(S)
    return is_left_ideal(B, S) and is_normal(B.add, S)


def is_ideal(B: FiniteSkewBrace, S: SetLike) -> bool:
    S = _members(S)
    return is_strong_left_ideal(B, S) and is_normal(B.mul, S)


def left_ideal_cosets_agree(B: FiniteSkewBrace, L: SetLike) -> bool:
    """a∘L = a+L for every a."""
    idx = _members(L).as_array()
    for a in range(B.order):
        if set(B.mul.table[a, idx].tolist()) != set(B.add.table[a, idx].tolist()):
            return False
    return True


def _orbit_cap(B: FiniteSkewBrace, cap: Optional[int]) -> int:
    if cap is None:
        return B.order
    if cap < 1:
        raise ValueError(f"orbit cap must be positive, got {cap}")
    return cap


def lambda_f_set(B: FiniteSkewBrace, cap: Optional[int] = None) -> ElementSet:
    """
    Elements whose λ-orbit has at most `cap` points (default: the order).

    cap=1 gives Fix(B); the default gives the whole carrier.
    """
    cap = _orbit_cap(B, cap)
    return ElementSet.from_iterable(B.order, [x for x in range(B.order) if len(lambda_orbit(B, x)) <= cap])


def theta_f_set(B: FiniteSkewBrace, cap: Optional[int] = None) -> ElementSet:
    cap = _orbit_cap(B, cap)
    return ElementSet.from_iterable(B.order, [x for x in range(B.order) if len(theta_orbit(B, x)) <= cap])


# =============================================================================
# Cosets and index
# =============================================================================

def coset_partition(table: np.ndarray, S: SetLike, side: str = 'left') -> List[ElementSet]:
    """Cosets x·S (side='left') or S·x (side='right'), in order of least element."""
    idx = _members(S).as_array()
    n = table.shape[0]
    covered = np.zeros(n, dtype=bool)
    cosets = []
    for x in range(n):
        if covered[x]:
            continue
        coset = table[x, idx] if side == 'left' else table[idx, x]
        covered[coset] = True
        cosets.append(ElementSet.from_iterable(n, coset))
    return cosets


def transversal(
    table: np.ndarray,
    S: SetLike,
    side: str = 'left',
    rng: Optional[np.random.Generator] = None,
) -> List[int]:
    """Coset representatives: least index per coset, or a random member when rng is given."""
    cosets = coset_partition(table, S, side)
    if rng is None:
        return [next(iter(c)) for c in cosets]
    return [int(rng.choice(c.as_array())) for c in cosets]


def index_add(B: FiniteSkewBrace, A: SetLike) -> int:
    return len(coset_partition(B.add.table, A))


def index_mul(B: FiniteSkewBrace, A: SetLike) -> int:
    return len(coset_partition(B.mul.table, A))


# =============================================================================
# Ideals inside sub skew braces
# =============================================================================

def sli_in_subbrace(B: FiniteSkewBrace, A: SetLike, rng: Optional[np.random.Generator] = None) -> ElementSet:
    """
    A strong left ideal of B contained in the sub skew brace A.

    Stage one intersects λ_t(A) over a transversal T of A in (B,∘); stage two
    intersects the additive conjugates s + L₁ - s over a transversal of L₁ in
    (B,+).

    Args:
        B: brace
        A: sub skew brace
        rng: draw random coset representatives instead of least ones

    Raises:
        InvalidSubbrace: A is not a sub skew brace
    """
    S = _members(A)
    if not is_subbrace(B, S):
        raise InvalidSubbrace(S.to_list())
    idx = S.as_array()

    first = ElementSet.full(B.order)
    for t in transversal(B.mul.table, S, 'left', rng):
        first = first & ElementSet.from_iterable(B.order, B.lam[t, idx])

    A_tab, neg = B.add.table, B.add.inv
    first_idx = first.as_array()
    result = first
    for s in transversal(A_tab, first, 'left', rng):
        result = result & ElementSet.from_iterable(B.order, A_tab[A_tab[s, first_idx], neg[s]])

    ensure(result <= S, 'sli_in_subbrace', f"{result} is not contained in {S}")
    ensure(is_strong_left_ideal(B, result), 'sli_in_subbrace', f"{result} is not a strong left ideal")
    logger.debug(f"Strong left ideal of order {len(result)} inside subbrace of order {len(S)}")
    return result


def ideal_in_subbrace_two_sided(
    B: FiniteSkewBrace, A: SetLike, rng: Optional[np.random.Generator] = None
) -> ElementSet:
    """
    An ideal of a two-sided brace contained in the sub skew brace A.

    Intersects the multiplicative conjugates t̄∘L∘t of L = sli_in_subbrace(B, A)
    over a transversal of the right cosets L∘t.

    Raises:
        NotTwoSided, InvalidSubbrace
    """
    if not is_two_sided(B):
        raise NotTwoSided()
    S = _members(A)
    L = sli_in_subbrace(B, S, rng)
    M = B.mul.table
    idx = L.as_array()
    result = L
    for t in transversal(M, L, 'right', rng):
        result = result & ElementSet.from_iterable(B.order, M[M[B.bar(t), idx], t])
    ensure(result <= S, 'ideal_in_subbrace_two_sided', f"{result} is not contained in {S}")
    ensure(is_ideal(B, result), 'ideal_in_subbrace_two_sided', f"{result} is not an ideal")
    return result


# =============================================================================
# Generators
# =============================================================================

def gens_to_group_gens(B: FiniteSkewBrace, T: SetLike) -> ElementSet:
    """
    From brace generators T to U = T' ∪ -T', with T' the union of the λ-images of T.

    U generates both (B,+) and (B,∘).

    Raises:
        NotGenerating: T does not generate B as a skew brace
    """
    T = _members(T)
    if not subbrace_closure(B, T).members.is_full():
        raise NotGenerating(T.to_list())
    images = np.unique(B.lam[:, T.as_array()])
    U = ElementSet.from_iterable(B.order, np.concatenate([images, B.add.inv[images]]))
    ensure(add_closure(B, U).is_full(), 'gens_to_group_gens', 'U does not generate (B,+)')
    ensure(mul_closure(B, U).is_full(), 'gens_to_group_gens', 'U does not generate (B,∘)')
    return U


def _require_additive_generators(B: FiniteSkewBrace, generators: ElementSet) -> None:
    if not add_closure(B, generators).is_full():
        raise NotAdditivelyGenerating(generators.to_list())


# =============================================================================
# Bounds
# =============================================================================

def verify_lamf_bound(B: FiniteSkewBrace, generators: SetLike) -> BoundReport:
    """|B:ker λ| ≤ ∏|[x_i]_λ| ≤ k^t over additive generators x_1..x_t."""
    gens = _members(generators)
    _require_additive_generators(B, gens)
    sizes = [len(lambda_orbit(B, x)) for x in gens]
    t = len(sizes)
    k = max(sizes, default=1)

    kernel = ker_lambda(B)
    stabilized = ElementSet.full(B.order)
    for x in gens:
        stabilized = stabilized & ElementSet.from_mask(B.lam[:, x] == x)
    ensure(kernel == stabilized, 'verify_lamf_bound', 'ker λ differs from the joint stabilizer of the generators')

    index = index_mul(B, kernel)
    product = math.prod(sizes)
    return BoundReport(
        name='lamf',
        value=index,
        bound=product,
        holds=index <= product <= k ** t,
        details={'orbit_sizes': sizes, 'k': k, 't': t, 'k_power': k ** t},
    )


def verify_thetafg_bound(B: FiniteSkewBrace, generators: SetLike) -> BoundReport:
    """|B:Soc(B)| ≤ ∏|[x_i]_θ| ≤ k^t over additive generators."""
    gens = _members(generators)
    _require_additive_generators(B, gens)
    sizes = [len(theta_orbit(B, x)) for x in gens]
    t = len(sizes)
    k = max(sizes, default=1)
    index = index_add(B, soc(B))
    product = math.prod(sizes)
    return BoundReport(
        name='thetafg',
        value=index,
        bound=product,
        holds=index <= product <= k ** t,
        details={'orbit_sizes': sizes, 'k': k, 't': t, 'k_power': k ** t},
    )


def verify_oversoc_bound(B: FiniteSkewBrace) -> BoundReport:
    """Every θ-orbit has at most m·n' points, m = |B:Z(B,+)| and n' = |B:ker λ|."""
    n_prime = index_mul(B, ker_lambda(B))
    m = index_add(B, center_add(B))
    largest = max(len(theta_orbit(B, c)) for c in range(B.order))
    return BoundReport(
        name='oversoc',
        value=largest,
        bound=m * n_prime,
        holds=largest <= m * n_prime,
        details={'m': m, 'n_prime': n_prime},
    )


def _exponent_mod_subgroup(group: FiniteGroup, Z: ElementSet) -> int:
    exponent = 1
    for g in range(group.order):
        k, x = 1, g
        while x not in Z:
            x = group.op(x, g)
            k += 1
        exponent = math.lcm(exponent, k)
    return exponent


def verify_bfc_exponent(group: FiniteGroup) -> BoundReport:
    """The exponent of G/Z(G) divides k! where k bounds the conjugacy class sizes."""
    k = max(len(c) for c in conjugacy_classes(group))
    exponent = _exponent_mod_subgroup(group, center(group))
    bound = math.factorial(k)
    return BoundReport(
        name='bfc',
        value=exponent,
        bound=bound,
        holds=bound % exponent == 0,
        details={'k': k},
    )


def permutation_order(perm: np.ndarray) -> int:
    seen = np.zeros(len(perm), dtype=bool)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = int(perm[x])
            length += 1
        order = math.lcm(order, length)
    return order


def verify_lambda_order_bound(B: FiniteSkewBrace) -> BoundReport:
    """Every λ_b has order dividing k!, k the largest θ-orbit size."""
    k = max(len(theta_orbit(B, c)) for c in range(B.order))
    orders = [permutation_order(B.lam[b]) for b in range(B.order)]
    bound = math.factorial(k)
    return BoundReport(
        name='lambda_order',
        value=max(orders),
        bound=bound,
        holds=all(bound % o == 0 for o in orders),
        details={'k': k},
    )


# =============================================================================
# Stabilizers of additive subgroups
# =============================================================================

def _require_add_subgroup(B: FiniteSkewBrace, H: ElementSet) -> None:
    if not is_subgroup(B.add, H):
        raise NotAddSubgroup(H.to_list())


def stab_lambda_set(B: FiniteSkewBrace, H: SetLike) -> ElementSet:
    """{b : λ_b(H) = H}."""
    H = _members(H)
    _require_add_subgroup(B, H)
    mask = H.as_mask()
    return ElementSet.from_mask(np.all(mask[B.lam[:, H.as_array()]], axis=1))


def pstab(B: FiniteSkewBrace, H: SetLike) -> ElementSet:
    """{b : λ_b fixes H pointwise}."""
    H = _members(H)
    _require_add_subgroup(B, H)
    idx = H.as_array()
    return ElementSet.from_mask(np.all(B.lam[:, idx] == idx[None, :], axis=1))


def quotient_embedding_check(B: FiniteSkewBrace, H: SetLike) -> BoundReport:
    """
    PStab(H) is normal in Stab_λ(H) and the quotient order divides |Aut(H,+)|.

    Raises:
        NotAddSubgroup, TooLarge (|H| above SKEWLAB_AUT_LIMIT)
    """
    H = _members(H)
    stab = stab_lambda_set(B, H)
    point = pstab(B, H)
    limit = config.aut_limit()
    if len(H) > limit:
        raise TooLarge('automorphism search subgroup', len(H), limit)

    M = B.mul.table
    normal = all(M[M[s, p], B.bar(s)] in point for s in stab for p in point)
    aut = automorphism_count(B.add, H)
    quotient = len(stab) // len(point)
    return BoundReport(
        name='quotient',
        value=quotient,
        bound=aut,
        holds=normal and aut % quotient == 0,
        details={'stab': stab.to_list(), 'pstab': point.to_list(), 'normal': normal},
    )


# =============================================================================
# B² from coset representatives
# =============================================================================

@dataclass
class B2Generation:
    """Star products x_i*y_j of coset representatives and the subgroup they span."""

    generators: ElementSet
    span: ElementSet
    star_span: ElementSet

    @property
    def holds(self) -> bool:
        return self.span == self.star_span

    def to_dict(self) -> Dict[str, Any]:
        return {
            'generators': self.generators.to_list(),
            'span': self.span.to_list(),
            'star_span': self.star_span.to_list(),
            'holds': self.holds,
        }


def b2_coset_generators(B: FiniteSkewBrace, rng: Optional[np.random.Generator] = None) -> B2Generation:
    """
    Span of x_i*y_j, x_i over ker λ cosets in (B,∘) and y_j over Fix(B) cosets in (B,+).
    """
    xs = transversal(B.mul.table, ker_lambda(B), 'left', rng)
    ys = transversal(B.add.table, fix(B), 'left', rng)
    stars = star_table(B)
    gens = ElementSet.from_iterable(B.order, {int(stars[x, y]) for x in xs for y in ys})
    return B2Generation(generators=gens, span=add_closure(B, gens), star_span=star_span(B))


# =============================================================================
# Lattice of sub skew braces
# =============================================================================

def enumerate_subbraces(B: FiniteSkewBrace) -> List[SubBraceHandle]:
    """All sub skew braces, by extending known ones with one element and closing."""
    bottom = subbrace_closure(B, ElementSet.empty(B.order))
    found: Dict[int, SubBraceHandle] = {bottom.members.bits: bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for sub in frontier:
            for x in range(B.order):
                if x in sub.members:
                    continue
                grown = subbrace_closure(B, sub.members | ElementSet.from_iterable(B.order, [x]))
                if grown.members.bits not in found:
                    found[grown.members.bits] = grown
                    nxt.append(grown)
        frontier = nxt
    subs = sorted(found.values(), key=lambda h: (len(h), h.members.bits))
    logger.debug(f"Found {len(subs)} sub skew braces in a brace of order {B.order}")
    return subs


def subsets_of_size_at_most(order: int, k: int) -> Iterable[ElementSet]:
    for size in range(k + 1):
        for combo in combinations(range(order), size):
            yield ElementSet.from_iterable(order, combo)
