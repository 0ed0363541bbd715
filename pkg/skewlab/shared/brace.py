"""
Finite skew braces.

Purpose: validated table representation and every pointwise/global invariant
- validate_brace checks skew left distributivity on all triples and caches λ
- λ, θ and the star operation, with orbits and stabilizers
- ker λ, Fix, the two centers, Soc, Ann, B², B²_op and the commutator ideal
- the opposite brace, two-sidedness and triviality predicates
"""

import logging
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from skewlab.shared.elementset import ElementSet
from skewlab.shared.errors import (
    DistributivityFailure,
    IdentityMismatch,
    LambdaInvariantFailure,
    TableShapeError,
)
from skewlab.shared.groups import FiniteGroup, center, generated_subgroup, validate_group

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteSkewBrace:
    """
    A skew brace on the carrier 0..n-1.

    `add` and `mul` share the carrier and the neutral element; lam[a][b] is
    λ_a(b) = -a + a∘b and is computed once at validation.
    """

    add: FiniteGroup
    mul: FiniteGroup
    lam: np.ndarray

    @property
    def order(self) -> int:
        return self.add.order

    @property
    def zero(self) -> int:
        return self.add.identity

    def plus(self, a: int, b: int) -> int:
        return int(self.add.table[a, b])

    def neg(self, a: int) -> int:
        return int(self.add.inv[a])

    def minus(self, a: int, b: int) -> int:
        """a - b."""
        return int(self.add.table[a, self.add.inv[b]])

    def times(self, a: int, b: int) -> int:
        return int(self.mul.table[a, b])

    def bar(self, a: int) -> int:
        return int(self.mul.inv[a])

    def carrier(self) -> ElementSet:
        return ElementSet.full(self.order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteSkewBrace)
            and np.array_equal(self.add.table, other.add.table)
            and np.array_equal(self.mul.table, other.mul.table)
        )

    def __hash__(self) -> int:
        return hash((self.add.table.tobytes(), self.mul.table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteSkewBrace(order={self.order})"


GroupLike = Union[FiniteGroup, np.ndarray, list]


def _group(table: GroupLike) -> FiniteGroup:
    return table if isinstance(table, FiniteGroup) else validate_group(table)


def validate_brace(add_table: GroupLike, mul_table: GroupLike) -> FiniteSkewBrace:
    """
    Validate a pair of Cayley tables as a skew brace.

    Args:
        add_table: table (or validated group) of (B,+)
        mul_table: table (or validated group) of (B,∘) on the same carrier

    Returns:
        FiniteSkewBrace with the λ table cached

    Raises:
        IdentityMismatch, DistributivityFailure, and the group errors of
        validate_group for either table
    """
    add = _group(add_table)
    mul = _group(mul_table)
    if add.order != mul.order:
        raise TableShapeError(f"additive order {add.order} differs from multiplicative order {mul.order}")
    if add.identity != mul.identity:
        raise IdentityMismatch(add.identity, mul.identity)

    A, M, neg = add.table, mul.table, add.inv
    for a in range(add.order):
        lhs = M[a][A]
        shifted = A[M[a], neg[a]]
        rhs = A[shifted[:, None], M[a][None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = (int(v) for v in bad[0])
            raise DistributivityFailure(a, b, c)

    lam = A[neg[:, None], M]
    _check_lambda(A, M, lam)
    lam.setflags(write=False)
    logger.debug(f"Validated skew brace of order {add.order}")
    return FiniteSkewBrace(add=add, mul=mul, lam=lam)


def _check_lambda(A: np.ndarray, M: np.ndarray, lam: np.ndarray) -> None:
    n = A.shape[0]
    expected = np.arange(n)
    for a in range(n):
        if not np.array_equal(np.sort(lam[a]), expected):
            raise LambdaInvariantFailure('permutation', (a,))
        auto = np.argwhere(lam[a][A] != A[lam[a][:, None], lam[a][None, :]])
        if auto.size:
            raise LambdaInvariantFailure('automorphism', (a, *map(int, auto[0])))
        hom = np.argwhere(lam[M[a]] != lam[a][lam])
        if hom.size:
            raise LambdaInvariantFailure('homomorphism', (a, *map(int, hom[0])))


def brace_identity_failures(B: FiniteSkewBrace) -> List[str]:
    """
    Re-check the λ identities on every tuple without raising.

    Returns one message per failed identity: λ_{a∘b} = λ_a λ_b,
    λ_a(b+c) = λ_a(b) + λ_a(c), and a∘b = a + λ_a(b).
    """
    A, M, lam = B.add.table, B.mul.table, B.lam
    failures = []
    for a in range(B.order):
        if np.any(lam[M[a]] != lam[a][lam]):
            failures.append(f"λ homomorphism fails for a={a}")
        if np.any(lam[a][A] != A[lam[a][:, None], lam[a][None, :]]):
            failures.append(f"λ_{a} is not additive")
        if np.any(M[a] != A[a, lam[a]]):
            failures.append(f"a∘b != a + λ_a(b) for a={a}")
    return failures


# =============================================================================
# Pointwise maps
# =============================================================================

def lambda_of(B: FiniteSkewBrace, a: int, b: int) -> int:
    return int(B.lam[a, b])


def theta_of(B: FiniteSkewBrace, a: int, b: int, c: int) -> int:
    """θ_{(a,b)}(c) = a + λ_b(c) - a."""
    return B.minus(B.plus(a, int(B.lam[b, c])), a)


def star(B: FiniteSkewBrace, a: int, b: int) -> int:
    """a*b = λ_a(b) - b."""
    return B.minus(int(B.lam[a, b]), b)


def star_op(B: FiniteSkewBrace, a: int, b: int) -> int:
    """The star operation of the opposite brace: -b + a∘b - a."""
    return B.minus(B.plus(B.neg(b), B.times(a, b)), a)


def star_table(B: FiniteSkewBrace) -> np.ndarray:
    return B.add.table[B.lam, B.add.inv[None, :]]


# =============================================================================
# Derived braces and global predicates
# =============================================================================

def opposite(B: FiniteSkewBrace) -> FiniteSkewBrace:
    """(B, +op, ∘) with a +op b = b + a."""
    return validate_brace(np.ascontiguousarray(B.add.table.T), B.mul)


def is_two_sided(B: FiniteSkewBrace) -> bool:
    """(c+b)∘a = c∘a - a + b∘a for all a, b, c."""
    A, M, neg = B.add.table, B.mul.table, B.add.inv
    for a in range(B.order):
        col = M[:, a]
        lhs = col[A]
        shifted = A[col, neg[a]]
        rhs = A[shifted[:, None], col[None, :]]
        if np.any(lhs != rhs):
            return False
    return True


def is_trivial(B: FiniteSkewBrace) -> bool:
    return bool(np.array_equal(B.add.table, B.mul.table))


def is_almost_trivial(B: FiniteSkewBrace) -> bool:
    return bool(np.array_equal(B.mul.table, B.add.table.T))


def is_trivial_on(B: FiniteSkewBrace, S: ElementSet) -> bool:
    idx = S.as_array()
    block = np.ix_(idx, idx)
    return bool(np.array_equal(B.add.table[block], B.mul.table[block]))


def conjugation_automorphism_holds(B: FiniteSkewBrace, g: int) -> bool:
    """Whether x ↦ ḡ∘x∘g preserves both tables."""
    A, M = B.add.table, B.mul.table
    phi = M[M[B.bar(g)], g]
    preserves_add = np.array_equal(phi[A], A[phi[:, None], phi[None, :]])
    preserves_mul = np.array_equal(phi[M], M[phi[:, None], phi[None, :]])
    return bool(preserves_add and preserves_mul)


# =============================================================================
# Orbits and stabilizers
# =============================================================================

def lambda_orbit(B: FiniteSkewBrace, x: int) -> ElementSet:
    return ElementSet.from_iterable(B.order, np.unique(B.lam[:, x]))


def theta_orbit(B: FiniteSkewBrace, x: int) -> ElementSet:
    A, neg = B.add.table, B.add.inv
    images = np.unique(B.lam[:, x])
    conj = A[A[np.arange(B.order)[:, None], images[None, :]], neg[:, None]]
    return ElementSet.from_iterable(B.order, np.unique(conj))


def stab_lambda(B: FiniteSkewBrace, x: int) -> ElementSet:
    return ElementSet.from_mask(B.lam[:, x] == x)


def stab_theta_size(B: FiniteSkewBrace, x: int) -> int:
    """Number of pairs (a,b) with θ_{(a,b)}(x) = x."""
    A, neg = B.add.table, B.add.inv
    images = A[A[np.arange(B.order)[:, None], B.lam[:, x][None, :]], neg[:, None]]
    return int(np.count_nonzero(images == x))


def orbit_partition(B: FiniteSkewBrace, kind: str = 'theta') -> List[ElementSet]:
    """Distinct λ- or θ-orbits, in order of their least element."""
    orbit = theta_orbit if kind == 'theta' else lambda_orbit
    seen = ElementSet.empty(B.order)
    orbits = []
    for x in range(B.order):
        if x in seen:
            continue
        o = orbit(B, x)
        orbits.append(o)
        seen = seen | o
    return orbits


# =============================================================================
# Distinguished subsets
# =============================================================================

def ker_lambda(B: FiniteSkewBrace) -> ElementSet:
    return ElementSet.from_mask(np.all(B.lam == np.arange(B.order), axis=1))


def fix(B: FiniteSkewBrace) -> ElementSet:
    return ElementSet.from_mask(np.all(B.lam == np.arange(B.order)[None, :], axis=0))


def center_add(B: FiniteSkewBrace) -> ElementSet:
    return center(B.add)


def center_mul(B: FiniteSkewBrace) -> ElementSet:
    return center(B.mul)


def soc(B: FiniteSkewBrace) -> ElementSet:
    return ker_lambda(B) & center_add(B)


def ann(B: FiniteSkewBrace) -> ElementSet:
    return soc(B) & center_mul(B)


def star_span(B: FiniteSkewBrace) -> ElementSet:
    """B², the additive subgroup generated by every a*b."""
    return generated_subgroup(B.add, np.unique(star_table(B)))


def b2_op(B: FiniteSkewBrace) -> ElementSet:
    return star_span(opposite(B))


def commutator_ideal(B: FiniteSkewBrace) -> ElementSet:
    """B', generated additively by [B,B]_+ and B²."""
    seeds = set(np.unique(star_table(B)).tolist())
    for a in range(B.order):
        for b in range(B.order):
            seeds.add(B.add.commutator(a, b))
    return generated_subgroup(B.add, seeds)
