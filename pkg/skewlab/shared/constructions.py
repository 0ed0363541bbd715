"""
Standard groups and skew braces used throughout the library and its tests.

Groups are built from an element list and a product function, with the
identity listed first so it lands at index 0. Brace constructors:
- trivial_brace(G): a∘b = a+b
- optriv_brace(G): additive group G, multiplicative group G^op (almost trivial)
- semidirect_brace(A, B, phi): A ⋊_φ B for a trivial brace A and a brace B
"""

import itertools
from typing import Callable, Hashable, List, Sequence, Tuple

import numpy as np

from skewlab.shared.brace import FiniteSkewBrace, validate_brace
from skewlab.shared.groups import FiniteGroup, validate_group


def group_from_function(elements: Sequence[Hashable], op: Callable) -> FiniteGroup:
    """Cayley table of `op` on `elements`; elements[0] must be the identity."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[op(a, b)]
    return validate_group(table)


def cyclic_group(n: int) -> FiniteGroup:
    return group_from_function(range(n), lambda a, b: (a + b) % n)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G × H with (g,h) stored at index g·|H| + h."""
    m = H.order
    elements = list(itertools.product(range(G.order), range(m)))
    return group_from_function(
        elements, lambda x, y: (G.op(x[0], y[0]), H.op(x[1], y[1]))
    )


def elementary_abelian(k: int) -> FiniteGroup:
    G = cyclic_group(2)
    for _ in range(k - 1):
        G = direct_product(G, cyclic_group(2))
    return G


def symmetric_group(degree: int) -> Tuple[FiniteGroup, List[str]]:
    """
    S_degree acting on 0..degree-1, with (p·q)(i) = p(q(i)).

    Returns the group and the cycle-notation name of each element
    (1-based points, 'e' for the identity).
    """
    perms = list(itertools.permutations(range(degree)))
    group = group_from_function(perms, lambda p, q: tuple(p[q[i]] for i in range(degree)))
    return group, [cycle_name(p) for p in perms]


def cycle_name(perm: Sequence[int]) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = perm[x]
        cycles.append('(' + ''.join(str(c + 1) for c in cycle) + ')')
    return ''.join(cycles) or 'e'


def dihedral_group(m: int) -> FiniteGroup:
    """D_m of order 2m; rotation r^i at index i, reflection r^i s at index m + i."""
    elements = [(i, f) for f in (0, 1) for i in range(m)]
    return group_from_function(
        elements, lambda x, y: ((x[0] + (-1) ** x[1] * y[0]) % m, x[1] ^ y[1])
    )


_UNIT_PRODUCTS = {
    # (u, v) -> (sign, unit) over the units 1, i, j, k
    (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
    (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
    (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
}


def quaternion_group() -> FiniteGroup:
    """Q8 with ±1, ±i, ±j, ±k stored as (sign, unit); index 4·sign + unit."""

    def op(x, y):
        (s, u), (t, v) = x, y
        if u == 0 or v == 0:
            return (s ^ t, u or v)
        sign, unit = _UNIT_PRODUCTS[(u, v)]
        return (s ^ t ^ sign, unit)

    elements = [(s, u) for s in (0, 1) for u in range(4)]
    return group_from_function(elements, op)


def small_groups_of_order_8() -> List[Tuple[str, FiniteGroup]]:
    return [
        ('Z8', cyclic_group(8)),
        ('Z4xZ2', direct_product(cyclic_group(4), cyclic_group(2))),
        ('Z2^3', elementary_abelian(3)),
        ('D4', dihedral_group(4)),
        ('Q8', quaternion_group()),
    ]


# =============================================================================
# Braces
# =============================================================================

def trivial_brace(G: FiniteGroup) -> FiniteSkewBrace:
    return validate_brace(G, G)


def optriv_brace(G: FiniteGroup) -> FiniteSkewBrace:
    """opTriv(G): a + b = a·b and a∘b = b·a, so λ_a(x) = a⁻¹·x·a."""
    return validate_brace(G, np.ascontiguousarray(G.table.T))


def semidirect_brace(A: FiniteGroup, B: FiniteSkewBrace, phi: Sequence[Sequence[int]]) -> FiniteSkewBrace:
    """
    A ⋊_φ B for the trivial brace on A.

    Args:
        A: group of the trivial brace
        B: any skew brace
        phi: phi[b] is the automorphism of A attached to b; b ↦ phi[b] must be
            a morphism (B,∘) → Aut(A)

    Returns:
        brace on pairs (a,b) stored at index a·|B| + b, with additive group
        A × (B,+) and multiplicative group A ⋊_φ (B,∘)
    """
    m = B.order
    phi = np.asarray(phi, dtype=np.int64)
    elements = list(itertools.product(range(A.order), range(m)))
    add = group_from_function(elements, lambda x, y: (A.op(x[0], y[0]), B.plus(x[1], y[1])))
    mul = group_from_function(
        elements, lambda x, y: (A.op(x[0], int(phi[x[1], y[0]])), B.times(x[1], y[1]))
    )
    return validate_brace(add, mul)


def finite_rosita_brace() -> FiniteSkewBrace:
    """
    (ℤ3 × ℤ5) ⋊ ℤ4 with k acting by (a,x) ↦ ((-1)^k a, 2^k x).

    A finite model of the ℤ/3 × ℚ ⋊ ℤ example: 2 has order 4 modulo 5.
    """
    A = direct_product(cyclic_group(3), cyclic_group(5))
    C = trivial_brace(cyclic_group(4))
    phi = []
    for k in range(4):
        perm = []
        for idx in range(A.order):
            a, x = divmod(idx, 5)
            perm.append(((-a) % 3 if k % 2 else a) * 5 + (pow(2, k, 5) * x) % 5)
        phi.append(perm)
    return semidirect_brace(A, C, phi)
