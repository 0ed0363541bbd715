"""
Finite groups given by Cayley tables.

Purpose: the validated group type both brace operations are built from
- validate_group checks the Latin property, the identity and associativity
- generated_subgroup closes a seed set under the group law
- automorphisms enumerates Aut of a subgroup by generator-image backtracking
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np

from skewlab.shared.elementset import ElementSet
from skewlab.shared.errors import NoIdentity, NotAssociative, NotLatinSquare, TableShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """
    A group on the carrier 0..n-1.

    table[i][j] is the product i·j. The arrays are read-only once validated.
    """

    table: np.ndarray
    identity: int
    inv: np.ndarray

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def power(self, a: int, k: int) -> int:
        x = self.identity
        base = a if k >= 0 else int(self.inv[a])
        for _ in range(abs(k)):
            x = int(self.table[x, base])
        return x

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.table[x, a])
            k += 1
        return k

    def element_orders(self) -> List[int]:
        return [self.element_order(a) for a in range(self.order)]

    def commutator(self, a: int, b: int) -> int:
        """[a,b] = a⁻¹·b⁻¹·a·b."""
        t = self.table
        return int(t[t[t[self.inv[a], self.inv[b]], a], b])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())


def as_table(table) -> np.ndarray:
    """Coerce a nested sequence into a square index array, checking shape and range."""
    try:
        arr = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise TableShapeError(f"table is not a rectangular integer array ({e})")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise TableShapeError(f"expected a non-empty square table, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise TableShapeError(f"entries must lie in 0..{n - 1}")
    return arr


def _first_repeat(line: np.ndarray) -> int:
    values, counts = np.unique(line, return_counts=True)
    return int(values[np.argmax(counts > 1)])


def check_latin(arr: np.ndarray) -> None:
    n = arr.shape[0]
    expected = np.arange(n)
    bad_rows = np.flatnonzero(~np.all(np.sort(arr, axis=1) == expected, axis=1))
    if bad_rows.size:
        i = int(bad_rows[0])
        raise NotLatinSquare('row', i, _first_repeat(arr[i]))
    bad_cols = np.flatnonzero(~np.all(np.sort(arr, axis=0) == expected[:, None], axis=0))
    if bad_cols.size:
        j = int(bad_cols[0])
        raise NotLatinSquare('column', j, _first_repeat(arr[:, j]))


def find_identity(arr: np.ndarray) -> Optional[int]:
    expected = np.arange(arr.shape[0])
    rows = np.all(arr == expected, axis=1)
    cols = np.all(arr == expected[:, None], axis=0)
    hits = np.flatnonzero(rows & cols)
    return int(hits[0]) if hits.size else None


def check_associative(arr: np.ndarray) -> None:
    # (a·b)·c against a·(b·c), one slab per a
    for a in range(arr.shape[0]):
        left = arr[arr[a]]
        right = arr[a][arr]
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = (int(v) for v in bad[0])
            raise NotAssociative(a, b, c)


def validate_group(table) -> FiniteGroup:
    """
    Validate a Cayley table and build a FiniteGroup.

    Args:
        table: n×n nested sequence or array with entries in 0..n-1

    Returns:
        FiniteGroup with identity and inverses computed

    Raises:
        TableShapeError, NotLatinSquare, NoIdentity, NotAssociative
    """
    arr = as_table(table)
    check_latin(arr)
    e = find_identity(arr)
    if e is None:
        raise NoIdentity()
    check_associative(arr)
    inv = np.argmax(arr == e, axis=1).astype(np.int64)
    arr.setflags(write=False)
    inv.setflags(write=False)
    return FiniteGroup(table=arr, identity=e, inv=inv)


# =============================================================================
# Subgroups
# =============================================================================

def generated_subgroup(group: FiniteGroup, seeds: Iterable[int]) -> ElementSet:
    """Least subgroup containing seeds, by right multiplication from the identity."""
    gens = sorted({int(s) for s in seeds})
    seen = np.zeros(group.order, dtype=bool)
    seen[group.identity] = True
    queue = deque([group.identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = int(group.table[x, g])
            if not seen[y]:
                seen[y] = True
                queue.append(y)
    return ElementSet.from_mask(seen)


def is_subgroup(group: FiniteGroup, members: ElementSet) -> bool:
    idx = members.as_array()
    if group.identity not in members:
        return False
    mask = members.as_mask()
    return bool(np.all(mask[group.table[np.ix_(idx, idx)]]))


def is_normal(group: FiniteGroup, members: ElementSet) -> bool:
    mask = members.as_mask()
    t = group.table
    for s in members:
        conj = t[t[group.inv, s], np.arange(group.order)]
        if not np.all(mask[conj]):
            return False
    return True


def center(group: FiniteGroup) -> ElementSet:
    return ElementSet.from_mask(np.all(group.table == group.table.T, axis=1))


def conjugacy_classes(group: FiniteGroup) -> List[ElementSet]:
    t = group.table
    seen = np.zeros(group.order, dtype=bool)
    classes = []
    for x in range(group.order):
        if seen[x]:
            continue
        cls = t[t[group.inv, x], np.arange(group.order)]
        seen[cls] = True
        classes.append(ElementSet.from_iterable(group.order, cls))
    return classes


def minimal_generators(group: FiniteGroup, members: Optional[ElementSet] = None) -> List[int]:
    """Greedy generating sequence: repeatedly add the least element outside the current span."""
    members = members if members is not None else ElementSet.full(group.order)
    gens: List[int] = []
    span = generated_subgroup(group, gens)
    while span != members:
        g = next(x for x in members if x not in span)
        gens.append(g)
        span = generated_subgroup(group, gens)
    return gens


def _extend_images(group: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> Optional[dict]:
    """
    Extend g_i ↦ h_i along right multiplication by generators.

    Returns the map on the span of the first len(images) generators, or None
    when the extension is not a well-defined injective homomorphism.
    """
    phi = {group.identity: group.identity}
    used = {group.identity}
    queue = deque([group.identity])
    pairs = list(zip(gens, images))
    while queue:
        x = queue.popleft()
        for g, h in pairs:
            y = int(group.table[x, g])
            image = int(group.table[phi[x], h])
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


def automorphisms(group: FiniteGroup, members: Optional[ElementSet] = None) -> List[np.ndarray]:
    """
    All automorphisms of the subgroup `members` (default: the whole group).

    Each automorphism is returned as a permutation of the full carrier that
    fixes every element outside `members`. Images of a greedy generating
    sequence are chosen by backtracking and every partial assignment is
    extended along right multiplication by the chosen generators; an
    inconsistent or non-injective extension prunes the branch.
    """
    members = members if members is not None else ElementSet.full(group.order)
    gens = minimal_generators(group, members)
    orders = {x: group.element_order(x) for x in members}
    found: List[np.ndarray] = []

    def search(images: List[int], span: ElementSet):
        if len(images) == len(gens):
            phi = _extend_images(group, gens, images)
            perm = np.arange(group.order)
            for x, y in phi.items():
                perm[x] = y
            found.append(perm)
            return
        g = gens[len(images)]
        for h in members:
            if orders[h] != orders[g] or h in span:
                continue
            images.append(h)
            phi = _extend_images(group, gens, images)
            if phi is not None:
                search(images, ElementSet.from_iterable(group.order, phi.values()))
            images.pop()

    search([], ElementSet.from_iterable(group.order, [group.identity]))
    logger.debug(f"Found {len(found)} automorphisms of a subgroup of order {len(members)}")
    return found


def automorphism_count(group: FiniteGroup, members: Optional[ElementSet] = None) -> int:
    return len(automorphisms(group, members))
