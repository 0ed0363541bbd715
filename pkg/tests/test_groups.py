"""
Group validation and subgroup utilities.

Covers the table checks every brace input goes through, then the subgroup,
conjugacy and automorphism helpers the brace code builds on.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewlab.shared.constructions import (
    cyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian,
    quaternion_group,
    small_groups_of_order_8,
)
from skewlab.shared.elementset import ElementSet
from skewlab.shared.errors import NoIdentity, NotAssociative, NotLatinSquare, TableShapeError
from skewlab.shared.groups import (
    automorphism_count,
    center,
    conjugacy_classes,
    generated_subgroup,
    is_normal,
    is_subgroup,
    minimal_generators,
    validate_group,
)

# Order-5 loop: Latin with identity 0 but 1·1 = 0, so not a group
LOOP_5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def test_repeated_row_entry_is_not_latin():
    with pytest.raises(NotLatinSquare) as info:
        validate_group([[0, 1], [1, 1]])
    assert info.value.witness['value'] == 1


def test_latin_square_without_identity():
    # x·y = -x-y mod 3
    with pytest.raises(NoIdentity):
        validate_group([[0, 2, 1], [2, 1, 0], [1, 0, 2]])


def test_loop_is_not_associative():
    with pytest.raises(NotAssociative):
        validate_group(LOOP_5)


def test_ragged_and_empty_tables_rejected():
    with pytest.raises(TableShapeError):
        validate_group([[0, 1], [1]])
    with pytest.raises(TableShapeError):
        validate_group([])


def test_entries_outside_carrier_rejected():
    with pytest.raises((TableShapeError, NotLatinSquare)):
        validate_group([[0, 2], [2, 0]])


def test_trivial_group():
    G = validate_group([[0]])
    assert G.order == 1
    assert G.identity == 0
    assert G.is_abelian()


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=12))
def test_cyclic_groups_validate(n):
    G = validate_group(cyclic_group(n).table.tolist())
    assert G.identity == 0
    assert all(n % k == 0 for k in G.element_orders())
    assert G.element_order(1 % n) == n


def test_s3_structure(s3):
    G, names = s3
    assert G.order == 6
    assert not G.is_abelian()
    assert len(center(G)) == 1
    assert sorted(len(c) for c in conjugacy_classes(G)) == [1, 2, 3]
    a3 = ElementSet.from_iterable(6, [names.index(n) for n in ('e', '(123)', '(132)')])
    assert is_subgroup(G, a3)
    assert is_normal(G, a3)
    swap = ElementSet.from_iterable(6, [0, names.index('(12)')])
    assert is_subgroup(G, swap)
    assert not is_normal(G, swap)


def test_generated_subgroup_and_minimal_generators(s3):
    G, names = s3
    rotation = names.index('(123)')
    assert len(generated_subgroup(G, [rotation])) == 3
    assert len(generated_subgroup(G, [rotation, names.index('(12)')])) == 6
    gens = minimal_generators(G)
    assert generated_subgroup(G, gens).is_full()
    assert len(gens) == 2


def test_commutator_and_inverse(s3):
    G, _ = s3
    for a in range(6):
        assert G.op(a, G.inverse(a)) == G.identity
        for b in range(6):
            expected = G.op(G.op(G.inverse(a), G.inverse(b)), G.op(a, b))
            assert G.commutator(a, b) == expected


def test_power_wraps_negative_exponents():
    G = cyclic_group(7)
    assert G.power(3, 2) == 6
    assert G.power(3, -1) == 4
    assert G.power(3, 0) == 0


@pytest.mark.parametrize('group, expected', [
    (cyclic_group(4), 2),
    (elementary_abelian(2), 6),
    (dihedral_group(3), 6),
    (dihedral_group(4), 8),
    (quaternion_group(), 24),
])
def test_automorphism_counts(group, expected):
    assert automorphism_count(group) == expected


def test_order_8_groups():
    groups = dict(small_groups_of_order_8())
    assert sorted(groups) == sorted(['Z8', 'Z4xZ2', 'Z2^3', 'D4', 'Q8'])
    assert all(G.order == 8 for G in groups.values())
    assert [groups[n].is_abelian() for n in ('Z8', 'Z4xZ2', 'Z2^3', 'D4', 'Q8')] == [True] * 3 + [False] * 2
    assert len(center(groups['Q8'])) == 2
    assert max(groups['Q8'].element_orders()) == 4


def test_direct_product_orders():
    G = direct_product(cyclic_group(2), cyclic_group(3))
    assert G.order == 6
    assert G.is_abelian()
    assert max(G.element_orders()) == 6


def test_validated_tables_are_read_only():
    G = validate_group(cyclic_group(3).table.tolist())
    with pytest.raises(ValueError):
        G.table[0, 0] = 1
    assert np.array_equal(G.inv, [0, 2, 1])
