"""
Enumeration of small groups and skew braces up to isomorphism.

Class counts by order: groups 1, 1, 1, 2, 1, 2 and skew braces
1, 1, 1, 4, 1, 6 for orders 1..6.
"""

import pytest

from skewlab.shared.constructions import (
    cyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian,
    optriv_brace,
    trivial_brace,
)
from skewlab.shared.enumeration import (
    brace_isomorphic,
    build_catalog,
    canonical_form,
    canonical_key,
    describe_group,
    enumerate_braces_on_group,
    enumerate_groups,
    group_isomorphic,
)
from skewlab.shared.errors import StrategyMismatch, TooLarge


@pytest.mark.parametrize('n, count', [(1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 2)])
def test_group_counts(n, count):
    groups = enumerate_groups(n)
    assert len(groups) == count
    assert all(G.identity == 0 for G in groups)


def test_group_names():
    assert sorted(describe_group(G) for G in enumerate_groups(4)) == ['Z2xZ2', 'Z4']
    assert sorted(describe_group(G) for G in enumerate_groups(6)) == ['S3', 'Z6']
    assert describe_group(dihedral_group(4)) == 'D4'


def test_group_isomorphism(s3):
    G, _ = s3
    assert group_isomorphic(cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3)))
    assert group_isomorphic(G, dihedral_group(3))
    assert not group_isomorphic(G, cyclic_group(6))
    assert not group_isomorphic(cyclic_group(4), elementary_abelian(2))


def test_brace_isomorphism(s3, optriv_s3):
    G, _ = s3
    assert brace_isomorphic(optriv_s3, optriv_brace(dihedral_group(3)))
    assert not brace_isomorphic(optriv_s3, trivial_brace(G))
    assert not brace_isomorphic(optriv_s3, trivial_brace(cyclic_group(4)))


def test_canonical_key_is_an_invariant(s3, optriv_s3):
    G, _ = s3
    assert canonical_key(optriv_s3) == canonical_key(optriv_brace(dihedral_group(3)))
    assert canonical_key(optriv_s3) != canonical_key(trivial_brace(G))
    key, canon = canonical_form(optriv_s3)
    assert canon.zero == 0
    assert brace_isomorphic(canon, optriv_s3)
    assert canonical_key(canon) == key


@pytest.mark.parametrize('strategy', ['direct', 'lambda', 'both'])
def test_braces_of_order_four(strategy):
    total = sum(len(enumerate_braces_on_group(G, strategy)) for G in enumerate_groups(4))
    assert total == 4


def test_braces_of_order_six():
    per_group = {describe_group(G): enumerate_braces_on_group(G, 'both') for G in enumerate_groups(6)}
    assert sum(len(v) for v in per_group.values()) == 6
    representatives = [B for braces in per_group.values() for B in braces]
    for i, B in enumerate(representatives):
        for other in representatives[i + 1:]:
            assert not brace_isomorphic(B, other)


def test_prime_orders_have_one_brace():
    for p in (2, 3, 5):
        braces = enumerate_braces_on_group(cyclic_group(p), 'both')
        assert len(braces) == 1
        assert braces[0].mul.is_abelian()


def test_build_catalog():
    entries = build_catalog(3)
    assert [e.order for e in entries] == [1, 2, 3]
    assert all(e.report.index_equality_verified for e in entries)
    record = entries[2].to_dict()
    assert record['add_group'] == 'Z3'
    assert record['key'] == entries[2].canonical_key.hex()
    assert record['report']['soc'] == 3


def test_catalog_counts_through_order_six():
    entries = build_catalog(6)
    counts = [sum(1 for e in entries if e.order == n) for n in range(1, 7)]
    assert counts == [1, 1, 1, 4, 1, 6]
    keys = [(e.order, e.canonical_key) for e in entries]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_order_caps(small_limits):
    with pytest.raises(TooLarge):
        enumerate_groups(5)
    with pytest.raises(TooLarge):
        build_catalog(6)
    assert len(build_catalog(4)) == 7


def test_unknown_strategy():
    with pytest.raises(ValueError):
        enumerate_braces_on_group(cyclic_group(3), 'guess')


def test_disagreeing_strategies_raise(mocker):
    mocker.patch('skewlab.shared.enumeration._braces_lambda', return_value=[])
    with pytest.raises(StrategyMismatch) as info:
        enumerate_braces_on_group(cyclic_group(2), 'both')
    assert info.value.witness == {'direct': 1, 'lambda_based': 0}
