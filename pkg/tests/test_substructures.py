"""
Sub skew braces, ideals, index and the quantitative bound checks.

Uses opTriv(S3), where sub skew braces are the subgroups of S3, left ideals
are the normal ones and λ acts by conjugation.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewlab.shared.brace import center_add, fix, ker_lambda, theta_orbit
from skewlab.shared.constructions import cyclic_group, symmetric_group, trivial_brace
from skewlab.shared.elementset import ElementSet
from skewlab.shared.errors import (
    InvalidSubbrace,
    NotAddSubgroup,
    NotAdditivelyGenerating,
    NotGenerating,
    NotTwoSided,
    TooLarge,
)
from skewlab.shared.groups import is_subgroup, minimal_generators
from skewlab.shared.substructures import (
    SubBraceHandle,
    add_closure,
    b2_coset_generators,
    coset_partition,
    dietzmann_closure,
    enumerate_subbraces,
    gens_to_group_gens,
    ideal_in_subbrace_two_sided,
    index_add,
    index_mul,
    is_ideal,
    is_left_ideal,
    is_strong_left_ideal,
    is_subbrace,
    lambda_f_set,
    left_ideal_cosets_agree,
    mul_closure,
    permutation_order,
    pstab,
    quotient_embedding_check,
    sli_in_subbrace,
    stab_lambda_set,
    strong_left_ideal_closure,
    subbrace_closure,
    subsets_of_size_at_most,
    theta_f_set,
    transversal,
    verify_bfc_exponent,
    verify_lambda_order_bound,
    verify_lamf_bound,
    verify_oversoc_bound,
    verify_thetafg_bound,
)
from skewlab.shared.sweeps import sweep_braces

_, NAMES = symmetric_group(3)


def elements(*names):
    return ElementSet.from_iterable(6, [NAMES.index(n) for n in names])


A3 = elements('e', '(123)', '(132)')
SWAP = elements('e', '(12)')


# =============================================================================
# Closures and predicates
# =============================================================================

def test_subbrace_closure_of_rotation(optriv_s3):
    closed = subbrace_closure(optriv_s3, elements('(123)'))
    assert isinstance(closed, SubBraceHandle)
    assert closed.members == A3
    assert len(closed) == 3
    assert NAMES.index('(132)') in closed


def test_ideal_flags(optriv_s3):
    assert is_subbrace(optriv_s3, A3)
    assert is_ideal(optriv_s3, A3)
    assert is_subbrace(optriv_s3, SWAP)
    assert not is_left_ideal(optriv_s3, SWAP)
    assert not is_strong_left_ideal(optriv_s3, SWAP)
    assert left_ideal_cosets_agree(optriv_s3, A3)


def test_subbrace_counts(optriv_s3, trivial_z4):
    assert len(enumerate_subbraces(optriv_s3)) == 6
    assert [len(s) for s in enumerate_subbraces(trivial_z4)] == [1, 2, 4]


def test_index_agrees_on_every_subbrace(optriv_s3, trivial_z4):
    for B in (optriv_s3, trivial_z4):
        for sub in enumerate_subbraces(B):
            assert index_add(B, sub) == index_mul(B, sub) == B.order // len(sub)
    assert index_add(optriv_s3, A3) == 2


def test_dietzmann_closure_matches_strong_left_ideal(optriv_s3):
    for seeds, expected in ((elements('(12)'), 6), (elements('(123)'), 3), (elements(), 1)):
        closure = dietzmann_closure(optriv_s3, seeds)
        assert len(closure) == expected
        assert closure == strong_left_ideal_closure(optriv_s3, seeds)


def test_finite_orbit_sets(optriv_s3):
    assert lambda_f_set(optriv_s3).is_full()
    assert theta_f_set(optriv_s3, cap=1).to_list() == [0]
    assert theta_f_set(optriv_s3, cap=2) == A3


def test_finite_orbit_sets_are_ideals():
    for _, B in sweep_braces(6):
        assert lambda_f_set(B).is_full() and theta_f_set(B).is_full()
        fixed = lambda_f_set(B, cap=1)
        assert fixed == fix(B)
        assert is_left_ideal(B, fixed)
        central = theta_f_set(B, cap=1)
        assert central == fix(B) & center_add(B)
        assert is_strong_left_ideal(B, central)


def test_orbit_cap_must_be_positive(optriv_s3):
    with pytest.raises(ValueError):
        lambda_f_set(optriv_s3, cap=0)
    with pytest.raises(ValueError):
        theta_f_set(optriv_s3, cap=-1)


def draw_brace_and_subsets(data):
    _, B = data.draw(st.sampled_from(sweep_braces(6)))
    members = st.sets(st.integers(0, B.order - 1))
    S = ElementSet.from_iterable(B.order, data.draw(members))
    T = S | ElementSet.from_iterable(B.order, data.draw(members))
    return B, S, T


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_strong_left_ideal_closure_is_a_closure_operator(data):
    B, S, T = draw_brace_and_subsets(data)
    closure = strong_left_ideal_closure(B, S)
    assert S <= closure
    assert strong_left_ideal_closure(B, closure) == closure
    assert closure <= strong_left_ideal_closure(B, T)
    assert is_strong_left_ideal(B, closure)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_subbrace_closure_is_a_closure_operator(data):
    B, S, T = draw_brace_and_subsets(data)
    closure = subbrace_closure(B, S).members
    assert S <= closure
    assert is_subbrace(B, closure)
    assert subbrace_closure(B, closure).members == closure
    assert closure <= subbrace_closure(B, T).members


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_ideal_hierarchy_and_theta_invariance(data):
    B, S, _ = draw_brace_and_subsets(data)
    if is_ideal(B, S):
        assert is_strong_left_ideal(B, S)
    if is_strong_left_ideal(B, S):
        assert is_left_ideal(B, S)
    if is_left_ideal(B, S):
        assert is_subbrace(B, S)
        assert left_ideal_cosets_agree(B, S)
    theta_invariant = all(theta_orbit(B, x) <= S for x in S)
    assert is_strong_left_ideal(B, S) == (is_subgroup(B.add, S) and theta_invariant)


# =============================================================================
# Cosets and ideals inside sub skew braces
# =============================================================================

def test_coset_partition_and_transversal():
    Z4 = cyclic_group(4).table
    half = ElementSet.from_iterable(4, [0, 2])
    assert [c.to_list() for c in coset_partition(Z4, half)] == [[0, 2], [1, 3]]
    assert transversal(Z4, half) == [0, 1]
    reps = transversal(Z4, half, rng=np.random.default_rng(3))
    assert reps[0] in (0, 2) and reps[1] in (1, 3)


def test_sli_of_normal_subbrace_is_itself(optriv_s3):
    assert sli_in_subbrace(optriv_s3, A3) == A3
    assert sli_in_subbrace(optriv_s3, SubBraceHandle(optriv_s3, A3)) == A3


def test_sli_of_non_normal_subbrace_is_trivial(optriv_s3):
    # the three conjugates of ⟨(12)⟩ meet in the identity
    assert sli_in_subbrace(optriv_s3, SWAP).to_list() == [0]


@pytest.mark.parametrize('seed', [0, 1, 2, 7])
def test_sli_with_random_representatives(optriv_s3, seed):
    for sub in enumerate_subbraces(optriv_s3):
        L = sli_in_subbrace(optriv_s3, sub, rng=np.random.default_rng(seed))
        assert L <= sub.members
        assert is_strong_left_ideal(optriv_s3, L)


def test_sli_rejects_non_subbrace(optriv_s3):
    with pytest.raises(InvalidSubbrace):
        sli_in_subbrace(optriv_s3, elements('e', '(123)'))


def test_ideal_in_two_sided_brace(optriv_s3):
    assert ideal_in_subbrace_two_sided(optriv_s3, A3) == A3
    assert ideal_in_subbrace_two_sided(optriv_s3, SWAP).to_list() == [0]


def test_ideal_requires_two_sided(optriv_s3, mocker):
    mocker.patch('skewlab.shared.substructures.is_two_sided', return_value=False)
    with pytest.raises(NotTwoSided):
        ideal_in_subbrace_two_sided(optriv_s3, A3)


# =============================================================================
# Generators and bounds
# =============================================================================

def test_brace_generators_to_group_generators(optriv_s3):
    U = gens_to_group_gens(optriv_s3, elements('(12)', '(123)'))
    assert elements('(12)', '(123)') <= U
    with pytest.raises(NotGenerating):
        gens_to_group_gens(optriv_s3, elements('(123)'))


def test_group_generators_of_trivial_z6():
    B = trivial_brace(cyclic_group(6))
    assert gens_to_group_gens(B, ElementSet.from_iterable(6, [1])).to_list() == [1, 5]


def test_every_small_generating_set_gives_group_generators():
    checked = 0
    for _, B in sweep_braces(6):
        for T in subsets_of_size_at_most(B.order, 2):
            if not subbrace_closure(B, T).members.is_full():
                continue
            U = gens_to_group_gens(B, T)
            assert T <= U
            assert add_closure(B, U).is_full()
            assert mul_closure(B, U).is_full()
            checked += 1
    assert checked > 0


def test_orbit_bounds_hold(optriv_s3, trivial_z4):
    for B in (optriv_s3, trivial_z4):
        gens = ElementSet.from_iterable(B.order, minimal_generators(B.add))
        lamf = verify_lamf_bound(B, gens)
        thetafg = verify_thetafg_bound(B, gens)
        assert lamf.holds and thetafg.holds
        assert lamf.value <= lamf.bound <= lamf.details['k_power']
        assert verify_oversoc_bound(B).holds
        assert verify_lambda_order_bound(B).holds
        assert verify_bfc_exponent(B.add).holds


def test_optriv_s3_bound_values(optriv_s3):
    gens = ElementSet.from_iterable(6, minimal_generators(optriv_s3.add))
    report = verify_lamf_bound(optriv_s3, gens)
    assert report.value == 6
    assert report.bound == 9
    assert report.to_dict()['name'] == 'lamf'
    bfc = verify_bfc_exponent(optriv_s3.add)
    assert (bfc.value, bfc.bound) == (6, 6)


def test_bounds_need_additive_generators(optriv_s3):
    with pytest.raises(NotAdditivelyGenerating):
        verify_lamf_bound(optriv_s3, elements('(123)'))
    with pytest.raises(NotAdditivelyGenerating):
        verify_thetafg_bound(optriv_s3, elements('(12)'))


def test_permutation_order():
    assert permutation_order(np.array([1, 2, 0, 4, 3])) == 6
    assert permutation_order(np.arange(4)) == 1


def test_stabilizers_and_quotient(optriv_s3):
    assert stab_lambda_set(optriv_s3, A3).is_full()
    assert pstab(optriv_s3, A3) == A3
    report = quotient_embedding_check(optriv_s3, A3)
    assert report.holds
    assert (report.value, report.bound) == (2, 2)
    assert report.details['normal']


def test_quotient_for_trivial_and_whole_subgroup(optriv_s3, trivial_z4):
    zero = elements('e')
    assert stab_lambda_set(optriv_s3, zero).is_full()
    assert pstab(optriv_s3, zero).is_full()
    report = quotient_embedding_check(optriv_s3, zero)
    assert report.holds
    assert (report.value, report.bound) == (1, 1)

    whole = ElementSet.full(6)
    assert pstab(optriv_s3, whole) == ker_lambda(optriv_s3) == zero
    report = quotient_embedding_check(optriv_s3, whole)
    assert report.holds
    # image of λ is Inn(S3) = Aut(S3)
    assert (report.value, report.bound) == (6, 6)

    report = quotient_embedding_check(trivial_z4, ElementSet.full(4))
    assert pstab(trivial_z4, ElementSet.full(4)).is_full()
    assert (report.value, report.bound) == (1, 2)


def test_stabilizers_need_additive_subgroup(optriv_s3):
    with pytest.raises(NotAddSubgroup):
        pstab(optriv_s3, elements('e', '(12)', '(13)'))


def test_quotient_check_respects_automorphism_cap(optriv_s3, monkeypatch):
    monkeypatch.setenv('SKEWLAB_AUT_LIMIT', '2')
    with pytest.raises(TooLarge):
        quotient_embedding_check(optriv_s3, A3)


@pytest.mark.parametrize('seed', [None, 0, 5])
def test_b2_from_coset_representatives(optriv_s3, trivial_z4, seed):
    rng = None if seed is None else np.random.default_rng(seed)
    for B in (optriv_s3, trivial_z4):
        generation = b2_coset_generators(B, rng)
        assert generation.holds
        assert generation.to_dict()['holds']
    assert len(b2_coset_generators(optriv_s3).span) == 3


def test_subsets_of_size_at_most():
    assert len(list(subsets_of_size_at_most(4, 2))) == 11
