"""
Finite solutions: validation, derived solutions, retracts and decomposition.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewlab.shared.constructions import cyclic_group, trivial_brace
from skewlab.shared.elementset import ElementSet
from skewlab.shared.errors import (
    BraidFailure,
    Degenerate,
    NotBijective,
    PartialResult,
    TableShapeError,
    TooLarge,
)
from skewlab.shared.solutions import (
    Partition,
    atoms_from_factors,
    brace_to_solution,
    brute_force_factors,
    decomposition_atoms,
    delta_f,
    derived_solution,
    disjoint_union,
    enumerate_solutions,
    flip_solution,
    generated_orbit,
    is_decomposition_factor,
    is_involutive,
    is_solution_morphism,
    minimal_factor,
    permutation_solution,
    random_solution,
    retract,
    retract_tower,
    retract_tower_by_merging,
    shift_solution,
    validate_solution,
)


# =============================================================================
# Validation
# =============================================================================

def test_degenerate_row():
    with pytest.raises(Degenerate) as info:
        validate_solution([[0, 0], [0, 1]], [[0, 1], [0, 1]])
    assert info.value.witness == {'kind': 'lambda', 'row': 0}


def test_non_bijective_map():
    # r(0,1) = r(1,0) = (1,0)
    with pytest.raises(NotBijective):
        validate_solution([[0, 1], [1, 0]], [[1, 0], [0, 1]])


def test_non_commuting_permutations_fail_braid():
    with pytest.raises(BraidFailure):
        permutation_solution([1, 0, 2], [0, 2, 1])


def test_mismatched_table_sizes():
    with pytest.raises(TableShapeError):
        validate_solution([[0]], [[0, 1], [1, 0]])


def test_r_convention(shift3):
    # r(x,y) = (y, x+1)
    assert shift3.r(0, 2) == (2, 1)
    assert shift3.r(2, 0) == (0, 0)


def test_involutive(flip5, shift3, optriv_s3, trivial_z4):
    assert is_involutive(flip5)
    assert not is_involutive(shift3)
    assert is_involutive(brace_to_solution(trivial_z4))
    assert not is_involutive(brace_to_solution(optriv_s3))


# =============================================================================
# Derived solutions and retracts
# =============================================================================

def test_derived_solution(flip5, shift3, optriv_s3):
    assert derived_solution(flip5) == flip5
    assert derived_solution(shift3) == shift3
    derived = derived_solution(brace_to_solution(optriv_s3))
    assert np.array_equal(derived.lam, np.tile(np.arange(6), (6, 1)))


def test_trivial_brace_gives_flip():
    assert brace_to_solution(trivial_brace(cyclic_group(4))) == flip_solution(4)


def test_brace_solution_first_component_is_lambda(optriv_s3):
    X = brace_to_solution(optriv_s3)
    for a in range(6):
        for b in range(6):
            assert X.r(a, b)[0] == optriv_s3.lam[a, b]


def test_retract_tower_of_flip(flip5):
    assert retract_tower(flip5) == [5, 1]
    assert retract_tower_by_merging(flip5) == [5, 1]


def test_retract_projection_is_a_morphism(optriv_s3, shift3):
    for X in (brace_to_solution(optriv_s3), shift3, flip_solution(3)):
        Y, projection = retract(X)
        assert is_solution_morphism(X, Y, projection)
        assert Y.size == len(set(projection.tolist()))


def test_retract_tower_step_cap(flip5):
    assert retract_tower(flip5, max_steps=0) == [5]


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.integers(min_value=0, max_value=10_000))
def test_tower_strategies_agree(n, seed):
    X = random_solution(n, seed)
    assert retract_tower(X) == retract_tower_by_merging(X)


# =============================================================================
# Decomposition
# =============================================================================

def test_shift_is_indecomposable(shift3):
    assert decomposition_atoms(shift3).blocks() == [ElementSet.full(3)]
    assert generated_orbit(shift3, 0).is_full()
    assert [len(f) for f in brute_force_factors(shift3)] == [0, 3]


def test_flip_atoms_are_points(flip5):
    assert decomposition_atoms(flip5).block_id == (0, 1, 2, 3, 4)
    assert minimal_factor(flip5, 2).members.to_list() == [2]
    assert len(brute_force_factors(flip_solution(3))) == 8


def test_disjoint_union_atoms():
    X = disjoint_union(flip_solution(2), shift_solution(3))
    partition = decomposition_atoms(X)
    assert [b.to_list() for b in partition.blocks()] == [[0], [1], [2, 3, 4]]
    assert partition.to_dict()['block_id'] == [0, 1, 2, 2, 2]
    assert is_decomposition_factor(X, ElementSet.from_iterable(5, [0, 2, 3, 4]))
    assert not is_decomposition_factor(X, ElementSet.from_iterable(5, [2, 3]))


def test_partial_result_past_search_limit(shift3):
    with pytest.raises(PartialResult) as info:
        decomposition_atoms(shift3, search_limit=2)
    assert info.value.partition.block_id == (0, 0, 0)
    assert info.value.witness['flagged'] == (0,)
    assert not minimal_factor(shift3, 0, search_limit=2).exact


def test_delta_f_is_whole_carrier(shift3, flip5):
    assert delta_f(shift3).is_full()
    assert delta_f(flip5).is_full()


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=10_000))
def test_atoms_match_brute_force(n, seed):
    X = random_solution(n, seed)
    assert decomposition_atoms(X) == atoms_from_factors(n, brute_force_factors(X))


def test_partition_round_trip():
    blocks = [ElementSet.from_iterable(4, [1, 3]), ElementSet.from_iterable(4, [0, 2])]
    partition = Partition.from_blocks(4, blocks)
    assert partition.block_id == (0, 1, 0, 1)
    assert partition.blocks()[0].to_list() == [0, 2]


# =============================================================================
# Exhaustive search limits
# =============================================================================

def test_enumerate_small_solutions():
    found = enumerate_solutions(2)
    assert flip_solution(2) in found
    assert permutation_solution([1, 0], [1, 0]) in found
    assert len(set(found)) == len(found)
    for X in found:
        assert decomposition_atoms(X) == atoms_from_factors(2, brute_force_factors(X))


def test_size_caps():
    with pytest.raises(TooLarge):
        enumerate_solutions(5)
    with pytest.raises(TooLarge):
        brute_force_factors(flip_solution(13))
