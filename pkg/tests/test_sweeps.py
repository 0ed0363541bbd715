"""
Acceptance suites at reduced scale.
"""

import pytest

from skewlab.shared.families import CLAIM_SETTINGS
from skewlab.shared.sweeps import (
    SUITES,
    SweepResult,
    run_sweep,
    sweep_braces,
    sweep_closed_form,
    sweep_decomposition,
    sweep_enumeration,
    sweep_families,
)


def test_sweep_braces_labels():
    labels = [label for label, _ in sweep_braces(4)]
    assert labels == ['1:1', '2:1', '3:1', '4:1', '4:2', '4:3', '4:4']


@pytest.mark.parametrize('suite', [
    'axioms', 'orbit-stabilizer', 'index', 'sli', 'dietzmann', 'bounds', 'b2', 'solutions',
    'closures', 'gens', 'quotient',
])
def test_brace_suites_pass(suite):
    [result] = run_sweep(suite, max_order=4)
    assert result.suite == suite
    assert result.cases > 0
    assert result.passed, result.failures


def test_closures_order_six():
    [result] = run_sweep('closures', max_order=6)
    assert result.passed, result.failures
    assert result.cases > 0


def test_quotient_skips_large_subgroups(monkeypatch):
    monkeypatch.setenv('SKEWLAB_AUT_LIMIT', '2')
    [result] = run_sweep('quotient', max_order=4)
    assert result.passed, result.failures
    assert result.details['skipped'] > 0


def test_decomposition_small():
    result = sweep_decomposition(exhaustive_size=2, random_count=5, sizes=(3, 5))
    assert result.passed, result.failures
    assert result.details['solutions_1'] == 1


def test_families_small(monkeypatch):
    monkeypatch.setitem(CLAIM_SETTINGS, 'orbit_cap', 200)
    result = sweep_families(scale=0.02)
    assert result.passed, result.failures
    assert set(result.details) == {'cdinf-soc', 'cdinf-torsion', 'free-orbit', 'rosita-lambda-f', 'rosita-ann'}


def test_closed_form_small():
    result = sweep_closed_form(samples=50)
    assert result.passed, result.failures
    assert set(result.details) == {'cdinf', 'optriv-dinf', 'rosita', 'free2'}


def test_enumeration_small():
    result = sweep_enumeration(max_order=4)
    assert result.passed, result.failures
    assert result.details['groups_4'] == 2
    assert result.details['braces_4'] == 4


def test_sweep_result_dict():
    result = SweepResult('index')
    result.check(True, 'fine')
    result.check(False, 'broken')
    body = result.to_dict()
    assert body['passed'] is False
    assert (body['cases'], body['failure_count']) == (2, 1)
    assert body['failures'] == ['broken']


def test_run_sweep_filters_parameters():
    [result] = run_sweep('axioms', max_order=2, seed=7, samples=None)
    assert result.cases == 2
    assert result.seconds >= 0


def test_run_sweep_unknown():
    with pytest.raises(KeyError):
        run_sweep('nope')
    assert 'closed-form' in SUITES
