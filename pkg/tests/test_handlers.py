"""
Handler events end to end.

Every handler takes an event dict and answers {'statusCode', 'body'}:
200 on success, 400 for unparseable input, 413 past a resource cap and
422 when the input violates an axiom or a precondition.

optriv_s3.json lists e, (12), (13), (23), (123), (132) at indices 0..5.
"""

import json
import os

import pytest

from skewlab.handlers.analyze_brace import handler as analyze_brace
from skewlab.handlers.enumerate_catalog import handler as enumerate_catalog
from skewlab.handlers.family_query import handler as family_query
from skewlab.handlers.run_sweep import handler as run_sweep
from skewlab.handlers.solution_tools import handler as solution_tools
from skewlab.handlers.substructure_tools import handler as substructure_tools
from skewlab.handlers.validate_input import handler as validate_input
from skewlab.shared.storage import load_solution
from skewlab.shared.sweeps import SweepResult

A3 = '0,4,5'


@pytest.fixture
def optriv(data_dir):
    return os.path.join(data_dir, 'optriv_s3.json')


@pytest.fixture
def not_latin(tmp_path):
    path = tmp_path / 'not_latin.json'
    path.write_text(json.dumps({'order': 2, 'add': [[0, 1], [1, 1]], 'mul': [[0, 1], [1, 0]]}))
    return str(path)


# =============================================================================
# validate_input
# =============================================================================

def test_validate_brace(optriv):
    response = validate_input.handle({'action': 'brace', 'path': optriv})
    assert response['statusCode'] == 200
    assert response['body'] == {'valid': True, 'kind': 'brace', 'order': 6, 'relabeling': list(range(6))}


def test_validate_solution(data_dir):
    response = validate_input.handle({'action': 'solution', 'path': os.path.join(data_dir, 'flip3.json')})
    assert response['statusCode'] == 200
    assert response['body']['involutive'] is True


def test_validate_reports_witness(not_latin):
    response = validate_input.handle({'action': 'brace', 'path': not_latin})
    assert response['statusCode'] == 422
    body = response['body']
    assert body['valid'] is False
    assert body['error'] == 'NotLatinSquare'
    assert body['witness'] == {'axis': 'row', 'index': 1, 'value': 1}


def test_validate_missing_file_and_unknown_action(tmp_path, optriv):
    assert validate_input.handle({'action': 'brace', 'path': str(tmp_path / 'none.json')})['statusCode'] == 400
    assert validate_input.handle({'action': 'group', 'path': optriv})['statusCode'] == 400


# =============================================================================
# analyze_brace
# =============================================================================

def test_analyze(optriv):
    response = analyze_brace.handle({'action': 'analyze', 'path': optriv})
    assert response['statusCode'] == 200
    body = response['body']
    assert (body['soc'], body['b2'], body['subbrace_count'], body['two_sided']) == (1, 3, 6, True)


def test_orbits(optriv):
    body = analyze_brace.handle({'action': 'orbits', 'path': optriv, 'element': 4})['body']
    assert body['lambda_orbit'] == [4, 5]
    assert body['theta_orbit'] == [4, 5]
    assert body['lambda_stabilizer'] == 3
    assert body['theta_stabilizer'] == 18


def test_orbits_rejects_bad_element(optriv):
    assert analyze_brace.handle({'action': 'orbits', 'path': optriv, 'element': 6})['statusCode'] == 400
    assert analyze_brace.handle({'action': 'orbits', 'path': optriv})['statusCode'] == 400


def test_to_solution_writes_file(optriv, tmp_path):
    out = str(tmp_path / 'r.json')
    response = analyze_brace.handle({'action': 'to-solution', 'path': optriv, 'out': out})
    assert response['statusCode'] == 200
    assert response['body']['involutive'] is False
    assert load_solution(out).size == 6


def test_unexpected_errors_answer_500(optriv, mocker):
    mocker.patch.object(analyze_brace, 'report', side_effect=RuntimeError('boom'))
    response = analyze_brace.handle({'action': 'analyze', 'path': optriv})
    assert response == {'statusCode': 500, 'body': {'error': 'boom'}}


# =============================================================================
# substructure_tools
# =============================================================================

def test_subbraces(optriv):
    body = substructure_tools.handle({'action': 'subbraces', 'path': optriv})['body']
    assert body['count'] == 6
    a3 = next(row for row in body['subbraces'] if row['members'] == [0, 4, 5])
    assert a3['ideal'] and a3['strong_left_ideal'] and a3['left_ideal']
    swap = next(row for row in body['subbraces'] if row['members'] == [0, 1])
    assert not swap['left_ideal']


def test_index(optriv):
    body = substructure_tools.handle({'action': 'index', 'path': optriv, 'sub': A3})['body']
    assert body == {'sub': [0, 4, 5], 'index_add': 2, 'index_mul': 2, 'equal': True}
    response = substructure_tools.handle({'action': 'index', 'path': optriv, 'sub': '0,4'})
    assert response['statusCode'] == 422
    assert response['body']['error'] == 'InvalidSubbrace'


def test_sli_and_ideal(optriv):
    body = substructure_tools.handle({'action': 'sli', 'path': optriv, 'sub': '0,1', 'seed': 4})['body']
    assert body['strong_left_ideal'] == [0]
    assert body['two_sided'] is True
    assert body['ideal'] == [0]
    body = substructure_tools.handle({'action': 'sli', 'path': optriv, 'sub': A3})['body']
    assert body['strong_left_ideal'] == [0, 4, 5]


def test_dietzmann(optriv):
    body = substructure_tools.handle({'action': 'dietzmann', 'path': optriv, 'elements': '1'})['body']
    assert body['dietzmann'] == list(range(6))
    assert body['dietzmann'] == body['strong_left_ideal_closure']


def test_bounds(optriv):
    body = substructure_tools.handle({'action': 'bounds', 'path': optriv})['body']
    assert len(body['bounds']) == 6
    assert all(b['holds'] for b in body['bounds'])
    response = substructure_tools.handle({'action': 'bounds', 'path': optriv, 'generators': '4'})
    assert response['statusCode'] == 422
    assert response['body']['error'] == 'NotAdditivelyGenerating'


def test_b2(optriv):
    body = substructure_tools.handle({'action': 'b2', 'path': optriv, 'seed': 3})['body']
    assert body['holds']
    assert body['span'] == [0, 4, 5]


def test_out_of_range_elements(optriv):
    assert substructure_tools.handle({'action': 'index', 'path': optriv, 'sub': '0,9'})['statusCode'] == 400


# =============================================================================
# solution_tools
# =============================================================================

def test_tower_and_atoms(data_dir):
    flip = os.path.join(data_dir, 'flip3.json')
    shift = os.path.join(data_dir, 'shift3.json')
    assert solution_tools.handle({'action': 'tower', 'path': flip})['body'] == {'sizes': [3, 1]}
    body = solution_tools.handle({'action': 'atoms', 'path': shift})['body']
    assert body['blocks'] == [[0, 1, 2]]
    assert body['delta_f'] == [0, 1, 2]


def test_decompose(data_dir):
    flip = os.path.join(data_dir, 'flip3.json')
    body = solution_tools.handle({'action': 'decompose', 'path': flip, 'element': 1})['body']
    assert body == {'element': 1, 'members': [1], 'exact': True}
    assert solution_tools.handle({'action': 'decompose', 'path': flip})['statusCode'] == 400


def test_derived_and_retract(data_dir, tmp_path):
    shift = os.path.join(data_dir, 'shift3.json')
    out = str(tmp_path / 'derived.json')
    body = solution_tools.handle({'action': 'derived', 'path': shift, 'out': out})['body']
    assert body['rho'] == [[1, 2, 0]] * 3
    assert os.path.exists(out)
    body = solution_tools.handle({'action': 'retract', 'path': shift})['body']
    assert body['size'] == 1
    assert body['projection'] == [0, 0, 0]


def test_partial_decomposition(data_dir, monkeypatch):
    monkeypatch.setenv('SKEWLAB_FACTOR_SEARCH_LIMIT', '2')
    response = solution_tools.handle({'action': 'atoms', 'path': os.path.join(data_dir, 'shift3.json')})
    assert response['statusCode'] == 413
    assert response['body']['error'] == 'PartialResult'
    assert response['body']['partition']['blocks'] == [[0, 1, 2]]


# =============================================================================
# enumerate_catalog
# =============================================================================

def test_enumerate_catalog(tmp_path):
    out = str(tmp_path / 'catalog')
    response = enumerate_catalog.handle({'max_order': 3, 'out': out})
    assert response['statusCode'] == 200
    body = response['body']
    assert body['entries'] == 3
    assert body['per_order'] == {'1': 1, '2': 1, '3': 1}
    assert os.path.exists(os.path.join(out, 'catalog.csv'))


def test_enumerate_catalog_errors(tmp_path):
    out = str(tmp_path / 'catalog')
    assert enumerate_catalog.handle({'max_order': 3, 'out': out, 'strategy': 'guess'})['statusCode'] == 400
    response = enumerate_catalog.handle({'max_order': 9, 'out': out})
    assert response['statusCode'] == 413
    assert response['body']['error'] == 'TooLarge'


# =============================================================================
# family_query
# =============================================================================

@pytest.mark.parametrize('event, result', [
    ({'family': 'cdinf', 'action': 'lambda', 'args': ['3', '7']}, '-7'),
    ({'family': 'rosita', 'action': 'lambda', 'args': ['(0,0,1)', '(1,3,5)']}, '(2,6,5)'),
    ({'family': 'optriv-dinf', 'action': 'theta', 'args': ['a', 'e', 'b']}, 'a^2 b'),
])
def test_family_values(event, result):
    response = family_query.handle(event)
    assert response['statusCode'] == 200
    assert response['body']['result'] == result


def test_family_orbit_and_member():
    body = family_query.handle({'family': 'free2', 'action': 'orbit', 'args': ['ab']})['body']
    assert body['members'] == ['ab', 'ba']
    body = family_query.handle({'family': 'rosita', 'action': 'orbit', 'args': ['(0,1,0)'], 'cap': 10})['body']
    assert body['overflow'] is True
    body = family_query.handle({'family': 'cdinf', 'action': 'member', 'args': ['soc', '6']})['body']
    assert body['member'] is True


def test_family_check_and_claims():
    body = family_query.handle({'family': 'cdinf', 'action': 'check', 'args': ['cdinf-soc'], 'radius': 10})['body']
    assert body['holds'] is True
    claims = family_query.handle({'action': 'claims'})['body']['claims']
    assert any(c['claim_id'] == 'free-orbit' for c in claims)


@pytest.mark.parametrize('event, status', [
    ({'family': 'cdinf', 'action': 'lambda', 'args': ['3']}, 400),
    ({'family': 'cdinf', 'action': 'lambda', 'args': ['x', '1']}, 400),
    ({'family': 'cdinf', 'action': 'orbit', 'args': ['1'], 'cap': 0}, 400),
    ({'family': 'cdinf', 'action': 'orbit', 'args': ['1'], 'kind': 'rho'}, 400),
    ({'family': 'cdinf', 'action': 'fly', 'args': []}, 400),
    ({'family': 'nope', 'action': 'lambda', 'args': ['1', '2']}, 422),
    ({'family': 'free2', 'action': 'member', 'args': ['torsion_mul', 'a']}, 422),
    ({'family': 'cdinf', 'action': 'check', 'args': ['rosita-ann']}, 422),
])
def test_family_errors(event, status):
    assert family_query.handle(event)['statusCode'] == status


# =============================================================================
# run_sweep
# =============================================================================

def test_sweep_passes():
    response = run_sweep.handle({'suite': 'axioms', 'max_order': 3})
    assert response['statusCode'] == 200
    assert response['body']['passed'] is True
    assert response['body']['results'][0]['suite'] == 'axioms'


def test_sweep_failures_answer_422(mocker):
    failing = SweepResult('index', cases=2, failures=['1:1: index differs'])
    mocker.patch.object(run_sweep, 'run_sweep', return_value=[failing])
    response = run_sweep.handle({'suite': 'index'})
    assert response['statusCode'] == 422
    assert response['body']['results'][0]['failure_count'] == 1


def test_unknown_suite():
    assert run_sweep.handle({'suite': 'everything'})['statusCode'] == 400
