"""
Substructure Tools - Sub skew braces, index, ideals inside subbraces, closures

Purpose: inspect the substructures of one brace file, chosen by action
- subbraces: every sub skew brace with its flags
- index: additive and multiplicative index of a sub skew brace
- sli: a strong left ideal inside a sub skew brace (ideal too when two-sided)
- dietzmann: the Dietzmann closure of a finite set next to the strong left ideal closure
- bounds: every quantitative bound check for the brace
- b2: B² from products of coset representatives
"""

import json
import logging

import numpy as np

from skewlab.shared.brace import is_two_sided
from skewlab.shared.errors import InvalidSubbrace, SkewLabError, status_code_for
from skewlab.shared.groups import minimal_generators
from skewlab.shared.storage import load_brace, parse_elements
from skewlab.shared.substructures import (
    b2_coset_generators,
    dietzmann_closure,
    enumerate_subbraces,
    ideal_in_subbrace_two_sided,
    index_add,
    index_mul,
    is_ideal,
    is_left_ideal,
    is_strong_left_ideal,
    is_subbrace,
    sli_in_subbrace,
    strong_left_ideal_closure,
    verify_bfc_exponent,
    verify_lambda_order_bound,
    verify_lamf_bound,
    verify_oversoc_bound,
    verify_thetafg_bound,
)

logger = logging.getLogger(__name__)


def _subbraces(B):
    rows = []
    for A in enumerate_subbraces(B):
        rows.append({
            'members': A.members.to_list(),
            'order': len(A),
            'left_ideal': is_left_ideal(B, A),
            'strong_left_ideal': is_strong_left_ideal(B, A),
            'ideal': is_ideal(B, A),
        })
    return {'count': len(rows), 'subbraces': rows}


def _rng(event):
    seed = event.get('seed')
    return None if seed is None else np.random.default_rng(int(seed))


def _sli(B, A, rng):
    L = sli_in_subbrace(B, A, rng)
    body = {'sub': A.to_list(), 'strong_left_ideal': L.to_list(), 'two_sided': is_two_sided(B)}
    if body['two_sided']:
        body['ideal'] = ideal_in_subbrace_two_sided(B, A, rng).to_list()
    return body


def _bounds(B, event):
    if event.get('generators') is not None:
        gens = parse_elements(event['generators'], B.order)
    else:
        gens = parse_elements(minimal_generators(B.add), B.order)
    reports = [
        verify_lamf_bound(B, gens),
        verify_thetafg_bound(B, gens),
        verify_oversoc_bound(B),
        verify_lambda_order_bound(B),
        verify_bfc_exponent(B.add),
        verify_bfc_exponent(B.mul),
    ]
    return {'generators': gens.to_list(), 'bounds': [r.to_dict() for r in reports]}


def handle(event):
    """
    Run one substructure action.

    Args:
        event: {
            'action': 'subbraces' | 'index' | 'sli' | 'dietzmann' | 'bounds' | 'b2',
            'path': 'data/optriv_s3.json',
            'sub': '0,1,2',          # index, sli
            'elements': '3',         # dietzmann
            'generators': '1,3',     # bounds, optional
            'seed': 7                # sli, b2: random transversals
        }

    Returns:
        {'statusCode': 200, 'body': {...}}; a subset that is not a sub skew brace
        answers 422
    """
    try:
        logger.info(f"Input event: {json.dumps(event)}")
        action = event.get('action', 'subbraces')
        B = load_brace(event['path'])

        if action == 'subbraces':
            body = _subbraces(B)
        elif action == 'index':
            A = parse_elements(event.get('sub'), B.order)
            if not is_subbrace(B, A):
                raise InvalidSubbrace(A.to_list())
            plus, circ = index_add(B, A), index_mul(B, A)
            body = {'sub': A.to_list(), 'index_add': plus, 'index_mul': circ, 'equal': plus == circ}
        elif action == 'sli':
            body = _sli(B, parse_elements(event.get('sub'), B.order), _rng(event))
        elif action == 'dietzmann':
            X = parse_elements(event.get('elements'), B.order)
            D = dietzmann_closure(B, X)
            body = {
                'elements': X.to_list(),
                'dietzmann': D.to_list(),
                'strong_left_ideal_closure': strong_left_ideal_closure(B, X).to_list(),
            }
        elif action == 'bounds':
            body = _bounds(B, event)
        elif action == 'b2':
            body = b2_coset_generators(B, _rng(event)).to_dict()
        else:
            return {'statusCode': 400, 'body': {'error': f"Unknown action {action!r}"}}

        return {'statusCode': 200, 'body': body}

    except SkewLabError as e:
        logger.info(f"Substructure query failed: {e.message}")
        return {'statusCode': status_code_for(e), 'body': e.to_dict()}
    except Exception as e:
        logger.error(f"Error in substructure tools: {str(e)}", exc_info=True)
        return {'statusCode': 500, 'body': {'error': str(e)}}
