"""
Solution Tools - Derived solution, retracts and decomposition factors

Purpose: transform or decompose one solution file, chosen by action
- derived: the derived solution r'(x,y) = (y, λ_y ρ_{λ_x⁻¹(y)}(x))
- retract: the retract and the projection onto it
- tower: sizes of iterated retracts
- decompose: the minimal decomposition factor of one element
- atoms: the partition into minimal factors
"""

import json
import logging

from skewlab.shared.errors import ParseError, PartialResult, SkewLabError, status_code_for
from skewlab.shared.solutions import (
    decomposition_atoms,
    delta_f,
    derived_solution,
    is_involutive,
    minimal_factor,
    retract,
    retract_tower,
)
from skewlab.shared.storage import load_solution, save_solution

logger = logging.getLogger(__name__)


def _tables(X):
    return {'size': X.size, 'involutive': is_involutive(X), 'lambda': X.lam.tolist(), 'rho': X.rho.tolist()}


def _element(X, event):
    x = event.get('element')
    if not isinstance(x, int) or not 0 <= x < X.size:
        raise ParseError(None, f"element must be an index in 0..{X.size - 1}, got {x!r}")
    return x


def handle(event):
    """
    Run one solution action.

    Args:
        event: {
            'action': 'derived' | 'retract' | 'tower' | 'decompose' | 'atoms',
            'path': 'data/shift3.json',
            'element': 0,        # decompose
            'max_steps': 10,     # tower, optional
            'out': 'out.json'    # derived, retract: optional output file
        }

    Returns:
        {'statusCode': 200, 'body': {...}}; a decomposition with blocks that
        are only upper bounds returns 413 with the partial partition.
    """
    try:
        logger.info(f"Input event: {json.dumps(event)}")
        action = event.get('action', 'atoms')
        X = load_solution(event['path'])

        if action == 'derived':
            Y = derived_solution(X)
            if event.get('out'):
                save_solution(Y, event['out'])
            body = _tables(Y)
        elif action == 'retract':
            Y, projection = retract(X)
            if event.get('out'):
                save_solution(Y, event['out'])
            body = {**_tables(Y), 'projection': projection.tolist()}
        elif action == 'tower':
            body = {'sizes': retract_tower(X, event.get('max_steps'))}
        elif action == 'decompose':
            factor = minimal_factor(X, _element(X, event))
            body = {'element': event['element'], **factor.to_dict()}
        elif action == 'atoms':
            body = {**decomposition_atoms(X).to_dict(), 'delta_f': delta_f(X).to_list()}
        else:
            return {'statusCode': 400, 'body': {'error': f"Unknown action {action!r}"}}

        return {'statusCode': 200, 'body': body}

    except PartialResult as e:
        logger.warning(e.message)
        return {'statusCode': status_code_for(e), 'body': {**e.to_dict(), 'partition': e.partition.to_dict()}}
    except SkewLabError as e:
        logger.info(f"Solution query failed: {e.message}")
        return {'statusCode': status_code_for(e), 'body': e.to_dict()}
    except Exception as e:
        logger.error(f"Error in solution tools: {str(e)}", exc_info=True)
        return {'statusCode': 500, 'body': {'error': str(e)}}
