"""
Analyze Brace - Reports, orbits and the associated solution of a brace file

Purpose: answer one question about a brace file, chosen by action
- analyze: the full AnalysisReport
- orbits: λ- and θ-orbits of one element with their stabilizer sizes
- to-solution: the solution r_B, optionally written to a file
"""

import json
import logging

from skewlab.shared.brace import lambda_orbit, stab_lambda, stab_theta_size, theta_orbit
from skewlab.shared.errors import ParseError, SkewLabError, status_code_for
from skewlab.shared.report import report
from skewlab.shared.solutions import brace_to_solution, is_involutive
from skewlab.shared.storage import load_brace, save_solution

logger = logging.getLogger(__name__)


def _orbits(B, element):
    if not isinstance(element, int) or not 0 <= element < B.order:
        raise ParseError(None, f"element must be an index in 0..{B.order - 1}, got {element!r}")
    lam_orbit, th_orbit = lambda_orbit(B, element), theta_orbit(B, element)
    return {
        'element': element,
        'lambda_orbit': lam_orbit.to_list(),
        'theta_orbit': th_orbit.to_list(),
        'lambda_stabilizer': len(stab_lambda(B, element)),
        'theta_stabilizer': stab_theta_size(B, element),
    }


def handle(event):
    """
    Run one brace action.

    Args:
        event: {'action': 'analyze' | 'orbits' | 'to-solution', 'path': ..., 'element': 3, 'out': ...}

    Returns:
        {'statusCode': 200, 'body': {...}}
    """
    try:
        logger.info(f"Input event: {json.dumps(event)}")
        action = event.get('action', 'analyze')
        B = load_brace(event['path'])

        if action == 'analyze':
            body = report(B).to_dict()
        elif action == 'orbits':
            body = _orbits(B, event.get('element'))
        elif action == 'to-solution':
            X = brace_to_solution(B)
            if event.get('out'):
                save_solution(X, event['out'])
            body = {
                'size': X.size,
                'involutive': is_involutive(X),
                'lambda': X.lam.tolist(),
                'rho': X.rho.tolist(),
            }
        else:
            return {'statusCode': 400, 'body': {'error': f"Unknown action {action!r}"}}

        return {'statusCode': 200, 'body': body}

    except SkewLabError as e:
        logger.info(f"Analysis failed: {e.message}")
        return {'statusCode': status_code_for(e), 'body': e.to_dict()}
    except Exception as e:
        logger.error(f"Error analyzing brace: {str(e)}", exc_info=True)
        return {'statusCode': 500, 'body': {'error': str(e)}}
