"""
Validate Input - Load a brace or solution file and run every axiom check

Purpose: report whether a file describes a valid structure
- brace: Latin squares, associativity, shared identity, skew distributivity,
  λ homomorphism and λ automorphism
- solution: non-degeneracy, bijectivity of r and the braid relation
"""

import json
import logging

from skewlab.shared.errors import SkewLabError, status_code_for
from skewlab.shared.solutions import is_involutive
from skewlab.shared.storage import load_solution, read_brace

logger = logging.getLogger(__name__)


def handle(event):
    """
    Validate one input file.

    Args:
        event: {
            'action': 'brace' | 'solution',
            'path': 'data/optriv_s3.json'
        }

    Returns:
        {
            'statusCode': 200,
            'body': {'valid': True, 'kind': 'brace', 'order': 6, ...}
        }
    """
    try:
        logger.info(f"Input event: {json.dumps(event)}")
        action = event.get('action', 'brace')
        path = event['path']

        if action == 'brace':
            document = read_brace(path)
            body = {
                'valid': True,
                'kind': 'brace',
                'order': document.brace.order,
                'relabeling': document.relabeling,
            }
        elif action == 'solution':
            X = load_solution(path)
            body = {'valid': True, 'kind': 'solution', 'size': X.size, 'involutive': is_involutive(X)}
        else:
            return {'statusCode': 400, 'body': {'error': f"Unknown action {action!r}"}}

        logger.info(f"{path} is a valid {action}")
        return {'statusCode': 200, 'body': body}

    except SkewLabError as e:
        logger.info(f"Validation of {event.get('path')} failed: {e.message}")
        return {'statusCode': status_code_for(e), 'body': {'valid': False, **e.to_dict()}}
    except Exception as e:
        logger.error(f"Error validating input: {str(e)}", exc_info=True)
        return {'statusCode': 500, 'body': {'error': str(e)}}
