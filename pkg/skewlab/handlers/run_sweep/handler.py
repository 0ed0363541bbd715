"""
Run Sweep - Execute a named acceptance suite

Purpose: run one suite, or all of them, and report each SweepResult
- brace suites take max_order, randomized suites take seed
- a suite with failures answers 422 so the CLI exits non-zero
"""

import json
import logging

from skewlab.shared.errors import ParseError, SkewLabError, status_code_for
from skewlab.shared.sweeps import SUITES, run_sweep

logger = logging.getLogger(__name__)


def handle(event):
    """
    Run the requested suites.

    Args:
        event: {
            'suite': 'index' | ... | 'all',
            'max_order': 8,          # brace suites, optional
            'seed': 0                # randomized suites, optional
        }

    Returns:
        {
            'statusCode': 200,
            'body': {'passed': True, 'results': [SweepResult.to_dict(), ...]}
        }
    """
    try:
        logger.info(f"Input event: {json.dumps(event)}")
        suite = event.get('suite', 'all')
        if suite != 'all' and suite not in SUITES:
            raise ParseError(None, f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")

        results = run_sweep(suite, max_order=event.get('max_order'), seed=event.get('seed'))
        passed = all(r.passed for r in results)
        if not passed:
            failing = [r.suite for r in results if not r.passed]
            logger.warning(f"Sweep failures in {', '.join(failing)}")

        body = {'passed': passed, 'results': [r.to_dict() for r in results]}
        return {'statusCode': 200 if passed else 422, 'body': body}

    except SkewLabError as e:
        logger.info(f"Sweep aborted: {e.message}")
        return {'statusCode': status_code_for(e), 'body': e.to_dict()}
    except Exception as e:
        logger.error(f"Error running sweep: {str(e)}", exc_info=True)
        return {'statusCode': 500, 'body': {'error': str(e)}}
