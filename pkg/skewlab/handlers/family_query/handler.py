"""
Family Query - Exact computations in the closed-form infinite families

Purpose: evaluate one closed-form family exactly, chosen by action
- lambda: λ_g(x)
- theta: θ_(a,b)(x)
- orbit: λ- or θ-orbit of x up to a cap
- member: membership of x in a named subset (ker_lambda, soc, ann, ...)
- check: a registered claim over a finite window
- claims: the claim registry
"""

import json
import logging

from skewlab.shared.errors import ParseError, SkewLabError, status_code_for
from skewlab.shared.families import (
    CLAIM_SETTINGS,
    fam_lambda,
    fam_lambda_orbit,
    fam_membership,
    fam_theta,
    fam_theta_orbit,
    fam_window_check,
    get_family,
    list_claims,
    orbit_to_dict,
)

logger = logging.getLogger(__name__)

ARITY = {'lambda': 2, 'theta': 3, 'orbit': 1, 'member': 2, 'check': 1}


def _args(event, action):
    args = list(event.get('args') or [])
    if len(args) != ARITY[action]:
        raise ParseError(None, f"{action} takes {ARITY[action]} arguments, got {len(args)}")
    return args


def _positive(event, key, default):
    value = event.get(key, default)
    if not isinstance(value, int) or value < 1:
        raise ParseError(None, f"{key} must be a positive integer, got {value!r}")
    return value


def handle(event):
    """
    Answer one family query.

    Args:
        event: {
            'family': 'cdinf' | 'optriv-dinf' | 'rosita' | 'free2',
            'action': 'lambda' | 'theta' | 'orbit' | 'member' | 'check' | 'claims',
            'args': ['3', '7'],
            'kind': 'lambda',        # orbit: lambda or theta
            'cap': 10000,            # orbit
            'radius': 20             # check
        }

    Returns:
        {'statusCode': 200, 'body': {'result': ...}} (orbit, member and check bodies
        carry their own fields)
    """
    try:
        logger.info(f"Input event: {json.dumps(event)}")
        action = event.get('action')

        if action == 'claims':
            return {'statusCode': 200, 'body': {'claims': list_claims()}}
        if action not in ARITY:
            return {'statusCode': 400, 'body': {'error': f"Unknown action {action!r}"}}

        fam = get_family(event.get('family', ''))
        args = _args(event, action)

        if action == 'lambda':
            g, x = (fam.parse(a) for a in args)
            body = {'result': fam.format(fam_lambda(fam, g, x))}
        elif action == 'theta':
            a, b, x = (fam.parse(v) for v in args)
            body = {'result': fam.format(fam_theta(fam, a, b, x))}
        elif action == 'orbit':
            x = fam.parse(args[0])
            cap = _positive(event, 'cap', CLAIM_SETTINGS['orbit_cap'])
            kind = event.get('kind', 'lambda')
            if kind not in ('lambda', 'theta'):
                raise ParseError(None, f"orbit kind must be lambda or theta, got {kind!r}")
            orbit = fam_lambda_orbit(fam, x, cap) if kind == 'lambda' else fam_theta_orbit(fam, x, cap)
            body = {'kind': kind, **orbit_to_dict(fam, orbit)}
        elif action == 'member':
            set_name, text = args
            body = {'set': set_name, 'element': text, 'member': fam_membership(fam, set_name, fam.parse(text))}
        else:
            report = fam_window_check(fam, args[0], _positive(event, 'radius', 20))
            body = report.to_dict()

        body = {'family': fam.name, 'action': action, **body}
        return {'statusCode': 200, 'body': body}

    except SkewLabError as e:
        logger.info(f"Family query failed: {e.message}")
        return {'statusCode': status_code_for(e), 'body': e.to_dict()}
    except Exception as e:
        logger.error(f"Error in family query: {str(e)}", exc_info=True)
        return {'statusCode': 500, 'body': {'error': str(e)}}
