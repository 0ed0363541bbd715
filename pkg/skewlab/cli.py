"""
Command-line interface.

Every command builds a handler event, calls the handler and prints its body,
as JSON with --json or as indented key/value text otherwise. Status codes map
onto exit codes: 0 success, 1 validation or precondition failure, 2 parse
failure, 3 resource cap exceeded.
"""

import json
import logging
from typing import Any, Dict, Optional

import click

from skewlab.handlers.analyze_brace import handler as analyze_brace
from skewlab.handlers.enumerate_catalog import handler as enumerate_catalog
from skewlab.handlers.family_query import handler as family_query
from skewlab.handlers.run_sweep import handler as run_sweep
from skewlab.handlers.solution_tools import handler as solution_tools
from skewlab.handlers.substructure_tools import handler as substructure_tools
from skewlab.handlers.validate_input import handler as validate_input
from skewlab.shared import config
from skewlab.shared.enumeration import STRATEGIES
from skewlab.shared.errors import SkewLabError
from skewlab.shared.families import FAMILIES
from skewlab.shared.sweeps import SUITES

logger = logging.getLogger(__name__)

EXIT_CODES = {200: 0, 400: 2, 413: 3, 422: 1, 500: 1}

json_option = click.option('--json', 'as_json', is_flag=True, help='Print the result as JSON')
brace_file = click.argument('path', type=click.Path(dir_okay=False))


def _jsonable(value: Any) -> Any:
    if hasattr(value, 'item'):
        return value.item()
    return str(value)


def _echo_text(value: Any, indent: int = 0) -> None:
    pad = '  ' * indent
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item and not _flat(item):
                click.echo(f"{pad}{key}:")
                _echo_text(item, indent + 1)
            else:
                click.echo(f"{pad}{key}: {_inline(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                click.echo(f"{pad}-")
                _echo_text(item, indent + 1)
            else:
                click.echo(f"{pad}- {_inline(item)}")
    else:
        click.echo(f"{pad}{_inline(value)}")


def _flat(item) -> bool:
    return isinstance(item, list) and all(not isinstance(v, (dict, list)) for v in item)


def _inline(item) -> str:
    if isinstance(item, list):
        return '[' + ', '.join(str(_inline(v)) for v in item) + ']'
    if isinstance(item, bool):
        return 'yes' if item else 'no'
    return str(item)


def _finish(response: Dict[str, Any], as_json: bool) -> None:
    status = response['statusCode']
    body = response['body']
    if as_json:
        click.echo(json.dumps(body, indent=2, default=_jsonable, ensure_ascii=False))
    elif status == 200:
        _echo_text(body)
    else:
        message = body.get('message') or body.get('error') or f"failed with status {status}"
        click.echo(click.style(f"Error: {message}", fg='red'), err=True)
        if body.get('witness'):
            click.echo(f"  witness: {json.dumps(body['witness'], default=_jsonable, ensure_ascii=False)}", err=True)
        if 'partition' in body:
            _echo_text({'partition': body['partition']})
        if body.get('failure_count') or body.get('results'):
            _echo_text(body)
    raise SystemExit(EXIT_CODES.get(status, 1))


def _configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=(level or config.log_level()).upper(),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )


@click.group()
@click.option('--log-level', default=None, help='Log level (default SKEWLAB_LOG_LEVEL or INFO)')
def cli(log_level: Optional[str]):
    """skewlab - finite skew braces and set-theoretic Yang-Baxter solutions."""
    try:
        _configure_logging(log_level)
    except (SkewLabError, ValueError) as e:
        click.echo(click.style(f"Error: {e}", fg='red'), err=True)
        raise SystemExit(2)


# =============================================================================
# Braces
# =============================================================================

@cli.command()
@click.argument('kind', type=click.Choice(['brace', 'solution']))
@brace_file
@json_option
def validate(kind, path, as_json):
    """Check every axiom of a brace or solution file."""
    _finish(validate_input.handle({'action': kind, 'path': path}), as_json)


@cli.command()
@brace_file
@json_option
def analyze(path, as_json):
    """Full analysis report of a brace."""
    _finish(analyze_brace.handle({'action': 'analyze', 'path': path}), as_json)


@cli.command()
@brace_file
@click.option('--element', '-e', type=int, required=True, help='Element index')
@json_option
def orbits(path, element, as_json):
    """λ- and θ-orbits of one element."""
    _finish(analyze_brace.handle({'action': 'orbits', 'path': path, 'element': element}), as_json)


@cli.command('to-solution')
@brace_file
@click.option('--out', '-o', type=click.Path(dir_okay=False), default=None, help='Write the solution file')
@json_option
def to_solution(path, out, as_json):
    """The solution r_B associated with a brace."""
    _finish(analyze_brace.handle({'action': 'to-solution', 'path': path, 'out': out}), as_json)


@cli.command()
@brace_file
@json_option
def subbraces(path, as_json):
    """Every sub skew brace with its ideal flags."""
    _finish(substructure_tools.handle({'action': 'subbraces', 'path': path}), as_json)


@cli.command()
@brace_file
@click.option('--sub', required=True, help='Members of the sub skew brace, e.g. 0,1,2')
@json_option
def index(path, sub, as_json):
    """Additive and multiplicative index of a sub skew brace."""
    _finish(substructure_tools.handle({'action': 'index', 'path': path, 'sub': sub}), as_json)


@cli.command()
@brace_file
@click.option('--sub', required=True, help='Members of the sub skew brace, e.g. 0,1,2')
@click.option('--seed', type=int, default=None, help='Use random coset representatives')
@json_option
def sli(path, sub, seed, as_json):
    """A strong left ideal inside a sub skew brace."""
    _finish(substructure_tools.handle({'action': 'sli', 'path': path, 'sub': sub, 'seed': seed}), as_json)


@cli.command()
@brace_file
@click.option('--elements', required=True, help='Finite set X, e.g. 3,4')
@json_option
def dietzmann(path, elements, as_json):
    """Dietzmann closure of X next to the strong left ideal it generates."""
    _finish(substructure_tools.handle({'action': 'dietzmann', 'path': path, 'elements': elements}), as_json)


@cli.command()
@brace_file
@click.option('--generators', default=None, help='Additive generators (default: a minimal set)')
@json_option
def bounds(path, generators, as_json):
    """Quantitative bound checks."""
    event = {'action': 'bounds', 'path': path, 'generators': generators}
    _finish(substructure_tools.handle(event), as_json)


@cli.command()
@brace_file
@click.option('--seed', type=int, default=None, help='Use random coset representatives')
@json_option
def b2(path, seed, as_json):
    """B² from star products of coset representatives."""
    _finish(substructure_tools.handle({'action': 'b2', 'path': path, 'seed': seed}), as_json)


# =============================================================================
# Solutions
# =============================================================================

@cli.command()
@click.argument('action', type=click.Choice(['derived', 'retract', 'tower', 'decompose', 'atoms']))
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--element', '-e', type=int, default=None, help='Element for decompose')
@click.option('--max-steps', type=int, default=None, help='Cap on retract iterations')
@click.option('--out', '-o', type=click.Path(dir_okay=False), default=None, help='Write derived or retract')
@json_option
def solution(action, path, element, max_steps, out, as_json):
    """Derived solution, retracts and decomposition factors."""
    if action == 'decompose' and element is None:
        raise click.UsageError('decompose needs --element')
    event = {'action': action, 'path': path, 'element': element, 'max_steps': max_steps, 'out': out}
    _finish(solution_tools.handle(event), as_json)


# =============================================================================
# Enumeration, families and sweeps
# =============================================================================

@cli.command('enumerate')
@click.option('--max-order', type=int, default=None, help='Largest order (default SKEWLAB_MAX_ORDER)')
@click.option('--out', '-o', type=click.Path(file_okay=False), default=None, help='Catalog directory')
@click.option('--strategy', type=click.Choice(STRATEGIES), default='both')
@json_option
def enumerate_catalog_command(max_order, out, strategy, as_json):
    """Build the catalog of skew braces up to an order."""
    event = {'strategy': strategy, 'out': out}
    if max_order is not None:
        event['max_order'] = max_order
    _finish(enumerate_catalog.handle(event), as_json)


@cli.command(context_settings={'ignore_unknown_options': True})
@click.argument('name', type=click.Choice(sorted(FAMILIES)))
@click.argument('action', type=click.Choice(['lambda', 'theta', 'orbit', 'member', 'check']))
@click.argument('args', nargs=-1, type=click.UNPROCESSED)
@click.option('--kind', type=click.Choice(['lambda', 'theta']), default='lambda', help='Orbit kind')
@click.option('--cap', type=int, default=None, help='Orbit size cap')
@click.option('--radius', type=int, default=20, help='Window radius for check')
@json_option
def family(name, action, args, kind, cap, radius, as_json):
    """
    Exact computations in a closed-form family.

    \b
    lambda G X        λ_G(X)
    theta A B X       θ_(A,B)(X)
    orbit X           orbit up to --cap
    member SET X      membership in ker_lambda, fix, soc, ann, lambda_f, ...
    check CLAIM       a registered claim (see `claims`) up to --radius
    """
    event = {'family': name, 'action': action, 'args': list(args), 'kind': kind, 'radius': radius}
    if cap is not None:
        event['cap'] = cap
    _finish(family_query.handle(event), as_json)


@cli.command()
@json_option
def claims(as_json):
    """List the registered family claims."""
    _finish(family_query.handle({'action': 'claims'}), as_json)


@cli.command()
@click.argument('suite', type=click.Choice(sorted(SUITES) + ['all']))
@click.option('--max-order', type=int, default=None, help='Largest brace order swept (default 8)')
@click.option('--seed', type=int, default=None)
@json_option
def sweep(suite, max_order, seed, as_json):
    """Run a named acceptance suite."""
    _finish(run_sweep.handle({'suite': suite, 'max_order': max_order, 'seed': seed}), as_json)


def main():
    cli(prog_name='skewlab')


if __name__ == '__main__':
    main()
