"""
Runtime configuration for skewlab.

Every cap is read from the environment on each call, so a CLI invocation or a
test can override it without reloading modules:
- SKEWLAB_MAX_ORDER: order cap for group/brace enumeration and catalogs
- SKEWLAB_FACTOR_SEARCH_LIMIT: orbit size searched exactly by minimal_factor
- SKEWLAB_BRUTE_FORCE_LIMIT: size cap for brute-force factor enumeration
- SKEWLAB_AUT_LIMIT: subgroup size cap for automorphism search
- SKEWLAB_SOLUTION_ENUM_LIMIT: size cap for exhaustive solution enumeration
- SKEWLAB_CATALOG_DIR: default catalog directory
- SKEWLAB_LOG_LEVEL: log level installed by the CLI
"""

import os

from skewlab.shared.errors import ParseError

# Defaults (relative to project root)
DEFAULT_MAX_ORDER = 8
DEFAULT_FACTOR_SEARCH_LIMIT = 16
DEFAULT_BRUTE_FORCE_LIMIT = 12
DEFAULT_AUT_LIMIT = 64
DEFAULT_SOLUTION_ENUM_LIMIT = 4
DEFAULT_DATA_DIR = os.path.join(os.path.dirname(__file__), '..', '..', 'data')
DEFAULT_CATALOG_DIR = os.path.join(DEFAULT_DATA_DIR, 'catalog')
DEFAULT_LOG_LEVEL = 'INFO'


def _positive_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(None, f"{name} must be a positive integer, got {raw!r}")
    if value < 1:
        raise ParseError(None, f"{name} must be a positive integer, got {raw!r}")
    return value


def max_order() -> int:
    return _positive_int('SKEWLAB_MAX_ORDER', DEFAULT_MAX_ORDER)


def factor_search_limit() -> int:
    return _positive_int('SKEWLAB_FACTOR_SEARCH_LIMIT', DEFAULT_FACTOR_SEARCH_LIMIT)


def brute_force_limit() -> int:
    return _positive_int('SKEWLAB_BRUTE_FORCE_LIMIT', DEFAULT_BRUTE_FORCE_LIMIT)


def aut_limit() -> int:
    return _positive_int('SKEWLAB_AUT_LIMIT', DEFAULT_AUT_LIMIT)


def solution_enum_limit() -> int:
    return _positive_int('SKEWLAB_SOLUTION_ENUM_LIMIT', DEFAULT_SOLUTION_ENUM_LIMIT)


def catalog_dir() -> str:
    return os.environ.get('SKEWLAB_CATALOG_DIR', DEFAULT_CATALOG_DIR)


def log_level() -> str:
    return os.environ.get('SKEWLAB_LOG_LEVEL', DEFAULT_LOG_LEVEL).upper()
