"""
File formats and catalog persistence.

Provides deterministic JSON for:
- braces: {"order": n, "add": [[...]], "mul": [[...]], "names": [...]}
- solutions: {"size": n, "lambda": [[...]], "rho": [[...]]}

and a catalog directory holding one brace file per entry plus a catalog.csv
index read back with pandas.
"""

import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from skewlab.shared import config
from skewlab.shared.brace import FiniteSkewBrace, validate_brace
from skewlab.shared.elementset import ElementSet
from skewlab.shared.errors import ParseError
from skewlab.shared.groups import find_identity
from skewlab.shared.solutions import FiniteSolution, validate_solution

logger = logging.getLogger(__name__)

CATALOG_COLUMNS = [
    'order', 'key', 'file', 'add_group', 'ker_lambda', 'fix', 'soc', 'ann', 'b2', 'two_sided', 'subbraces',
]


@dataclass
class BraceDocument:
    """A loaded brace file: the brace, optional element names and the applied relabeling."""

    brace: FiniteSkewBrace
    names: Optional[List[str]]
    relabeling: List[int]


# =============================================================================
# Reading
# =============================================================================

def _read_json(path: str) -> Dict[str, Any]:
    try:
        with open(path) as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ParseError(None, f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, e.msg)
    if not isinstance(data, dict):
        raise ParseError(1, 'top level must be a JSON object')
    return data


def _table(data: Dict[str, Any], key: str, n: int) -> np.ndarray:
    if key not in data:
        raise ParseError(None, f"missing key {key!r}")
    rows = data[key]
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(None, f"{key!r} must have {n} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(None, f"{key!r} row {i} must have {n} entries")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise ParseError(None, f"{key!r} row {i} must contain integers")
    return np.array(rows, dtype=np.int64)


def _size(data: Dict[str, Any], key: str) -> int:
    n = data.get(key)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(None, f"{key!r} must be a positive integer")
    return n


def _relabel(table: np.ndarray, new_of_old: np.ndarray) -> np.ndarray:
    out = np.empty_like(table)
    out[new_of_old[:, None], new_of_old[None, :]] = new_of_old[table]
    return out


def read_brace(path: str) -> BraceDocument:
    """
    Load a brace file, moving the additive identity to index 0 when needed.

    Raises:
        ParseError: malformed JSON or tables of the wrong size
        ValidationError: tables that are not a skew brace
    """
    data = _read_json(path)
    n = _size(data, 'order')
    add = _table(data, 'add', n)
    mul = _table(data, 'mul', n)
    names = data.get('names')
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise ParseError(None, f"'names' must list {n} strings")

    relabeling = np.arange(n)
    if add.min() >= 0 and add.max() < n:
        e = find_identity(add)
        if e not in (None, 0):
            relabeling[[0, e]] = relabeling[[e, 0]]
            add, mul = _relabel(add, relabeling), _relabel(mul, relabeling)
            if names is not None:
                names[0], names[e] = names[e], names[0]
            logger.info(f"Relabeled additive identity {e} to 0 in {path}")
    brace = validate_brace(add, mul)
    return BraceDocument(brace=brace, names=names, relabeling=relabeling.tolist())


def load_brace(path: str) -> FiniteSkewBrace:
    return read_brace(path).brace


def parse_elements(value, n: int) -> ElementSet:
    """
    Element list from '0,2,5' or a sequence of integers.

    Raises:
        ParseError: non-integer entries or indices outside 0..n-1
    """
    if isinstance(value, str):
        parts = [p for p in value.replace(' ', '').split(',') if p]
    else:
        parts = list(value or [])
    try:
        members = [int(p) for p in parts]
    except (TypeError, ValueError):
        raise ParseError(None, f"element list must contain integers: {value!r}")
    outside = [m for m in members if not 0 <= m < n]
    if outside:
        raise ParseError(None, f"elements {outside} outside 0..{n - 1}")
    return ElementSet.from_iterable(n, members)


def load_solution(path: str) -> FiniteSolution:
    data = _read_json(path)
    n = _size(data, 'size')
    return validate_solution(_table(data, 'lambda', n), _table(data, 'rho', n))


# =============================================================================
# Writing
# =============================================================================

def _format_table(rows: np.ndarray) -> str:
    lines = ',\n'.join('    [' + ', '.join(str(int(v)) for v in row) + ']' for row in rows)
    return '[\n' + lines + '\n  ]'


def _write(path: str, fields: Sequence) -> None:
    body = ',\n'.join(f'  "{key}": {value}' for key, value in fields)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w') as f:
        f.write('{\n' + body + '\n}\n')


def dumps_names(names: Sequence[str]) -> str:
    return json.dumps(list(names), ensure_ascii=False)


def save_brace(B: FiniteSkewBrace, path: str, names: Optional[Sequence[str]] = None) -> None:
    fields = [('order', B.order), ('add', _format_table(B.add.table)), ('mul', _format_table(B.mul.table))]
    if names is not None:
        fields.append(('names', dumps_names(names)))
    _write(path, fields)
    logger.info(f"Wrote brace of order {B.order} to {path}")


def save_solution(X: FiniteSolution, path: str) -> None:
    _write(path, [('size', X.size), ('lambda', _format_table(X.lam)), ('rho', _format_table(X.rho))])
    logger.info(f"Wrote solution of size {X.size} to {path}")


# =============================================================================
# Catalog
# =============================================================================

class CatalogStorage:
    """
    Manages a catalog directory.

    Each brace is one JSON file; catalog.csv indexes them with their key and
    the headline report values.
    """

    def __init__(self, directory=None):
        """
        Initialize storage adapter.

        Args:
            directory: catalog directory (default SKEWLAB_CATALOG_DIR)
        """
        self.directory = directory or config.catalog_dir()
        self.index_path = os.path.join(self.directory, 'catalog.csv')
        self._ensure_directory()

    def _ensure_directory(self):
        if not os.path.isdir(self.directory):
            os.makedirs(self.directory, exist_ok=True)
            logger.info(f"Created catalog directory at {self.directory}")

    def write_catalog(self, entries) -> pd.DataFrame:
        """
        Write every entry and the index, replacing any previous catalog.

        Args:
            entries: BraceCatalogEntry list in catalog order

        Returns:
            the index as a DataFrame
        """
        rows = []
        counters: Dict[int, int] = {}
        for entry in entries:
            counters[entry.order] = counters.get(entry.order, 0) + 1
            filename = f"brace_{entry.order:02d}_{counters[entry.order]:03d}.json"
            save_brace(entry.brace, os.path.join(self.directory, filename))
            r = entry.report
            rows.append({
                'order': entry.order,
                'key': entry.canonical_key.hex(),
                'file': filename,
                'add_group': entry.add_group,
                'ker_lambda': r.ker_lambda,
                'fix': r.fix,
                'soc': r.soc,
                'ann': r.ann,
                'b2': r.b2,
                'two_sided': r.two_sided,
                'subbraces': r.subbrace_count,
            })
        df = pd.DataFrame(rows, columns=CATALOG_COLUMNS)
        df.to_csv(self.index_path, index=False)
        logger.info(f"Wrote catalog index with {len(df)} entries to {self.index_path}")
        return df

    def read_index(self) -> pd.DataFrame:
        """
        Read catalog.csv.

        Returns:
            DataFrame with CATALOG_COLUMNS, empty when no catalog was written
        """
        if not os.path.exists(self.index_path):
            return pd.DataFrame(columns=CATALOG_COLUMNS)
        df = pd.read_csv(self.index_path, dtype={'key': str, 'file': str, 'add_group': str})
        if not df.empty:
            df['two_sided'] = df['two_sided'].astype(bool)
        return df

    def load_braces(self, order: Optional[int] = None) -> List[FiniteSkewBrace]:
        df = self.read_index()
        if order is not None:
            df = df[df['order'] == order]
        return [load_brace(os.path.join(self.directory, f)) for f in df['file']]
