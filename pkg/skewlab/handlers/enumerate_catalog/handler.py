"""
Enumerate Catalog - Build the catalog of skew braces up to a given order

Purpose: enumerate groups, every brace on each group and write the catalog
- groups of each order up to isomorphism
- braces by the direct search, the λ search, or both cross-checked
- one JSON file per brace plus catalog.csv
"""

import json
import logging
from collections import Counter

from skewlab.shared import config
from skewlab.shared.enumeration import STRATEGIES, build_catalog
from skewlab.shared.errors import ParseError, SkewLabError, status_code_for
from skewlab.shared.storage import CatalogStorage

logger = logging.getLogger(__name__)


def handle(event):
    """
    Build and store the catalog.

    Args:
        event: {
            'max_order': 6,
            'strategy': 'both',
            'out': 'data/catalog'     # optional, default SKEWLAB_CATALOG_DIR
        }

    Returns:
        {
            'statusCode': 200,
            'body': {'entries': 47, 'per_order': {...}, 'directory': ...}
        }
    """
    try:
        logger.info(f"Input event: {json.dumps(event)}")
        max_order = event.get('max_order', config.max_order())
        strategy = event.get('strategy', 'both')
        if strategy not in STRATEGIES:
            raise ParseError(None, f"strategy must be one of {', '.join(STRATEGIES)}")

        entries = build_catalog(int(max_order), strategy)
        storage = CatalogStorage(event.get('out'))
        index = storage.write_catalog(entries)

        per_order = Counter(e.order for e in entries)
        body = {
            'entries': len(entries),
            'per_order': {str(n): per_order[n] for n in sorted(per_order)},
            'directory': storage.directory,
            'index': index.to_dict(orient='records'),
        }
        return {'statusCode': 200, 'body': body}

    except SkewLabError as e:
        logger.info(f"Catalog build failed: {e.message}")
        return {'statusCode': status_code_for(e), 'body': e.to_dict()}
    except Exception as e:
        logger.error(f"Error building catalog: {str(e)}", exc_info=True)
        return {'statusCode': 500, 'body': {'error': str(e)}}
