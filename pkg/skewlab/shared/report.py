"""
Analysis reports for finite skew braces.

Collects the sizes of every distinguished subset, the orbit multisets, the
sub skew brace count and the index-equality check into one JSON-ready record.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List

from skewlab.shared.brace import (
    FiniteSkewBrace,
    ann,
    b2_op,
    center_add,
    center_mul,
    commutator_ideal,
    fix,
    is_two_sided,
    ker_lambda,
    orbit_partition,
    soc,
    star_span,
)
from skewlab.shared.errors import ensure
from skewlab.shared.substructures import enumerate_subbraces, index_add, index_mul

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 'skewlab.report/1'


@dataclass
class AnalysisReport:
    order: int
    ker_lambda: int
    fix: int
    center_add: int
    center_mul: int
    soc: int
    ann: int
    b2: int
    b2_op: int
    commutator: int
    two_sided: bool
    lambda_orbit_sizes: List[int] = field(default_factory=list)
    theta_orbit_sizes: List[int] = field(default_factory=list)
    subbrace_count: int = 0
    index_equality_verified: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {'schema': REPORT_SCHEMA, **asdict(self)}


def report(B: FiniteSkewBrace) -> AnalysisReport:
    """Compute every field of the analysis report for B."""
    kernel, socle, annihilator = ker_lambda(B), soc(B), ann(B)
    ensure(socle == kernel & center_add(B), 'report', 'Soc differs from ker λ ∩ Z(B,+)')
    ensure(annihilator <= socle, 'report', 'Ann is not contained in Soc')

    subs = enumerate_subbraces(B)
    index_ok = all(index_add(B, A) == index_mul(B, A) for A in subs)
    if not index_ok:
        logger.warning(f"Additive and multiplicative indices differ in a brace of order {B.order}")

    return AnalysisReport(
        order=B.order,
        ker_lambda=len(kernel),
        fix=len(fix(B)),
        center_add=len(center_add(B)),
        center_mul=len(center_mul(B)),
        soc=len(socle),
        ann=len(annihilator),
        b2=len(star_span(B)),
        b2_op=len(b2_op(B)),
        commutator=len(commutator_ideal(B)),
        two_sided=is_two_sided(B),
        lambda_orbit_sizes=sorted(len(o) for o in orbit_partition(B, 'lambda')),
        theta_orbit_sizes=sorted(len(o) for o in orbit_partition(B, 'theta')),
        subbrace_count=len(subs),
        index_equality_verified=index_ok,
    )
