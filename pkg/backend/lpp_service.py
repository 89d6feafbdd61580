"""
Top-level LP procedure: primal positive-maximum search, then the dual on h = 0
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from .cone import dualize
from .exact_core import as_vector
from .oracle_service import OracleStatus, simplex_solve
from .pmrp_service import PmrpOutcome, PmrpStatus, pmrp_solve

logger = logging.getLogger(__name__)

METHOD_FAIL_REASONS = ("no-candidates", "cap-overrun", "exhausted")


class LppStatus(str, Enum):
    POSITIVE_MAX = "PositiveMax"
    NEGATIVE_MAX = "NegativeMax"
    NO_MAXIMUM = "NoMaximum"
    UNBOUNDED = "Unbounded"
    METHOD_FAIL = "MethodFail"


@dataclass
class LppOutcome:
    kind: LppStatus
    primal: PmrpOutcome
    dual: Optional[PmrpOutcome] = None
    z: Optional[Fraction] = None
    x: Optional[Tuple[Fraction, ...]] = None
    dual_y: Optional[Tuple[Fraction, ...]] = None
    primal_witness: Optional[Tuple[Fraction, ...]] = None
    flags: List[str] = field(default_factory=list)

    @property
    def has_value(self) -> bool:
        return self.kind in (LppStatus.POSITIVE_MAX, LppStatus.NEGATIVE_MAX)


def _vector(outcome: PmrpOutcome, size: int, h_value: Fraction) -> Tuple[Fraction, ...]:
    values = outcome.values_at(h_value)
    return tuple(values.get(j, Fraction(0)) for j in range(1, size + 1))


def lpp_solve(A, b, c, h_value=1, primal_witness: bool = False) -> LppOutcome:
    """
    Solve max c.x s.t. Ax <= b, x >= 0.

    A positive maximum comes from the primal search; otherwise the dual
    search on (-A^T, -c, -b) yields the negative maximum z = -z'.
    """
    A = [as_vector(row) for row in A]
    b, c = as_vector(b), as_vector(c)
    h = Fraction(h_value)
    if h <= 0:
        raise ValueError("h must be a positive rational")
    n = len(c)

    primal = pmrp_solve(A, b, c, "x")
    if primal.status is PmrpStatus.MAX_FOUND:
        return LppOutcome(LppStatus.POSITIVE_MAX, primal, z=primal.zcoef * h, x=_vector(primal, n, h))
    if primal.status is PmrpStatus.UNBOUNDED:
        return LppOutcome(LppStatus.UNBOUNDED, primal)

    At, b_dual, c_dual = dualize(A, b, c)
    dual = pmrp_solve(At, b_dual, c_dual, "y")
    outcome = LppOutcome(LppStatus.NO_MAXIMUM, primal, dual)
    if primal.reason in METHOD_FAIL_REASONS:
        outcome.flags.append(f"primal-{primal.reason}")

    if dual.status is PmrpStatus.MAX_FOUND:
        outcome.kind = LppStatus.NEGATIVE_MAX
        outcome.z = -dual.zcoef * h
        outcome.dual_y = _vector(dual, len(b), h)
        if primal_witness:
            oracle = simplex_solve(A, [bi * h for bi in b], c)
            if oracle.status is OracleStatus.OPTIMAL:
                outcome.primal_witness = oracle.x
                outcome.flags.append("primal-witness-oracle-derived")
    elif dual.status is PmrpStatus.UNBOUNDED:
        outcome.flags.append("dual-unbounded")
        logger.warning("dual search is unbounded, reporting no maximum")
    elif dual.reason in METHOD_FAIL_REASONS:
        outcome.kind = LppStatus.METHOD_FAIL
        outcome.flags.append(f"dual-{dual.reason}")
    return outcome
