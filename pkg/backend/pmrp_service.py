"""
Positive-maximum search: the case-dispatch loop, the equality ledger and backward substitution
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .bounds import CostPartition, LinearForm, partition_vars
from .cone import (
    ReadLog,
    Tableau,
    apply_substitution,
    cost_form,
    homogenize,
    sweep,
    update_cost,
)
from .config import CELL_READ_FACTOR
from .exact_core import OpCount
from .selector import (
    CandidateKind,
    SelectionResult,
    b_filter,
    candidate_sets,
    check_stop,
    check_unbounded,
    select_pair,
)

logger = logging.getLogger(__name__)


class LedgerError(RuntimeError):
    """The equality ledger is not triangular"""


# ══════════════════════════════════════════════════════════════
# Equality ledger
# ══════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class Substitution:
    """x_j = form(x, h), recorded when x_j is eliminated"""
    j: int
    form: LinearForm
    source: Tuple[int, int]


@dataclass(frozen=True)
class ForcedZero:
    j: int


@dataclass(frozen=True)
class CostClose:
    """z = form(x, h); the x part vanishes once forced zeros are resolved"""
    form: LinearForm


LedgerEntry = Union[Substitution, ForcedZero, CostClose]


class EqualityLedger:
    """Substitutions and forced zeros in elimination order, closed by the cost equation"""

    def __init__(self, entries: Sequence[LedgerEntry] = ()):
        self.entries: List[LedgerEntry] = []
        for entry in entries:
            self.add(entry)

    @property
    def variables(self) -> List[int]:
        return [e.j for e in self.entries if not isinstance(e, CostClose)]

    @property
    def closed(self) -> bool:
        return any(isinstance(e, CostClose) for e in self.entries)

    def add(self, entry: LedgerEntry) -> None:
        if self.closed:
            raise LedgerError("ledger already closed by the cost equation")
        if not isinstance(entry, CostClose) and entry.j in self.variables:
            raise LedgerError(f"variable {entry.j} already in the ledger")
        self.entries.append(entry)

    def copy(self) -> "EqualityLedger":
        return EqualityLedger(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def backward_substitute(ledger: EqualityLedger, h_value=1) -> Dict[Union[int, str], Fraction]:
    """
    Resolve the ledger last-to-first at a given h.

    Returns exact values keyed by variable index, plus "z" when the ledger is closed.
    """
    h = Fraction(h_value)
    values: Dict[Union[int, str], Fraction] = {}

    def resolve(form: LinearForm) -> Fraction:
        total = form.h * h
        for k, a in form.nonzero():
            if k not in values:
                raise LedgerError(f"x{k} is referenced before it is resolved")
            total += a * values[k]
        return total

    for entry in reversed([e for e in ledger.entries if not isinstance(e, CostClose)]):
        if isinstance(entry, ForcedZero):
            values[entry.j] = Fraction(0)
        else:
            values[entry.j] = resolve(entry.form)
    for entry in ledger.entries:
        if isinstance(entry, CostClose):
            values["z"] = resolve(entry.form)
    return values


# ══════════════════════════════════════════════════════════════
# Outcome types
# ══════════════════════════════════════════════════════════════

class CaseLabel(str, Enum):
    H_ZERO = "0"
    UPPER_POSITIVE = "1.1"
    LOWER_POSITIVE = "1.2"
    STOP = "2.1"
    UPPER_NONPOSITIVE = "2.2.1"
    LOWER_NONPOSITIVE = "2.2.2"
    FALLTHROUGH = "fallthrough"
    UNBOUNDED = "unbounded"


class PmrpStatus(str, Enum):
    MAX_FOUND = "MaxFound"
    H_ZERO = "HZero"
    UNBOUNDED = "Unbounded"


@dataclass
class StepRecord:
    k: int
    case: CaseLabel
    partition: CostPartition
    tableau: Tableau
    candidates: List[Tuple[int, int]] = field(default_factory=list)
    candidate_kind: Optional[CandidateKind] = None
    selection: Optional[SelectionResult] = None
    produced: Optional[Tableau] = None
    forced: List[int] = field(default_factory=list)
    counters: Dict[str, int] = field(default_factory=dict)
    flags: List[str] = field(default_factory=list)


@dataclass
class PmrpOutcome:
    status: PmrpStatus
    trace: List[StepRecord]
    ledger: EqualityLedger
    final: Tableau
    reason: Optional[str] = None
    zcoef: Optional[Fraction] = None
    assignment: Dict[int, Fraction] = field(default_factory=dict)

    @property
    def steps(self) -> int:
        """Number of substitutions performed"""
        return sum(1 for record in self.trace if record.selection is not None)

    def values_at(self, h_value=1) -> Dict[int, Fraction]:
        h = Fraction(h_value)
        return {j: coef * h for j, coef in self.assignment.items()}


# ══════════════════════════════════════════════════════════════
# Driver
# ══════════════════════════════════════════════════════════════

def _case(xplus_empty: bool, kind: CandidateKind) -> CaseLabel:
    if xplus_empty:
        return CaseLabel.UPPER_NONPOSITIVE if kind is CandidateKind.UPPER else CaseLabel.LOWER_NONPOSITIVE
    return CaseLabel.UPPER_POSITIVE if kind is CandidateKind.UPPER else CaseLabel.LOWER_POSITIVE


def run_pmrp(tableau: Tableau, ledger: Optional[EqualityLedger] = None,
             cell_read_factor: int = CELL_READ_FACTOR) -> PmrpOutcome:
    """
    Run the positive-maximum loop from any tableau state.

    Each iteration sweeps, tests for h = 0, unboundedness and the stopping
    condition, then picks one substitution and applies it. Reads of the
    tests and of candidate generation are logged separately; only the
    candidate phase is held to `cell_read_factor * (m+2)(n+2)`, and the
    update to the dense product count.
    """
    t = tableau
    ledger = ledger.copy() if ledger is not None else EqualityLedger()
    trace: List[StepRecord] = []
    cap = len(t.remaining)
    budget = cell_read_factor * (t.m + 2) * (t.n + 2)
    substitutions = 0

    def finish(status, record, reason=None, **kwargs) -> PmrpOutcome:
        trace.append(record)
        logger.info("pmrp finished with %s%s after %d substitutions", status.value,
                    f" ({reason})" if reason else "", substitutions)
        return PmrpOutcome(status, trace, ledger, record.tableau, reason, **kwargs)

    while True:
        swept = sweep(t)
        t = swept.tableau
        for j in swept.forced:
            ledger.add(ForcedZero(j))
        checks = ReadLog()
        part = partition_vars(t, checks)
        record = StepRecord(t.step, CaseLabel.H_ZERO, part, t, forced=list(swept.forced))
        record.counters = {"check_reads": 0, "cells_read": 0, "distinct_cells": 0,
                           "bounds_built": 0, "update_mults": 0}
        if swept.rounds > 2:
            record.flags.append(f"sweep-fixpoint-rounds={swept.rounds}")

        if swept.h_forced:
            return finish(PmrpStatus.H_ZERO, record, "forced-zero")

        if check_unbounded(t, checks):
            record.case = CaseLabel.UNBOUNDED
            record.counters["check_reads"] = len(checks)
            return finish(PmrpStatus.UNBOUNDED, record)

        stop = not part.xplus and check_stop(t, checks)
        record.counters["check_reads"] = len(checks)
        if stop:
            record.case = CaseLabel.STOP
            for j in sorted(part.xzero | part.xminus):
                ledger.add(ForcedZero(j))
            c, ch = cost_form(t)
            ledger.add(CostClose(LinearForm(c, ch)))
            values = backward_substitute(ledger, 1)
            zcoef = values.pop("z")
            return finish(PmrpStatus.MAX_FOUND, record, zcoef=zcoef, assignment=values)

        if not t.remaining:
            # forced zeros can empty the active set before n substitutions
            reason = "cap-overrun" if substitutions and substitutions >= cap else "exhausted"
            record.flags.append(reason)
            logger.warning("no active variable left at step %d without a stop (%s)", t.step, reason)
            return finish(PmrpStatus.H_ZERO, record, reason)

        log = ReadLog()
        cs = candidate_sets(t, log)
        record.candidate_kind = cs.kind
        record.counters["bounds_built"] = len(cs.candidates)
        if cs.kind is None:
            record.counters.update(cells_read=len(log), distinct_cells=log.distinct)
            return finish(PmrpStatus.H_ZERO, record, "no-candidates")

        record.case = _case(not part.xplus, cs.kind)
        if cs.fallthrough:
            record.flags.append(f"dominating-fallthrough:{record.case.value}")
            record.case = CaseLabel.FALLTHROUGH
        cands = cs.candidates
        if not part.xplus and cs.kind.is_lower:
            cands = b_filter(cands, t.ch)
            if len(cands) < len(cs.candidates):
                record.flags.append(f"b-filter-dropped={len(cs.candidates) - len(cands)}")
        record.candidates = [c.pair for c in cands]
        record.counters.update(cells_read=len(log), distinct_cells=log.distinct)
        if len(log) > budget:
            record.flags.append("cell-read-budget-exceeded")
            logger.warning("step %d read %d cells, budget %d", t.step, len(log), budget)
        if not cands:
            return finish(PmrpStatus.H_ZERO, record, "b-filter-empty")

        selection = select_pair(cands)
        i_star, j_star = selection.chosen
        logger.debug("step %d case %s: substitute %s from row %d", t.step, record.case.value,
                     t.label(j_star), i_star)
        ledger.add(Substitution(j_star, selection.fb_star.form, selection.chosen))
        count = OpCount()
        produced = apply_substitution(t, i_star, j_star, selection.fb_star, count)
        substitutions += 1
        record.selection = selection
        record.produced = produced
        record.counters["update_mults"] = count.mults
        if count.mults > update_cost(t):
            record.flags.append("update-budget-exceeded")
            logger.warning("step %d update took %d multiplications, bound %d", t.step, count.mults,
                           update_cost(t))
        trace.append(record)
        t = produced



def pmrp_solve(A, b, c, var_prefix: str = "x") -> PmrpOutcome:
    """Positive-maximum search on max c.x s.t. Ax <= b, x >= 0"""
    return run_pmrp(homogenize(A, b, c, var_prefix))
