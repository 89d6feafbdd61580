"""
Stopping and unboundedness tests, candidate sets and the substitution choice
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from .bounds import (
    BoundFunction,
    BoundKind,
    CostPartition,
    HClass,
    LinearForm,
    dominating_set,
    enumerate_bounds,
    partition_vars,
    substitute_cost,
)
from .cone import ReadLog, Tableau, cost_form
from .interval import IntervalError, IntervalMag, linear_image, max_mags, min_mags

logger = logging.getLogger(__name__)

CLASS_ORDER: Tuple[Tuple[HClass, HClass], ...] = (
    (HClass.B, HClass.B),
    (HClass.B, HClass.U),
    (HClass.U, HClass.B),
    (HClass.U, HClass.U),
)


class CandidateKind(str, Enum):
    UPPER = "upper"
    LOWER = "lower"
    LOWER_RELAXED = "lower-relaxed"

    @property
    def is_lower(self) -> bool:
        return self is not CandidateKind.UPPER


@dataclass(frozen=True)
class Candidate:
    pair: Tuple[int, int]
    fz: LinearForm
    fb: BoundFunction

    @property
    def classes(self) -> Tuple[HClass, HClass]:
        return self.fz.hclass, self.fb.hclass


@dataclass(frozen=True)
class SelectionResult:
    chosen: Tuple[int, int]
    fz_star: LinearForm
    fb_star: BoundFunction
    tt: Tuple[HClass, HClass]
    tau: IntervalMag
    tie_stage: Optional[str] = None
    second: Optional[IntervalMag] = None
    first_ties: Tuple[Tuple[int, int], ...] = ()
    final_ties: Tuple[Tuple[int, int], ...] = ()


class CandidateSet(NamedTuple):
    kind: Optional[CandidateKind]
    candidates: List[Candidate]
    partition: CostPartition
    dominating: FrozenSet[int]
    fallthrough: bool = False


def _column_nonpositive(t: Tableau, j: int, log: Optional[ReadLog]) -> bool:
    return all(x <= 0 for x in t.column(j, log=log))


def check_stop(t: Tableau, log: Optional[ReadLog] = None) -> bool:
    """No positive cost coefficient left and the h column over rows 0..m is <= 0"""
    if partition_vars(t, log).xplus:
        return False
    return _column_nonpositive(t, t.h, log)


def check_unbounded(t: Tableau, log: Optional[ReadLog] = None) -> bool:
    """Some variable with nonzero cost has no upper bound at all"""
    part = partition_vars(t, log)
    for j in sorted(part.xplus | part.xminus):
        if _column_nonpositive(t, j, log):
            logger.debug("%s has no upper bound", t.label(j))
            return True
    return False


def _candidates(t: Tableau, bounds: Sequence[BoundFunction], cost) -> List[Candidate]:
    return [Candidate(f.source, substitute_cost(t, f, cost=cost), f) for f in bounds]


def candidate_sets(t: Tableau, log: Optional[ReadLog] = None) -> CandidateSet:
    """
    Maximal candidate sets.

    With dominating variables D: upper bounds over (x+ | x0) & D, else
    strictly positive lower bounds over (x0 | x-) & D. Without D (or when
    both are empty): upper bounds over x+ | x0, else strictly positive lower
    bounds over x0 | x-, else plain lower bounds over x0 | x-.

    Bounds of every active variable are read once and filtered per set.
    """
    if not t.remaining:
        raise ValueError("no active variables left")
    part = partition_vars(t, log)
    cost = cost_form(t, log)
    every = enumerate_bounds(t, t.remaining, log=log)
    dominating = dominating_set(t, bounds=every)
    upper_vars = part.xplus | part.xzero
    lower_vars = part.xzero | part.xminus
    fallthrough = False

    def pick(variables, kind: BoundKind) -> List[Candidate]:
        return _candidates(t, [f for f in every if f.column in variables and kind.admits(f.kind)], cost)

    if dominating:
        ups = pick(upper_vars & dominating, BoundKind.UPPER)
        if ups:
            return CandidateSet(CandidateKind.UPPER, ups, part, dominating)
        lows = pick(lower_vars & dominating, BoundKind.STRICTLY_POSITIVE_LOWER)
        if lows:
            return CandidateSet(CandidateKind.LOWER, lows, part, dominating)
        logger.warning("dominating variables %s yield no candidates, using the full partition",
                       [t.label(j) for j in sorted(dominating)])
        fallthrough = True

    ups = pick(upper_vars, BoundKind.UPPER)
    if ups:
        return CandidateSet(CandidateKind.UPPER, ups, part, dominating, fallthrough)
    lows = pick(lower_vars, BoundKind.STRICTLY_POSITIVE_LOWER)
    if lows:
        return CandidateSet(CandidateKind.LOWER, lows, part, dominating, fallthrough)
    lows = pick(lower_vars, BoundKind.LOWER)
    if lows:
        return CandidateSet(CandidateKind.LOWER_RELAXED, lows, part, dominating, fallthrough)
    return CandidateSet(None, [], part, dominating, fallthrough)


def b_filter(cands: Sequence[Candidate], ch: Fraction) -> List[Candidate]:
    """Keep candidates whose f_z stays below ch * h on the nonnegative orthant"""
    ch = Fraction(ch)
    # for all x, h >= 0: any positive x coefficient drops the candidate even when its h part is within ch
    return [c for c in cands if all(a <= 0 for a in c.fz.x) and c.fz.h <= ch]



def select_pair(cands: Sequence[Candidate]) -> SelectionResult:
    """
    Pick (i*, j*) among candidates of one kind.

    First the class pair (hclass of f_z, hclass of f_b) in order BB, BU, UB, UU.
    Within it the smallest image of f_z wins; ties go to the image of f_b
    (smallest for upper bounds, greatest for lower bounds), then to the
    lexicographically smallest pair.
    """
    if not cands:
        raise IntervalError("no candidates to select from")
    upper = all(c.fb.kind is BoundKind.UPPER for c in cands)
    if not upper and any(c.fb.kind is BoundKind.UPPER for c in cands):
        raise ValueError("candidates mix upper and lower bounds")

    tt = next(pair for pair in CLASS_ORDER if any(c.classes == pair for c in cands))
    klass = {c.pair: c for c in cands if c.classes == tt}

    tau, keys = min_mags([(p, linear_image(c.fz.x, c.fz.h, tt[0])) for p, c in klass.items()])
    first_ties = tuple(sorted(keys))
    tie_stage, second = None, None
    if len(keys) > 1:
        family = [(p, linear_image(klass[p].fb.v, klass[p].fb.r, tt[1])) for p in first_ties]
        second, keys = (min_mags if upper else max_mags)(family)
        tie_stage = "second-stage"
    final_ties = tuple(sorted(keys))
    chosen = final_ties[0]
    winner = klass[chosen]
    return SelectionResult(chosen, winner.fz, winner.fb, tt, tau, tie_stage, second,
                           first_ties, final_ties)
