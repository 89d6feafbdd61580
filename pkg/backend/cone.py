"""
Homogenized cone tableau: construction, dual data, zero sweeps and substitution update
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import TYPE_CHECKING, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .exact_core import DimensionError, OpCount, RatMatrix, as_vector, mat_mul

if TYPE_CHECKING:
    from .bounds import BoundFunction

logger = logging.getLogger(__name__)


class TableauError(ValueError):
    """Malformed tableau state or an invalid substitution request"""


class ReadLog:
    """Tableau cells read during one phase of a step, counted with multiplicity"""

    def __init__(self):
        self.reads = 0
        self.cells: Set[Tuple[int, int]] = set()

    def touch(self, i: int, j: int) -> None:
        self.reads += 1
        self.cells.add((i, j))

    def touch_row(self, i: int, width: int) -> None:
        self.reads += width
        self.cells.update((i, j) for j in range(width))

    @property
    def distinct(self) -> int:
        return len(self.cells)

    def __len__(self) -> int:
        return self.reads



def column_labels(n: int, prefix: str = "x") -> Tuple[str, ...]:
    return ("z",) + tuple(f"{prefix}{j}" for j in range(1, n + 1)) + ("h",)


@dataclass(frozen=True)
class Tableau:
    """
    The cone matrix Abar of the positive-maximum problem.

    Rows are labelled -1..m, columns 0..n+1 stand for z, x_1..x_n, h.
    Row -1 is z - cost <= 0, row 0 is -cost <= 0, rows 1..m are Ax - bh <= 0.
    """
    abar: RatMatrix
    remaining: Tuple[int, ...]
    m: int
    n: int
    step: int = 0
    var_prefix: str = "x"

    def __post_init__(self):
        if self.abar.shape != (self.m + 2, self.n + 2):
            raise TableauError(f"tableau shape {self.abar.shape} does not match m={self.m}, n={self.n}")
        object.__setattr__(self, "remaining", tuple(sorted(self.remaining)))
        if any(not 1 <= j <= self.n for j in self.remaining):
            raise TableauError("remaining variables must lie in 1..n")

    @property
    def h(self) -> int:
        """Column index of the homogenization variable"""
        return self.n + 1

    @property
    def width(self) -> int:
        return self.n + 2

    @property
    def ch(self) -> Fraction:
        return -self.a(-1, self.h)

    def a(self, i: int, j: int, log: Optional[ReadLog] = None) -> Fraction:
        if log is not None:
            log.touch(i, j)
        return self.abar.entries[i + 1, j]

    def row(self, i: int, log: Optional[ReadLog] = None) -> Tuple[Fraction, ...]:
        if log is not None:
            log.touch_row(i, self.width)
        return tuple(self.abar.entries[i + 1, :])

    def column(self, j: int, rows: Optional[Iterable[int]] = None,
               log: Optional[ReadLog] = None) -> Tuple[Fraction, ...]:
        rows = range(0, self.m + 1) if rows is None else rows
        return tuple(self.a(i, j, log) for i in rows)

    def label(self, j: int) -> str:
        return self.abar.col_labels[j]

    def is_active(self, j: int) -> bool:
        return j in self.remaining

    def snapshot(self):
        return self.abar.to_strings()


def make_tableau(rows: Sequence[Sequence], remaining: Iterable[int], step: int = 0,
                 var_prefix: str = "x") -> Tableau:
    """Build a tableau state directly from its printed rows (-1..m)"""
    m = len(rows) - 2
    n = len(rows[0]) - 2
    abar = RatMatrix.from_rows(rows, range(-1, m + 1), column_labels(n, var_prefix))
    return Tableau(abar, tuple(remaining), m, n, step, var_prefix)


def homogenize(A: Sequence[Sequence], b: Sequence, c: Sequence, var_prefix: str = "x") -> Tableau:
    """Cone tableau of max c.x s.t. Ax <= b, x >= 0, with c_h = 0"""
    A = [as_vector(row) for row in A]
    b, c = as_vector(b), as_vector(c)
    m, n = len(A), len(c)
    if len(b) != m:
        raise DimensionError(f"b has {len(b)} entries for {m} rows")
    if any(len(row) != n for row in A):
        raise DimensionError(f"every row of A needs {n} entries")
    zero = Fraction(0)
    cost_row = [-cj for cj in c] + [zero]
    rows = [[Fraction(1)] + cost_row, [zero] + cost_row]
    rows += [[zero] + list(A[i]) + [-b[i]] for i in range(m)]
    return make_tableau(rows, range(1, n + 1), 0, var_prefix)


def dualize(A: Sequence[Sequence], b: Sequence, c: Sequence):
    """(A, b, c) -> (-A^T, -c, -b)"""
    A = [as_vector(row) for row in A]
    b, c = as_vector(b), as_vector(c)
    m, n = len(A), len(c)
    At = [[-A[i][j] for i in range(m)] for j in range(n)]
    return At, tuple(-x for x in c), tuple(-x for x in b)


# ══════════════════════════════════════════════════════════════
# Zero sweeps
# ══════════════════════════════════════════════════════════════

def set_row_to_zero(t: Tableau) -> Tableau:
    """Replace every row 0..m whose entries are all <= 0 by the zero row"""
    entries = t.abar.entries.copy()
    changed = False
    for i in range(0, t.m + 1):
        row = entries[i + 1, :]
        if all(x <= 0 for x in row) and any(x != 0 for x in row):
            entries[i + 1, :] = Fraction(0)
            changed = True
    if not changed:
        return t
    return replace(t, abar=RatMatrix(entries, t.abar.row_labels, t.abar.col_labels))


def check_nul_var(t: Tableau) -> FrozenSet[int]:
    """Columns forced to zero by a row 0..m that is >= 0 with a positive entry there"""
    forced: Set[int] = set()
    for i in range(0, t.m + 1):
        row = t.row(i)
        if all(x >= 0 for x in row):
            forced.update(j for j, x in enumerate(row) if x > 0)
    return frozenset(forced)


def zero_columns(t: Tableau, columns: Iterable[int]) -> Tableau:
    columns = set(columns)
    entries = t.abar.entries.copy()
    for j in columns:
        entries[:, j] = Fraction(0)
    remaining = tuple(j for j in t.remaining if j not in columns)
    return replace(t, abar=RatMatrix(entries, t.abar.row_labels, t.abar.col_labels),
                   remaining=remaining)


@dataclass
class SweepResult:
    tableau: Tableau
    forced: List[int] = field(default_factory=list)
    h_forced: bool = False
    rounds: int = 0


def sweep(t: Tableau) -> SweepResult:
    """set_row_to_zero then check_nul_var, repeated until nothing changes"""
    result = SweepResult(t)
    while True:
        result.rounds += 1
        current = set_row_to_zero(result.tableau)
        forced = check_nul_var(current)
        result.tableau = current
        if t.h in forced:
            result.h_forced = True
            logger.debug("check_nul_var forced h = 0 at step %d", t.step)
            return result
        fresh = sorted(j for j in forced if current.is_active(j))
        if not fresh:
            return result
        logger.debug("check_nul_var forced %s to zero", [current.label(j) for j in fresh])
        result.forced.extend(fresh)
        result.tableau = zero_columns(current, fresh)


# ══════════════════════════════════════════════════════════════
# Substitution update
# ══════════════════════════════════════════════════════════════

def transition_matrix(t: Tableau, j_star: int, f: "BoundFunction") -> RatMatrix:
    """Identity with row j* replaced by (0, v, r)"""
    labels = t.abar.col_labels
    T = RatMatrix.identity(t.width, labels)
    T.entries[j_star, :] = [Fraction(0)] + list(f.v) + [f.r]
    return T


def correction_matrix(t: Tableau, i_star: int, f: "BoundFunction") -> RatMatrix:
    """Zero matrix except row i* = -(0, v, r), which encodes x_j* >= 0"""
    tau = RatMatrix.zeros(t.m + 2, t.width, t.abar.row_labels, t.abar.col_labels)
    tau.entries[i_star + 1, :] = [Fraction(0)] + [-x for x in f.v] + [-f.r]
    return tau


def update_cost(t: Tableau) -> int:
    """Multiplications of the dense update product, the bound for a counted update"""
    return (t.m + 2) * t.width * t.width


def apply_substitution(t: Tableau, i_star: int, j_star: int, f: "BoundFunction",
                       count: Optional[OpCount] = None) -> Tableau:
    """
    Abar^[k+1] = Abar^[k] T + tau for the substitution x_j* = f(x, h).

    The result is the raw product; zero sweeps are left to the caller.
    """
    if not t.is_active(j_star):
        raise TableauError(f"column {j_star} is not an active variable")
    if tuple(f.source) != (i_star, j_star):
        raise TableauError(f"bound sourced at {f.source} used for pivot {(i_star, j_star)}")
    if not 0 <= i_star <= t.m:
        raise TableauError(f"row {i_star} cannot source a substitution")
    if len(f.v) != t.n or f.v[j_star - 1] != 0:
        raise TableauError("bound coefficients do not fit the tableau")
    product = mat_mul(t.abar, transition_matrix(t, j_star, f), count)
    new_abar = product.add(correction_matrix(t, i_star, f))
    remaining = tuple(j for j in t.remaining if j != j_star)
    return replace(t, abar=new_abar, remaining=remaining, step=t.step + 1)


def evaluate_rows(t: Tableau, w: Sequence) -> Tuple[Fraction, ...]:
    """Abar . w for a point w = (z, x_1..x_n, h)"""
    w = as_vector(w)
    if len(w) != t.width:
        raise DimensionError(f"point has {len(w)} coordinates, tableau has {t.width} columns")
    return tuple(sum((a * x for a, x in zip(row, w)), Fraction(0)) for row in t.abar.entries)


def cost_form(t: Tableau, log: Optional[ReadLog] = None) -> Tuple[Tuple[Fraction, ...], Fraction]:
    """Current (c, c_h), read from row -1"""
    row = t.row(-1, log)
    return tuple(-x for x in row[1:t.h]), -row[t.h]
