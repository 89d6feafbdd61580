"""
Bound functions of the cone tableau and the cost-sign bookkeeping around them
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .cone import ReadLog, Tableau, TableauError, cost_form
from .exact_core import DimensionError, as_vector, format_rational
from .interval import DomainFlavor

HClass = DomainFlavor


class BoundKind(str, Enum):
    UPPER = "upper"
    LOWER = "lower"
    STRICTLY_POSITIVE_LOWER = "strictly-positive-lower"

    @property
    def is_lower(self) -> bool:
        return self is not BoundKind.UPPER

    def admits(self, kind: "BoundKind") -> bool:
        """Kind filter: LOWER admits strictly positive lower bounds too"""
        if self is BoundKind.LOWER:
            return kind.is_lower
        return kind is self


@dataclass(frozen=True)
class LinearForm:
    """sum_j x[j-1] * x_j + h * h over the original variables 1..n"""
    x: Tuple[Fraction, ...]
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_vector(self.x))
        object.__setattr__(self, "h", Fraction(self.h))

    @property
    def n(self) -> int:
        return len(self.x)

    def coef(self, j: int) -> Fraction:
        return self.x[j - 1]

    def evaluate(self, point: Sequence, h) -> Fraction:
        point = as_vector(point)
        if len(point) != self.n:
            raise DimensionError(f"form over {self.n} variables evaluated at {len(point)} values")
        return sum((a * p for a, p in zip(self.x, point)), Fraction(0)) + self.h * Fraction(h)

    @property
    def hclass(self) -> HClass:
        """B when the form is bounded by (h coefficient) * h on the nonnegative orthant"""
        if all(a <= 0 for a in self.x) and self.h > 0:
            return HClass.B
        return HClass.U

    def substitute(self, j: int, other: "LinearForm") -> "LinearForm":
        """Replace x_j by the form `other`"""
        cj = self.coef(j)
        x = [a + cj * b for a, b in zip(self.x, other.x)]
        x[j - 1] = cj * other.coef(j)
        return LinearForm(tuple(x), self.h + cj * other.h)

    def nonzero(self) -> List[Tuple[int, Fraction]]:
        return [(j, a) for j, a in enumerate(self.x, start=1) if a != 0]

    def render(self, prefix: str = "x") -> str:
        terms = [f"{format_rational(a)}*{prefix}{j}" for j, a in self.nonzero()]
        if self.h != 0 or not terms:
            terms.append(f"{format_rational(self.h)}*h")
        return " + ".join(terms)


@dataclass(frozen=True)
class BoundFunction:
    """x_j <= f (Upper) or x_j >= f (Lower) solved out of tableau row i"""
    source: Tuple[int, int]
    form: LinearForm
    kind: BoundKind

    def __post_init__(self):
        i, j = self.source
        if self.form.coef(j) != 0:
            raise TableauError(f"bound for column {j} references itself")

    @property
    def v(self) -> Tuple[Fraction, ...]:
        return self.form.x

    @property
    def r(self) -> Fraction:
        return self.form.h

    @property
    def hclass(self) -> HClass:
        return self.form.hclass

    @property
    def row(self) -> int:
        return self.source[0]

    @property
    def column(self) -> int:
        return self.source[1]


def _classify(pivot: Fraction, form: LinearForm) -> BoundKind:
    if pivot > 0:
        return BoundKind.UPPER
    if all(a >= 0 for a in form.x) and form.h > 0:
        return BoundKind.STRICTLY_POSITIVE_LOWER
    return BoundKind.LOWER


def make_bound(t: Tableau, i: int, j: int, log: Optional[ReadLog] = None) -> Optional[BoundFunction]:
    """f_ij: row i of the tableau solved for the active column j, or None on a zero pivot"""
    if not t.is_active(j):
        raise TableauError(f"column {j} is not an active variable")
    if not 0 <= i <= t.m:
        raise TableauError(f"row {i} does not generate bounds")
    pivot = t.a(i, j, log)
    if pivot == 0:
        return None
    inv = -1 / pivot
    v = [Fraction(0)] * t.n
    for k in t.remaining:
        if k != j:
            v[k - 1] = inv * t.a(i, k, log)
    form = LinearForm(tuple(v), inv * t.a(i, t.h, log))
    return BoundFunction((i, j), form, _classify(pivot, form))


def enumerate_bounds(t: Tableau, variables: Iterable[int], kind: Optional[BoundKind] = None,
                     log: Optional[ReadLog] = None) -> List[BoundFunction]:
    """All bounds from rows 0..m for the given variables, rows outermost"""
    variables = sorted(set(variables))
    bounds = []
    for i in range(0, t.m + 1):
        for j in variables:
            f = make_bound(t, i, j, log)
            if f is not None and (kind is None or kind.admits(f.kind)):
                bounds.append(f)
    return bounds


def substitute_cost(t: Tableau, f: BoundFunction, log: Optional[ReadLog] = None,
                    cost: Optional[Tuple[Tuple[Fraction, ...], Fraction]] = None) -> LinearForm:
    """f_z,ij: the current cost with x_j replaced by the bound f"""
    c, ch = cost if cost is not None else cost_form(t, log)
    return LinearForm(c, ch).substitute(f.column, f.form)


def exchange_bound(f: BoundFunction, j_new: int) -> BoundFunction:
    """Re-solve the source row of f for another variable it references"""
    i, j = f.source
    pivot = f.form.coef(j_new)
    if pivot == 0:
        raise TableauError(f"bound does not reference column {j_new}")
    x = [-a / pivot for a in f.v]
    x[j - 1] = 1 / pivot
    x[j_new - 1] = Fraction(0)
    form = LinearForm(tuple(x), -f.r / pivot)
    # sign of the new pivot is -sign(old pivot) * sign(pivot)
    old_sign = 1 if f.kind is BoundKind.UPPER else -1
    new_pivot = Fraction(-old_sign) * pivot
    return BoundFunction((i, j_new), form, _classify(new_pivot, form))


@dataclass(frozen=True)
class CostPartition:
    xplus: FrozenSet[int]
    xzero: FrozenSet[int]
    xminus: FrozenSet[int]

    @property
    def all(self) -> FrozenSet[int]:
        return self.xplus | self.xzero | self.xminus


def partition_vars(t: Tableau, log: Optional[ReadLog] = None) -> CostPartition:
    c, _ = cost_form(t, log)
    plus, zero, minus = set(), set(), set()
    for j in t.remaining:
        cj = c[j - 1]
        (plus if cj > 0 else minus if cj < 0 else zero).add(j)
    return CostPartition(frozenset(plus), frozenset(zero), frozenset(minus))


def dominating_set(t: Tableau, log: Optional[ReadLog] = None,
                   bounds: Optional[Sequence[BoundFunction]] = None) -> FrozenSet[int]:
    """Variables with an upper bound and a strictly positive lower bound"""
    if bounds is None:
        bounds = enumerate_bounds(t, t.remaining, log=log)
    dominating = set()
    for j in t.remaining:
        kinds = {f.kind for f in bounds if f.column == j}
        if BoundKind.UPPER in kinds and BoundKind.STRICTLY_POSITIVE_LOWER in kinds:
            dominating.add(j)
    return frozenset(dominating)
