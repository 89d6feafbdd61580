"""
Exact rational arithmetic: scalars, extended scalars and dense matrices
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class ExactArithmeticError(ArithmeticError):
    """Raised for undefined extended operations (inf - inf, 0 * inf)"""


class DimensionError(ValueError):
    """Raised when matrix/vector shapes do not agree"""


# ══════════════════════════════════════════════════════════════
# Scalars
# ══════════════════════════════════════════════════════════════

def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse "p/q" or "p" (optional leading minus) into a Fraction"""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise ValueError(f"not a rational: {text!r}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: Fraction) -> str:
    """Inverse of parse_rational"""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ExtendedRational:
    """A rational or one of the two infinities; exactly one of value/inf is meaningful"""
    value: Optional[Fraction] = None
    inf: int = 0  # +1, -1 or 0 (finite)

    def __post_init__(self):
        if self.inf not in (-1, 0, 1):
            raise ValueError("inf must be -1, 0 or 1")
        if self.inf == 0 and self.value is None:
            raise ValueError("finite ExtendedRational needs a value")
        if self.inf != 0 and self.value is not None:
            raise ValueError("infinite ExtendedRational carries no value")
        if self.value is not None and not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def of(cls, q) -> "ExtendedRational":
        return cls(value=Fraction(q))

    @property
    def is_finite(self) -> bool:
        return self.inf == 0

    def finite(self) -> Fraction:
        if not self.is_finite:
            raise ExactArithmeticError("finite value required")
        return self.value

    def __neg__(self) -> "ExtendedRational":
        return ext_neg(self)

    def __add__(self, other) -> "ExtendedRational":
        return ext_add(self, _ext(other))

    def __radd__(self, other) -> "ExtendedRational":
        return ext_add(_ext(other), self)

    def __sub__(self, other) -> "ExtendedRational":
        return ext_add(self, ext_neg(_ext(other)))

    def __mul__(self, other) -> "ExtendedRational":
        return ext_mul(self, _ext(other))

    def __rmul__(self, other) -> "ExtendedRational":
        return ext_mul(_ext(other), self)

    def __lt__(self, other) -> bool:
        return ext_compare(self, _ext(other)) < 0

    def __le__(self, other) -> bool:
        return ext_compare(self, _ext(other)) <= 0

    def __gt__(self, other) -> bool:
        return ext_compare(self, _ext(other)) > 0

    def __ge__(self, other) -> bool:
        return ext_compare(self, _ext(other)) >= 0

    def __str__(self) -> str:
        if self.inf:
            return "+inf" if self.inf > 0 else "-inf"
        return format_rational(self.value)


POS_INF = ExtendedRational(inf=1)
NEG_INF = ExtendedRational(inf=-1)
ZERO = ExtendedRational.of(0)


def _ext(x) -> ExtendedRational:
    if isinstance(x, ExtendedRational):
        return x
    return ExtendedRational.of(x)


def ext_compare(a: ExtendedRational, b: ExtendedRational) -> int:
    """Total order -inf < finite < +inf; returns -1, 0 or 1"""
    a, b = _ext(a), _ext(b)
    if a.inf or b.inf:
        return (a.inf > b.inf) - (a.inf < b.inf)
    return (a.value > b.value) - (a.value < b.value)


def ext_neg(a: ExtendedRational) -> ExtendedRational:
    if a.inf:
        return ExtendedRational(inf=-a.inf)
    return ExtendedRational.of(-a.value)


def ext_add(a: ExtendedRational, b: ExtendedRational) -> ExtendedRational:
    if a.inf and b.inf and a.inf != b.inf:
        raise ExactArithmeticError("inf - inf is undefined")
    if a.inf or b.inf:
        return ExtendedRational(inf=a.inf or b.inf)
    return ExtendedRational.of(a.value + b.value)


def ext_mul(a: ExtendedRational, b: ExtendedRational) -> ExtendedRational:
    if a.inf or b.inf:
        other = b if a.inf else a
        sign_inf = a.inf or b.inf
        if other.inf:
            return ExtendedRational(inf=a.inf * b.inf)
        if other.value == 0:
            raise ExactArithmeticError("0 * inf is undefined")
        return ExtendedRational(inf=sign_inf if other.value > 0 else -sign_inf)
    return ExtendedRational.of(a.value * b.value)


def ext_abs(a: ExtendedRational) -> ExtendedRational:
    if a.inf:
        return POS_INF
    return ExtendedRational.of(abs(a.value))


# ══════════════════════════════════════════════════════════════
# Vectors
# ══════════════════════════════════════════════════════════════

def as_vector(values: Iterable) -> Tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


def l1_norm(v: Sequence) -> Fraction:
    """Sum of absolute values of a finite rational vector"""
    total = Fraction(0)
    for x in v:
        if isinstance(x, ExtendedRational):
            x = x.finite()
        total += abs(Fraction(x))
    return total


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"dot of length {len(u)} and {len(v)}")
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


# ══════════════════════════════════════════════════════════════
# Matrices
# ══════════════════════════════════════════════════════════════

def _frac_grid(rows: Sequence[Sequence]) -> np.ndarray:
    rows = [list(r) for r in rows]
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise DimensionError("ragged matrix rows")
    grid = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            grid[i, j] = parse_rational(x)
    return grid


class RatMatrix:
    """
    Dense matrix of Fractions backed by a numpy object array.

    Row and column labels are optional; when given they map bijectively
    onto the index ranges.
    """

    def __init__(self, entries: np.ndarray,
                 row_labels: Optional[Sequence] = None,
                 col_labels: Optional[Sequence] = None):
        if entries.ndim != 2:
            raise DimensionError("RatMatrix needs a 2-d array")
        self.entries = entries
        rows, cols = entries.shape
        self.row_labels = tuple(row_labels) if row_labels is not None else tuple(range(rows))
        self.col_labels = tuple(col_labels) if col_labels is not None else tuple(range(cols))
        if len(self.row_labels) != rows or len(set(self.row_labels)) != rows:
            raise DimensionError("row labels must be distinct and match the row count")
        if len(self.col_labels) != cols or len(set(self.col_labels)) != cols:
            raise DimensionError("column labels must be distinct and match the column count")
        self._row_index = {label: i for i, label in enumerate(self.row_labels)}
        self._col_index = {label: j for j, label in enumerate(self.col_labels)}

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], row_labels=None, col_labels=None) -> "RatMatrix":
        return cls(_frac_grid(rows), row_labels, col_labels)

    @classmethod
    def zeros(cls, rows: int, cols: int, row_labels=None, col_labels=None) -> "RatMatrix":
        grid = np.empty((rows, cols), dtype=object)
        grid.fill(Fraction(0))
        return cls(grid, row_labels, col_labels)

    @classmethod
    def identity(cls, size: int, labels=None) -> "RatMatrix":
        ident = cls.zeros(size, size, labels, labels)
        for k in range(size):
            ident.entries[k, k] = Fraction(1)
        return ident

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def at(self, row_label, col_label) -> Fraction:
        return self.entries[self._row_index[row_label], self._col_index[col_label]]

    def row(self, row_label) -> Tuple[Fraction, ...]:
        return tuple(self.entries[self._row_index[row_label], :])

    def column(self, col_label) -> Tuple[Fraction, ...]:
        return tuple(self.entries[:, self._col_index[col_label]])

    def rows(self):
        return [tuple(r) for r in self.entries]

    def copy(self) -> "RatMatrix":
        return RatMatrix(self.entries.copy(), self.row_labels, self.col_labels)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.entries.T.copy(), self.col_labels, self.row_labels)

    def neg(self) -> "RatMatrix":
        return RatMatrix(-self.entries, self.row_labels, self.col_labels)

    def add(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix(self.entries + other.entries, self.row_labels, self.col_labels)

    def relabel(self, row_labels=None, col_labels=None) -> "RatMatrix":
        return RatMatrix(self.entries,
                         row_labels if row_labels is not None else self.row_labels,
                         col_labels if col_labels is not None else self.col_labels)

    def to_strings(self):
        """JSON-friendly grid of "p/q" strings"""
        return [[format_rational(x) for x in row] for row in self.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix) or self.shape != other.shape:
            return False
        return bool(np.all(self.entries == other.entries))

    def __repr__(self) -> str:
        return f"RatMatrix({self.to_strings()})"


class OpCount:
    """Scalar multiplications performed by mat_mul"""

    def __init__(self):
        self.mults = 0


def mat_mul(a: RatMatrix, b: RatMatrix, count: Optional[OpCount] = None) -> RatMatrix:
    """
    Exact product; result labels are (rows of a, columns of b).

    Rows are accumulated as a_ik * b[k, :] over the nonzero a_ik only, and
    `count` receives the number of scalar multiplications done.
    """
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    product = np.empty((a.shape[0], b.shape[1]), dtype=object)
    product.fill(Fraction(0))
    mults = 0
    for i in range(a.shape[0]):
        for k in range(a.shape[1]):
            aik = a.entries[i, k]
            if aik != 0:
                product[i, :] = product[i, :] + b.entries[k, :] * aik
                mults += b.shape[1]
    if count is not None:
        count.mults += mults
    return RatMatrix(product, a.row_labels, b.col_labels)



def mat_vec(a: RatMatrix, v: Sequence) -> Tuple[Fraction, ...]:
    if a.shape[1] != len(v):
        raise DimensionError(f"cannot apply {a.shape} to a vector of length {len(v)}")
    return tuple(dot(row, v) for row in a.entries)
