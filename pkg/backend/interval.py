"""
Symmetric lambda-interval arithmetic used to rank candidate substitutions
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Hashable, Iterable, Sequence, Set, Tuple

from .exact_core import (
    ExtendedRational,
    ext_add,
    ext_compare,
    ext_mul,
    l1_norm,
)


class IntervalError(ValueError):
    """Invalid interval or empty interval family"""


class DomainFlavor(str, Enum):
    """B pins every remaining x to [0,0]; U lets every coordinate range over [-l, l]"""
    B = "B"
    U = "U"


@dataclass(frozen=True)
class IntervalMag:
    """The interval [-v*lambda, v*lambda], stored by its magnitude v >= 0"""
    magnitude: ExtendedRational

    def __post_init__(self):
        if not isinstance(self.magnitude, ExtendedRational):
            object.__setattr__(self, "magnitude", ExtendedRational.of(self.magnitude))
        if ext_compare(self.magnitude, ExtendedRational.of(0)) < 0:
            raise IntervalError("magnitude must be nonnegative")

    def __add__(self, other: "IntervalMag") -> "IntervalMag":
        return IntervalMag(ext_add(self.magnitude, other.magnitude))

    def contains(self, other: "IntervalMag") -> bool:
        """Inclusion of symmetric intervals is magnitude order"""
        return ext_compare(other.magnitude, self.magnitude) <= 0

    def __str__(self) -> str:
        return f"[-{self.magnitude}l, {self.magnitude}l]"


Endpoints = Tuple[ExtendedRational, ExtendedRational]


def _check(endpoints: Endpoints) -> Endpoints:
    lo, hi = (e if isinstance(e, ExtendedRational) else ExtendedRational.of(e) for e in endpoints)
    if ext_compare(lo, hi) > 0:
        raise IntervalError(f"invalid interval [{lo}, {hi}]")
    return lo, hi


def general_scale(endpoints: Endpoints, alpha) -> Endpoints:
    """alpha * [u, v]; endpoints swap when alpha < 0"""
    lo, hi = _check(endpoints)
    a = ExtendedRational.of(alpha)
    if alpha >= 0:
        return ext_mul(a, lo), ext_mul(a, hi)
    return ext_mul(a, hi), ext_mul(a, lo)


def general_add(first: Endpoints, second: Endpoints) -> Endpoints:
    lo1, hi1 = _check(first)
    lo2, hi2 = _check(second)
    return ext_add(lo1, lo2), ext_add(hi1, hi2)


def linear_combination(terms: Iterable[Tuple[Fraction, Endpoints]]) -> Endpoints:
    """Image of sum(alpha_j * x_j) with each x_j ranging over its own interval"""
    total: Endpoints = (ExtendedRational.of(0), ExtendedRational.of(0))
    for alpha, endpoints in terms:
        total = general_add(total, general_scale(endpoints, alpha))
    return total


def linear_image(x_coeffs: Sequence[Fraction], h_coeff: Fraction, flavor: DomainFlavor) -> IntervalMag:
    """
    Magnitude of the image of (x, h) -> a.x + b h over the flavored box.

    Flavor U: every coordinate in [-l, l], so the image is (|a|_1 + |b|) l.
    Flavor B: x pinned to 0, so only |b| l remains.
    """
    h_part = abs(Fraction(h_coeff))
    if DomainFlavor(flavor) is DomainFlavor.B:
        return IntervalMag(ExtendedRational.of(h_part))
    return IntervalMag(ExtendedRational.of(l1_norm(x_coeffs) + h_part))


def corner_image(x_coeffs: Sequence[Fraction], h_coeff: Fraction,
                 flavor: DomainFlavor, lam: Fraction = Fraction(1)) -> Tuple[Fraction, Fraction]:
    """Brute-force [min, max] of the form over the corners of the box at a numeric lambda"""
    x_ranges = [(Fraction(0),) if DomainFlavor(flavor) is DomainFlavor.B else (-lam, lam)
                for _ in x_coeffs]
    values = []
    for corner in itertools.product(*x_ranges, (-lam, lam)):
        *xs, h = corner
        values.append(sum((a * x for a, x in zip(x_coeffs, xs)), Fraction(0)) + h_coeff * h)
    return min(values), max(values)


def _extreme(family: Sequence[Tuple[Hashable, IntervalMag]], sign: int) -> Tuple[IntervalMag, Set]:
    if not family:
        raise IntervalError("empty interval family")
    best = family[0][1]
    for _, mag in family[1:]:
        if sign * ext_compare(mag.magnitude, best.magnitude) < 0:
            best = mag
    keys = {key for key, mag in family if ext_compare(mag.magnitude, best.magnitude) == 0}
    return best, keys


def min_mags(family: Sequence[Tuple[Hashable, IntervalMag]]) -> Tuple[IntervalMag, Set]:
    """Smallest magnitude and every key attaining it"""
    return _extreme(list(family), 1)


def max_mags(family: Sequence[Tuple[Hashable, IntervalMag]]) -> Tuple[IntervalMag, Set]:
    """Greatest magnitude and every key attaining it"""
    return _extreme(list(family), -1)

