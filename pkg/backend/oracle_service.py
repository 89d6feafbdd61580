"""
Reference solver: exact two-phase simplex with Bland's rule, plus certificate checks
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exact_core import DimensionError, as_vector, dot

logger = logging.getLogger(__name__)


class OracleStatus(str, Enum):
    OPTIMAL = "Optimal"
    UNBOUNDED = "Unbounded"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class OracleOutcome:
    status: OracleStatus
    x: Optional[Tuple[Fraction, ...]] = None
    z: Optional[Fraction] = None
    ray: Optional[Tuple[Fraction, ...]] = None
    pivots: int = 0


class _Simplex:
    """Dense tableau: constraint rows first, objective row last, rhs in the last column"""

    def __init__(self, T: np.ndarray, basis: List[int]):
        self.T = T
        self.basis = basis
        self.pivots = 0

    @property
    def m(self) -> int:
        return self.T.shape[0] - 1

    def pivot(self, r: int, col: int) -> None:
        T = self.T
        T[r, :] = T[r, :] / T[r, col]
        for i in range(T.shape[0]):
            if i != r and T[i, col] != 0:
                T[i, :] = T[i, :] - T[i, col] * T[r, :]
        self.basis[r] = col
        self.pivots += 1

    def price_out(self) -> None:
        obj = self.T.shape[0] - 1
        for r, col in enumerate(self.basis):
            if self.T[obj, col] != 0:
                self.T[obj, :] = self.T[obj, :] - self.T[obj, col] * self.T[r, :]

    def run(self, columns: Sequence[int]) -> Optional[int]:
        """Maximize; returns the entering column of an unbounded ray, or None at the optimum"""
        obj = self.T.shape[0] - 1
        while True:
            entering = next((j for j in columns if self.T[obj, j] < 0), None)
            if entering is None:
                return None
            best = None
            for i in range(self.m):
                a = self.T[i, entering]
                if a > 0:
                    ratio = self.T[i, -1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return entering
            self.pivot(best[1], entering)

    def values(self, size: int) -> List[Fraction]:
        x = [Fraction(0)] * size
        for r, col in enumerate(self.basis):
            if col < size:
                x[col] = self.T[r, -1]
        return x


def _check_dims(A, b, c):
    A = [as_vector(row) for row in A]
    b, c = as_vector(b), as_vector(c)
    if len(A) != len(b):
        raise DimensionError(f"A has {len(A)} rows, b has {len(b)} entries")
    if any(len(row) != len(c) for row in A):
        raise DimensionError(f"every row of A needs {len(c)} entries")
    return A, b, c


def simplex_solve(A, b, c) -> OracleOutcome:
    """Exact optimum of max c.x s.t. Ax <= b, x >= 0"""
    A, b, c = _check_dims(A, b, c)
    m, n = len(A), len(c)
    negative = [i for i in range(m) if b[i] < 0]
    art_col = {i: n + m + k for k, i in enumerate(negative)}
    width = n + m + len(negative)

    T = np.empty((m + 1, width + 1), dtype=object)
    T.fill(Fraction(0))
    basis = []
    for i in range(m):
        sign = -1 if i in art_col else 1
        T[i, :n] = [sign * a for a in A[i]]
        T[i, n + i] = Fraction(sign)
        T[i, -1] = sign * b[i]
        if i in art_col:
            T[i, art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(n + i)

    sx = _Simplex(T, basis)
    if negative:
        for col in art_col.values():
            T[m, col] = Fraction(1)
        sx.price_out()
        sx.run(range(width))
        if T[m, -1] < 0:
            logger.debug("phase 1 ended at %s, infeasible", T[m, -1])
            return OracleOutcome(OracleStatus.INFEASIBLE, pivots=sx.pivots)
        artificials = set(art_col.values())
        redundant = []
        for r in range(m):
            if sx.basis[r] in artificials:
                col = next((j for j in range(n + m) if sx.T[r, j] != 0), None)
                if col is None:
                    redundant.append(r)
                else:
                    sx.pivot(r, col)
        keep = [r for r in range(m) if r not in redundant]
        # drop redundant rows and the artificial columns
        sx.T = T[np.ix_(keep + [m], list(range(n + m)) + [width])].copy()
        sx.basis = [sx.basis[r] for r in keep]

    obj = sx.T.shape[0] - 1
    sx.T[obj, :] = Fraction(0)
    sx.T[obj, :n] = [-cj for cj in c]
    sx.price_out()
    entering = sx.run(range(n + m))
    if entering is not None:
        d = [Fraction(0)] * (n + m)
        d[entering] = Fraction(1)
        for r, col in enumerate(sx.basis):
            d[col] = -sx.T[r, entering]
        return OracleOutcome(OracleStatus.UNBOUNDED, ray=tuple(d[:n]), pivots=sx.pivots)
    x = tuple(sx.values(n))
    return OracleOutcome(OracleStatus.OPTIMAL, x=x, z=dot(c, x), pivots=sx.pivots)


def verify_solution(A, b, c, x, z) -> bool:
    """Ax <= b, x >= 0 and c.x = z, exactly"""
    A, b, c = _check_dims(A, b, c)
    x = as_vector(x)
    if len(x) != len(c):
        return False
    if any(xj < 0 for xj in x):
        return False
    if any(dot(row, x) > bi for row, bi in zip(A, b)):
        return False
    return dot(c, x) == Fraction(z)


def verify_ray(A, c, d) -> bool:
    """A d <= 0, d >= 0 and c.d > 0, exactly"""
    d = as_vector(d)
    return (all(dj >= 0 for dj in d)
            and all(dot(as_vector(row), d) <= 0 for row in A)
            and dot(as_vector(c), d) > 0)
