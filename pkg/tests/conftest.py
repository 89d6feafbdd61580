"""
Shared fixtures: the two worked examples and their printed tableaux
"""
import os
import sys
from fractions import Fraction as F

import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from backend.cone import make_tableau

DATA_DIR = os.path.join(os.path.dirname(__file__), '..', 'data', 'examples')

# ══════════════════════════════════════════════════════════════
# Positive maximum example (resumed after the first substitution)
# ══════════════════════════════════════════════════════════════

POS_A1 = [
    [1, 0, 1, 0, 0, -3500],
    [0, 0, 1, 0, 0, -3500],
    [0, 0, F(1, 10), -1, F(-1, 10), F(-1, 5)],
    [0, 0, -10, -30, 2, 13],
    [0, 0, 0, -6, -3, 4],
]

POS_A2 = [
    [1, 0, 1, 0, 0, -3500],
    [0, 0, 1, 0, 0, -3500],
    [0, 0, F(-2, 5), F(-5, 2), 0, F(9, 20)],
    [0, 0, -5, -15, 0, F(13, 2)],
    [0, 0, -15, -51, 0, F(47, 2)],
]

POS_A3 = [
    [1, 0, 1, 0, 0, -3500],
    [0, 0, 1, 0, 0, -3500],
    [0, 0, F(57, 170), 0, 0, F(-179, 255)],
    [0, 0, F(-10, 17), 0, 0, F(-7, 17)],
    [0, 0, F(5, 17), 0, 0, F(-47, 102)],
]

# ══════════════════════════════════════════════════════════════
# Negative maximum example
# ══════════════════════════════════════════════════════════════

NEG_A = [
    [-2, 3, 0],
    [4, 1, 0],
    [-1, -3, 7],
    [-1, -1, -2],
    [1, -2, -3],
]
NEG_B = [-1, 7, 29, -6, -4]
NEG_C = [-1, 1, -3]

PRIMAL_A0 = [
    [1, 1, -1, 3, 0],
    [0, 1, -1, 3, 0],
    [0, -2, 3, 0, 1],
    [0, 4, 1, 0, -7],
    [0, -1, -3, 7, -29],
    [0, -1, -1, -2, 6],
    [0, 1, -2, -3, 4],
]

PRIMAL_A1 = [
    [1, 0, F(1, 2), 3, F(1, 2)],
    [0, 0, F(1, 2), 3, F(1, 2)],
    [0, 0, F(-3, 2), 0, F(-1, 2)],
    [0, 0, 7, 0, -5],
    [0, 0, F(-9, 2), 7, F(-59, 2)],
    [0, 0, F(-5, 2), -2, F(11, 2)],
    [0, 0, F(-1, 2), -3, F(9, 2)],
]

DUAL_A0 = [
    [1, -1, 7, 29, -6, -4, 0],
    [0, -1, 7, 29, -6, -4, 0],
    [0, 2, -4, 1, 1, -1, -1],
    [0, -3, -1, 3, 1, 2, 1],
    [0, 0, 0, -7, 2, 3, -3],
]

DUAL_A1 = [
    [1, -1, 7, 8, 0, 5, -9],
    [0, -1, 7, 8, 0, 5, -9],
    [0, 2, -4, F(9, 2), 0, F(-5, 2), F(1, 2)],
    [0, -3, -1, F(13, 2), 0, F(1, 2), F(5, 2)],
    [0, 0, 0, F(-7, 2), 0, F(3, 2), F(-3, 2)],
]

DUAL_A2 = [
    [1, 0, 5, F(41, 4), 0, F(15, 4), F(-35, 4)],
    [0, 0, 5, F(41, 4), 0, F(15, 4), F(-35, 4)],
    [0, 0, -2, F(9, 4), 0, F(-5, 4), F(1, 4)],
    [0, 0, -7, F(53, 4), 0, F(-13, 4), F(13, 4)],
    [0, 0, 0, F(-7, 2), 0, F(3, 2), F(-3, 2)],
]

DUAL_A3 = [
    [1, 0, 0, F(138, 7), 0, F(10, 7), F(-45, 7)],
    [0, 0, 0, F(138, 7), 0, F(10, 7), F(-45, 7)],
    [0, 0, 0, F(-43, 28), 0, F(-9, 28), F(-19, 28)],
    [0, 0, 0, F(-53, 28), 0, F(13, 28), F(-13, 28)],
    [0, 0, 0, F(-7, 2), 0, F(3, 2), F(-3, 2)],
]


def grid(rows):
    """Printed rows as a grid of Fractions, for exact comparison with snapshots"""
    return [[F(x) for x in row] for row in rows]


def assert_tableau(t, rows):
    actual = [list(r) for r in t.abar.rows()]
    assert actual == grid(rows)


@pytest.fixture
def pos_state():
    return make_tableau(POS_A1, remaining=(2, 3, 4), step=1)


@pytest.fixture
def neg_problem():
    return NEG_A, NEG_B, NEG_C


@pytest.fixture
def dual_problem():
    from backend.cone import dualize
    return dualize(NEG_A, NEG_B, NEG_C)


@pytest.fixture
def data_dir():
    return DATA_DIR
