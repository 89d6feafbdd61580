import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from backend.bounds import (
    BoundKind,
    HClass,
    LinearForm,
    dominating_set,
    enumerate_bounds,
    exchange_bound,
    make_bound,
    partition_vars,
    substitute_cost,
)
from backend.cone import ReadLog, TableauError, dualize, homogenize, make_tableau
from conftest import NEG_A, NEG_B, NEG_C, POS_A2


def random_fraction(rng, bound=9):
    return F(rng.randint(-bound, bound), rng.randint(1, 5))


def test_upper_bound_positive_example(pos_state):
    f = make_bound(pos_state, 2, 4)
    assert f.kind is BoundKind.UPPER
    assert f.v == (0, 5, 15, 0)
    assert f.r == F(-13, 2)
    assert f.hclass is HClass.U


def test_strictly_positive_lower_bound_primal_example():
    t = homogenize(NEG_A, NEG_B, NEG_C)
    f = make_bound(t, 1, 1)
    assert f.kind is BoundKind.STRICTLY_POSITIVE_LOWER
    assert f.v == (0, F(3, 2), 0)
    assert f.r == F(1, 2)


def test_isolated_positive_coefficient():
    t = make_tableau([[1, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0]], remaining=(1, 2))
    f = make_bound(t, 1, 1)
    assert f.kind is BoundKind.UPPER
    assert f.v == (0, 0) and f.r == 0


def test_zero_pivot_and_inactive_column(pos_state):
    assert make_bound(pos_state, 3, 2) is None
    with pytest.raises(TableauError):
        make_bound(pos_state, 1, 1)
    with pytest.raises(TableauError):
        make_bound(pos_state, -1, 2)


def test_enumerate_lower_bounds_positive_example():
    t = make_tableau(POS_A2, remaining=(2, 3), step=2)
    bounds = enumerate_bounds(t, {2, 3}, BoundKind.LOWER)
    assert [f.source for f in bounds] == [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]
    assert enumerate_bounds(t, {3}, BoundKind.UPPER) == []


def test_enumerate_upper_bounds_dual_example():
    t = homogenize(*dualize(NEG_A, NEG_B, NEG_C), var_prefix="y")
    bounds = enumerate_bounds(t, {1, 4, 5}, BoundKind.UPPER)
    assert sorted(f.source for f in bounds) == [(1, 1), (1, 4), (2, 4), (2, 5), (3, 4), (3, 5)]


def test_enumerate_records_reads(pos_state):
    log = ReadLog()
    enumerate_bounds(pos_state, pos_state.remaining, log=log)
    # four reads per nonzero pivot (pivot, two other actives, h), one per zero pivot
    assert len(log) == 39
    assert log.distinct == 16


def test_substitute_cost_examples():
    t = homogenize(NEG_A, NEG_B, NEG_C)
    fz = substitute_cost(t, make_bound(t, 1, 1))
    assert fz == LinearForm((0, F(-1, 2), -3), F(-1, 2))
    assert fz.hclass is HClass.U

    dual = homogenize(*dualize(NEG_A, NEG_B, NEG_C), var_prefix="y")
    fz = substitute_cost(dual, make_bound(dual, 3, 4))
    assert fz == LinearForm((1, -7, -8, 0, -5), 9)


def test_substitute_cost_zero_coefficient(pos_state):
    # c3 = 0 in the resumed positive example
    f = make_bound(pos_state, 3, 3)
    assert substitute_cost(pos_state, f) == LinearForm((0, -1, 0, 0), 3500)


def test_partition_examples(pos_state):
    part = partition_vars(pos_state)
    assert part.xplus == set() and part.xzero == {3, 4} and part.xminus == {2}
    dual = homogenize(*dualize(NEG_A, NEG_B, NEG_C), var_prefix="y")
    part = partition_vars(dual)
    assert part.xplus == {1, 4, 5} and part.xzero == set() and part.xminus == {2, 3}
    zero = homogenize([[1, 1]], [1], [0, 0])
    assert partition_vars(zero).xzero == {1, 2}


def test_dominating_examples(pos_state):
    assert dominating_set(homogenize(NEG_A, NEG_B, NEG_C)) == {1}
    assert dominating_set(pos_state) == set()
    nonneg = make_tableau([[1, 0, 0, 0], [0, 0, 0, 0], [0, 1, 2, 1]], remaining=(1, 2))
    assert dominating_set(nonneg) == set()


def test_exchange_identities_on_random_rows():
    rng = random.Random(1234)
    checked = 0
    while checked < 1000:
        n = rng.randint(2, 5)
        row = [0] + [random_fraction(rng) for _ in range(n)] + [random_fraction(rng)]
        t = make_tableau([[1] + [0] * (n + 1), [0] * (n + 2), row], remaining=range(1, n + 1))
        j, j2 = rng.sample(range(1, n + 1), 2)
        if row[j] == 0 or row[j2] == 0:
            continue
        f, g = make_bound(t, 1, j), make_bound(t, 1, j2)
        vjj2 = f.form.coef(j2)
        for k in range(1, n + 1):
            if k not in (j, j2):
                assert -f.form.coef(k) / vjj2 == g.form.coef(k)
        assert -f.r / vjj2 == g.r
        assert exchange_bound(f, j2) == g
        checked += 1


def test_exchange_requires_reference(pos_state):
    f = make_bound(pos_state, 2, 4)
    with pytest.raises(TableauError):
        exchange_bound(f, 1)


nonneg = st.fractions(min_value=0, max_value=50, max_denominator=10)
coef = st.fractions(min_value=-20, max_value=20, max_denominator=10)


@settings(max_examples=200)
@given(st.lists(coef, min_size=4, max_size=4), st.lists(nonneg, min_size=4, max_size=4), nonneg)
def test_upper_bound_positivity_property(row, point, h):
    # row (z, x1, x2, x3) with positive pivot on x1 and h coefficient last
    row = [0, abs(row[0]) + 1] + row[1:]
    t = make_tableau([[1, 0, 0, 0, 0], [0, 0, 0, 0, 0], row], remaining=(1, 2, 3))
    f = make_bound(t, 1, 1)
    x = [0] + list(point[1:3])
    bound = f.form.evaluate(x, h)

    def lhs_at(x1):
        return sum(a * w for a, w in zip(row, [0, x1] + x[1:] + [h]))

    for x1 in (point[0], bound):
        if x1 >= 0:
            assert (lhs_at(x1) <= 0) == (x1 <= bound)


@settings(max_examples=200)
@given(st.lists(coef, min_size=3, max_size=3), st.lists(nonneg, min_size=3, max_size=3),
       st.fractions(min_value=F(1, 10), max_value=50, max_denominator=10))
def test_strictly_positive_lower_is_positive(coeffs, point, h):
    # negative pivot on x1; the bound is strictly positive whenever it is classified so
    row = [0, -(abs(coeffs[0]) + 1), coeffs[1], coeffs[2], coeffs[0]]
    t = make_tableau([[1, 0, 0, 0, 0], [0, 0, 0, 0, 0], row], remaining=(1, 2, 3))
    f = make_bound(t, 1, 1)
    assert f.kind.is_lower
    if f.kind is BoundKind.STRICTLY_POSITIVE_LOWER:
        assert f.form.evaluate([0] + list(point[1:]), h) > 0


@settings(max_examples=200)
@given(st.lists(coef, min_size=3, max_size=3), coef, st.lists(coef, min_size=3, max_size=3), coef,
       st.lists(nonneg, min_size=3, max_size=3), nonneg)
def test_substitution_matches_evaluation(c, ch, v, r, point, h):
    cost = LinearForm(c, ch)
    bound = LinearForm([v[0], 0, v[2]], r)
    x = list(point)
    substituted = cost.substitute(2, bound)
    x_lifted = [x[0], bound.evaluate(x, h), x[2]]
    assert substituted.evaluate(x, h) == cost.evaluate(x_lifted, h)


@settings(max_examples=200)
@given(st.lists(coef, min_size=3, max_size=3), coef, st.lists(nonneg, min_size=3, max_size=3),
       st.fractions(min_value=F(1, 10), max_value=50, max_denominator=10))
def test_hclass_b_is_bounded_by_r_h(v, r, point, h):
    form = LinearForm(v, r)
    if form.hclass is HClass.B:
        assert form.evaluate(point, h) <= r * h
