import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from backend.exact_core import (
    NEG_INF,
    POS_INF,
    DimensionError,
    ExactArithmeticError,
    ExtendedRational,
    OpCount,
    RatMatrix,
    dot,
    ext_abs,
    ext_add,
    ext_compare,
    ext_mul,
    format_rational,
    l1_norm,
    mat_mul,
    mat_vec,
    parse_rational,
)

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=50)


def test_parse_rational_forms():
    assert parse_rational("3") == F(3)
    assert parse_rational("-7/14") == F(-1, 2)
    assert parse_rational(" 47 / 102 ") == F(47, 102)
    assert parse_rational(5) == F(5)


@pytest.mark.parametrize("text", ["1.5", "abc", "1/0", "", "--1", "1/-2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_parse_rational_rejects_bool():
    with pytest.raises(ValueError):
        parse_rational(True)


@given(rationals)
def test_format_parse_inverse(q):
    assert parse_rational(format_rational(q)) == q


def test_format_rational_integer():
    assert format_rational(F(6, 3)) == "2"
    assert format_rational(F(-45, 7)) == "-45/7"


def test_extended_order():
    assert ext_compare(NEG_INF, ExtendedRational.of(-10 ** 9)) == -1
    assert ext_compare(POS_INF, ExtendedRational.of(10 ** 9)) == 1
    assert ext_compare(POS_INF, POS_INF) == 0
    assert ExtendedRational.of(F(1, 3)) < ExtendedRational.of(F(1, 2))


def test_extended_undefined_operations():
    with pytest.raises(ExactArithmeticError):
        ext_add(POS_INF, NEG_INF)
    with pytest.raises(ExactArithmeticError):
        ext_mul(ExtendedRational.of(0), POS_INF)
    with pytest.raises(ExactArithmeticError):
        POS_INF.finite()


def test_extended_infinite_arithmetic():
    assert ext_add(POS_INF, ExtendedRational.of(3)) == POS_INF
    assert ext_mul(ExtendedRational.of(-2), POS_INF) == NEG_INF
    assert ext_mul(NEG_INF, NEG_INF) == POS_INF
    assert ext_abs(NEG_INF) == POS_INF
    assert -POS_INF == NEG_INF


@given(rationals, rationals)
def test_extended_matches_fraction_arithmetic(a, b):
    ea, eb = ExtendedRational.of(a), ExtendedRational.of(b)
    assert (ea + eb).finite() == a + b
    assert (ea * eb).finite() == a * b
    assert (ea - eb).finite() == a - b


def test_vectors():
    assert l1_norm([F(-1, 2), 3, F(1, 4)]) == F(15, 4)
    assert dot([1, 2], [F(1, 2), F(1, 4)]) == 1
    with pytest.raises(DimensionError):
        dot([1], [1, 2])


def test_matrix_product_is_exact():
    a = RatMatrix.from_rows([[F(1, 3), 1], [0, F(-2, 7)]])
    b = RatMatrix.from_rows([[3, 0], [F(7, 2), 1]])
    prod = mat_mul(a, b)
    assert prod.rows() == [(F(9, 2), F(1)), (F(-1), F(-2, 7))]
    assert all(isinstance(x, F) for row in prod.rows() for x in row)
    assert mat_vec(a, [3, 0]) == (F(1), F(0))


def test_matrix_identity_and_labels():
    ident = RatMatrix.identity(3, ["z", "x1", "h"])
    m = RatMatrix.from_rows([[1, 2, 3]], row_labels=[-1], col_labels=["z", "x1", "h"])
    assert mat_mul(m, ident) == m
    assert m.at(-1, "h") == 3
    assert m.transpose().shape == (3, 1)
    assert m.neg().row(-1) == (-1, -2, -3)
    assert m.to_strings() == [["1", "2", "3"]]


def test_matrix_shape_errors():
    with pytest.raises(DimensionError):
        RatMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionError):
        mat_mul(RatMatrix.from_rows([[1, 2]]), RatMatrix.from_rows([[1, 2]]))
    with pytest.raises(DimensionError):
        RatMatrix.from_rows([[1], [2]], row_labels=[0, 0])


@settings(max_examples=50)
@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=2, max_size=2))
def test_transpose_involution(rows):
    m = RatMatrix.from_rows(rows)
    assert m.transpose().transpose() == m


@st.composite
def matrix_chain(draw, count):
    """`count` random matrices, each at most 5x5, whose shapes chain for multiplication"""
    dims = [draw(st.integers(1, 5)) for _ in range(count + 1)]
    return [RatMatrix.from_rows(draw(st.lists(st.lists(rationals, min_size=c, max_size=c),
                                              min_size=r, max_size=r)))
            for r, c in zip(dims, dims[1:])]


def naive_product(a, b):
    rows_a, rows_b = a.rows(), b.rows()
    inner = len(rows_b)
    return [tuple(sum((rows_a[i][k] * rows_b[k][j] for k in range(inner)), F(0))
                  for j in range(b.shape[1]))
            for i in range(a.shape[0])]


@settings(max_examples=60)
@given(matrix_chain(2))
def test_matrix_product_matches_triple_loop(chain):
    a, b = chain
    count = OpCount()
    prod = mat_mul(a, b, count)
    assert prod.rows() == naive_product(a, b)
    nonzero = sum(1 for row in a.rows() for x in row if x != 0)
    assert count.mults == nonzero * b.shape[1]
    assert count.mults <= a.shape[0] * a.shape[1] * b.shape[1]


@settings(max_examples=40)
@given(matrix_chain(3))
def test_matrix_product_is_associative(chain):
    a, b, c = chain
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


@settings(max_examples=40)
@given(st.data())
def test_matrix_product_distributes(data):
    a, b = data.draw(matrix_chain(2))
    r, c = b.shape
    other = RatMatrix.from_rows(data.draw(st.lists(st.lists(rationals, min_size=c, max_size=c),
                                                   min_size=r, max_size=r)))
    assert mat_mul(a, b.add(other)) == mat_mul(a, b).add(mat_mul(a, other))


@settings(max_examples=40)
@given(matrix_chain(2))
def test_products_stay_normalized(chain):
    for x in (x for row in mat_mul(*chain).rows() for x in row):
        assert isinstance(x, F)
        assert x.denominator > 0
        assert math.gcd(x.numerator, x.denominator) == 1


def test_parsed_rationals_are_reduced():
    q = parse_rational("-12/18")
    assert (q.numerator, q.denominator) == (-2, 3)
    assert format_rational(q) == "-2/3"
    assert format_rational(parse_rational("10/5")) == "2"
