"""Unit tests for the exact arithmetic layer."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from racahmod.exact import (
    QMatrix,
    SqrtRational,
    binomial,
    factorial,
    intersect_spans,
    kernel,
    matrix_rank,
    rat_from_str,
    rat_to_str,
    rref,
    sqrtrat_mul,
    sqrtrat_sum_is_zero,
    squarefree_split,
)


def test_factorial_values():
    assert factorial(0) == 1
    assert factorial(5) == 120
    assert factorial(20) == 2432902008176640000
    with pytest.raises(ValueError):
        factorial(-1)


def test_binomial_values():
    assert binomial(4, 2) == 6
    assert binomial(3, -1) == 0
    assert binomial(3, 5) == 0
    assert binomial(10, 5) == 252


def test_binomial_pascal_oracle():
    rows = [[1]]
    for n in range(1, 13):
        prev = rows[-1]
        rows.append(
            [1] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1]
        )
    for n in range(13):
        for k in range(n + 1):
            assert binomial(n, k) == rows[n][k]


def test_sqrtrat_mul_examples():
    root2 = SqrtRational.of(1, 2)
    assert sqrtrat_mul(root2, root2) == SqrtRational(Fraction(2), 1)
    x = SqrtRational.of(Fraction(1, 2), 6)
    y = SqrtRational.of(Fraction(1, 3), 10)
    assert sqrtrat_mul(x, y) == SqrtRational(Fraction(1, 3), 15)
    zero = SqrtRational(Fraction(0))
    assert sqrtrat_mul(zero, SqrtRational.of(5, 7)) == zero


def test_sqrtrat_construction_normalizes():
    assert SqrtRational.of(1, 60) == SqrtRational(Fraction(2), 15)
    assert SqrtRational.of(0, 7) == SqrtRational(Fraction(0), 1)
    assert SqrtRational.sqrt_of(Fraction(1, 6)) == SqrtRational(Fraction(1, 6), 6)
    with pytest.raises(ValueError):
        SqrtRational(Fraction(1), 0)


def test_sqrtrat_strings():
    assert str(SqrtRational(Fraction(3, 2), 5)) == "3/2*sqrt(5)"
    assert str(SqrtRational(Fraction(-2), 1)) == "-2"
    for text in ("3/2*sqrt(5)", "-2", "0", "7/9*sqrt(30)"):
        assert str(SqrtRational.from_str(text)) == text


def test_sqrtrat_division():
    x = SqrtRational.of(Fraction(3, 4), 10)
    assert x / x == SqrtRational(Fraction(1), 1)
    assert x * x.inverse() == SqrtRational(Fraction(1), 1)


def test_sqrtrat_sum_grouping():
    root2 = SqrtRational.of(1, 2)
    root3 = SqrtRational.of(1, 3)
    assert sqrtrat_sum_is_zero([root2, root3, -root2, -root3])
    assert not sqrtrat_sum_is_zero([root2, root3, -root2])


@given(
    st.fractions(max_denominator=50),
    st.integers(min_value=1, max_value=400),
    st.fractions(max_denominator=50),
    st.integers(min_value=1, max_value=400),
)
@settings(max_examples=200, deadline=None)
def test_sqrtrat_product_invariants(c1, r1, c2, r2):
    x = SqrtRational.of(c1, r1)
    y = SqrtRational.of(c2, r2)
    prod = sqrtrat_mul(x, y)
    s, t = squarefree_split(prod.radicand)
    assert t == 1 and s == prod.radicand  # radicand stays squarefree
    square = sqrtrat_mul(x, x)
    assert square.radicand == 1
    assert square.coeff == c1 * c1 * r1


def test_rational_serialization():
    assert rat_to_str(Fraction(-3, 6)) == "-1/2"
    assert rat_to_str(Fraction(4, 2)) == "2"
    assert rat_from_str("-1/2") == Fraction(-1, 2)
    assert rat_from_str("7") == 7


def test_kernel_examples():
    assert kernel(QMatrix.identity(3)) == []
    z = kernel(QMatrix.zero(2, 2))
    assert z == [(1, 0), (0, 1)]
    k = kernel(QMatrix.from_rows([[1, 2], [2, 4]]))
    assert k == [(Fraction(-2), Fraction(1))]


def test_kernel_reproducible():
    m = QMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert kernel(m) == kernel(QMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))


@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=4, max_size=4),
        min_size=1,
        max_size=6,
    )
)
@settings(max_examples=200, deadline=None)
def test_rank_nullity(rows):
    m = QMatrix.from_rows(rows)
    assert matrix_rank(m) + len(kernel(m)) == m.cols
    for vec in kernel(m):
        assert all(x == 0 for x in m.apply(vec))


def test_intersect_spans_examples():
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert intersect_spans([e1, e2], [e2, e3]) == [(0, 1, 0)]
    assert intersect_spans([e1], [e2]) == []
    got = intersect_spans([(1, 1, 0), (0, 1, 1)], [(1, 0, -1)])
    assert got == [(1, 0, -1)]


def test_intersect_spans_dimension_mismatch():
    with pytest.raises(ValueError):
        intersect_spans([(1, 0)], [(1, 0, 0)])


def test_rref_determinism_and_pivots():
    rows = [[0, 2, 4], [1, 1, 1], [1, 3, 5]]
    reduced, pivots = rref(rows)
    assert pivots == [0, 1]
    assert reduced[0][0] == 1 and reduced[1][1] == 1
    assert reduced == rref(rows)[0]


def test_qmatrix_arithmetic():
    a = QMatrix.from_rows([[Fraction(1, 2), 0], [0, 1]])
    assert (a * a).to_fractions() == ((Fraction(1, 4), 0), (0, 1))
    b = QMatrix.from_rows([[0, 1], [1, 0]])
    assert (a * b - b * a).entry(0, 1) == Fraction(-1, 2)
    assert (-a + a).is_zero()
    assert a.transpose() == a
    assert 2 * a == QMatrix.from_rows([[1, 0], [0, 2]])


def test_qmatrix_shape_errors():
    with pytest.raises(ValueError):
        QMatrix.from_rows([[1, 0]]) * QMatrix.from_rows([[1, 0]])
    with pytest.raises(ValueError):
        QMatrix.from_rows([[1]]) + QMatrix.from_rows([[1, 0]])
