from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algspline.invsys import apolar_action
from algspline.polyring import (GeneratingSeries, LinearForm, Polynomial, StabilizationError, binom,
                                dehomogenize, format_rational, format_univariate, graded_piece_matrix,
                                homogenize, interpolate, monomial_basis, multiply, num_monomials,
                                parse_rational, power, series_from_dims)


def test_binom_and_monomial_counts():
    assert binom(5, 2) == 10
    assert binom(1, 2) == 0
    assert binom(-1, 2) == 0
    assert num_monomials(3, 4) == 15
    assert len(monomial_basis(3, 4)) == 15
    assert num_monomials(3, -1) == 0


def test_rational_round_trip():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(7) == 7
    assert format_rational(Fraction(-4, 6)) == "-2/3"
    assert format_rational(Fraction(5)) == "5"


def test_polynomial_arithmetic():
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    p = (x + y) ** 2
    assert p == x * x + 2 * x * y + y * y
    assert (p - p).is_zero()
    assert p.degree() == 2 and p.is_homogeneous()
    assert p.derivative(0) == 2 * x + 2 * y
    assert p.evaluate((1, 2)) == 9


def test_linear_form_helpers():
    l = LinearForm((Fraction(1, 2), Fraction(-1, 3), 0))
    assert l.primitive().integer_coefficients() == (3, -2, 0)
    assert l.projectively_equal(LinearForm((-3, 2, 0)))
    assert power(LinearForm((1, -1)), 2) == Polynomial(2, {(2, 0): 1, (1, 1): -2, (0, 2): 1})


def test_homogenize_round_trip():
    p = Polynomial(2, {(2, 0): 1, (0, 1): 3, (0, 0): -1})
    h = homogenize(p)
    assert h.is_homogeneous() and h.degree() == 2
    assert dehomogenize(h) == p


def test_graded_piece_matrix_shape():
    l = power(LinearForm((1, 1)), 2)
    M = graded_piece_matrix([l], 3)
    assert len(M) == 4 and len(M[0]) == 2
    assert graded_piece_matrix([l], 1) == [[], []]


def test_series_format_and_coefficients():
    s = GeneratingSeries((1, 3, 3, 1), 4)
    assert str(s) == "(1 + 3t + 3t^2 + t^3)/(1-t)^4"
    # (1+t)^3/(1-t)^4 coefficients
    assert s.coefficients(3) == [1, 7, 25, 63]


def test_series_from_dims_recovers_numerator():
    s = GeneratingSeries((1, 0, 2, -1), 3)
    assert series_from_dims(s.coefficients(15), 3) == s
    with pytest.raises(StabilizationError):
        series_from_dims([1, 2, 3], 0)


def test_format_univariate():
    assert format_univariate([10, -6, 2]) == "2d^2-6d+10"
    assert format_univariate([-1, Fraction(1, 2)]) == "(1/2)d-1"
    assert format_univariate([0]) == "0"


def test_interpolate_quadratic():
    xs = [3, 4, 5]
    assert interpolate(xs, [2 * x * x + 1 for x in xs]) == [1, 0, 2]


def _poly(n, deg_max=3):
    term = st.tuples(*[st.integers(0, deg_max)] * n)
    return st.dictionaries(term, st.integers(-5, 5), max_size=5).map(lambda t: Polynomial(n, t))


@settings(max_examples=40, deadline=None)
@given(_poly(2), _poly(2), _poly(2))
def test_apolar_action_is_bilinear(f, g, h):
    assert apolar_action(f + g, h) == apolar_action(f, h) + apolar_action(g, h)
    assert apolar_action(f, g + h) == apolar_action(f, g) + apolar_action(f, h)


@settings(max_examples=40, deadline=None)
@given(_poly(2, 2), _poly(2, 2), _poly(2, 4))
def test_apolar_action_composes(f, g, h):
    assert apolar_action(multiply(f, g), h) == apolar_action(f, apolar_action(g, h))


@settings(max_examples=40, deadline=None)
@given(_poly(3), _poly(3))
def test_multiplication_commutes(p, q):
    assert multiply(p, q) == multiply(q, p)
