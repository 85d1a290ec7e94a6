import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algspline.cellcomplex import ComplexError, EmbeddedComplex
from algspline.fixtures import load_fixture
from algspline.linalg import rank
from algspline.polyring import LinearForm, Polynomial, binom, power
from algspline.splinemod import (DimensionTable, SplineSystem, build_presentation, cokernel_dim,
                                 dimension_table, fit_hilbert_polynomial, is_spline, presentation_nullity,
                                 quotient_matrix, spline_dim, spline_dims, syzygy_coefficients)

X, Y, Z = (Polynomial.variable(3, i) for i in range(3))


@pytest.fixture(scope="module")
def fexm():
    return load_fixture("fexm")


def test_fexm_presentation(fexm):
    pres = build_presentation(fexm, 1)
    assert pres.shape == (4, 8)
    assert set(pres.exponents) == {2}
    expected = {power(LinearForm(c), 2) for c in [(0, 1, 0), (1, -1, 0), (1, 1, 0), (1, 0, 0)]}
    assert set(pres.diagonal) == expected


def test_mixed_exponents(fexm):
    pres = build_presentation(fexm, [1, 2, 1, 3])
    assert list(pres.exponents) == [2, 3, 2, 4]


def test_th_presentation_shape():
    pres = build_presentation(load_fixture("th"), 2)
    assert pres.shape == (6, 10)
    assert set(pres.column_shifts[4:]) == {3}


def test_single_triangle_has_empty_presentation():
    c = EmbeddedComplex([[0, 0], [1, 0], [0, 1]], [[0, 1, 2]])
    assert build_presentation(c, 1).shape == (0, 1)
    assert [spline_dim(c, 1, d) for d in range(4)] == [1, 3, 6, 10]


def test_fexm_dimensions(fexm):
    dims = [spline_dim(fexm, 1, d) for d in range(7)]
    assert dims == [1, 3, 7, 15, 27, 43, 63]
    assert dims == [presentation_nullity(fexm, 1, d) for d in range(7)]


@pytest.mark.parametrize("name", ["fexm", "generic", "morgan_scott", "th", "tetra_split"])
def test_reduced_and_full_presentations_agree(name):
    c = load_fixture(name)
    for r in (0, 1):
        for d in range(4):
            assert spline_dim(c, r, d) == presentation_nullity(c, r, d)


@pytest.mark.parametrize("name", ["fexm", "generic", "th", "octahedron", "tetra_split"])
def test_trivial_degrees(name):
    c = load_fixture(name)
    assert spline_dim(c, 2, 0) == 1
    for r in range(3):
        for d in range(r + 1):
            assert spline_dim(c, r, d) == binom(d + c.k, c.k)
    assert cokernel_dim(c, 1, -1) == 0


def test_octahedron_monomial_path_matches_rank():
    c = load_fixture("octahedron")
    s = SplineSystem(c, 1)
    for d in range(5):
        assert s.reduced_rank(d) == rank(s.reduced_matrix(d))


def test_cokernel_degree_zero(fexm):
    assert cokernel_dim(fexm, 0, 0) == 1


def test_th_cokernel_second_difference_vanishes():
    c = load_fixture("th")
    n = [cokernel_dim(c, 1, d) for d in range(14)]
    second = [n[i + 2] - 2 * n[i + 1] + n[i] for i in range(len(n) - 2)]
    assert all(v == 0 for v in second[-4:])


def test_is_spline_examples(fexm):
    p = X * X + 3 * X * Y - Z * Z
    assert is_spline(fexm, 1, [p] * 4) == (True, None)
    zero = Polynomial(3)
    ok, witness = is_spline(fexm, 1, [zero, X * X, zero, zero])
    assert not ok
    assert fexm.face_form(witness).primitive() == LinearForm((0, 1, 0)).primitive()
    with pytest.raises(ComplexError):
        is_spline(fexm, 1, [p] * 3)


def test_is_spline_accepts_affine_input(fexm):
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    assert is_spline(fexm, 1, [x * y + 1] * 4)[0]


def test_telescoped_spline(fexm):
    # faces [0,1,4], [0,1,2], [0,2,3], [0,3,4]; crossing edge l adds a multiple of l^2,
    # and -2 y^2 + (x-y)^2 + (x+y)^2 = 2 x^2 closes the loop across the edge x = 0
    y2, a2, b2 = Y * Y, (X - Y) * (X - Y), (X + Y) * (X + Y)
    tup = [Polynomial(3), -2 * y2, -2 * y2 + a2, -2 * y2 + a2 + b2]
    assert tup[3] == 2 * X * X
    assert is_spline(fexm, 1, tup) == (True, None)
    # a single step with a1 = a2 = 1 does not close up
    assert not is_spline(fexm, 1, [Polynomial(3), y2, y2 + a2, y2 + a2 + b2])[0]


def test_basis_elements_are_splines():
    c = load_fixture("generic")
    s = SplineSystem(c, 1)
    basis = s.basis(3)
    assert len(basis) == s.dim(3)
    for tup in basis:
        assert is_spline(c, 1, list(tup))[0]
        a = syzygy_coefficients(c, 1, list(tup))
        assert set(a) == set(c.interior(1))


def test_spline_dims_parallel_matches_serial():
    c = load_fixture("generic")
    assert spline_dims(c, 1, range(8), threads=2) == spline_dims(c, 1, range(8), threads=1)


def test_fit_th_row_zero():
    c = load_fixture("th")
    s = SplineSystem(c, 0)
    fit = fit_hilbert_polynomial({d: s.dim(d) for d in range(5, 13)}, 2)
    assert str(fit) == "2d^2+2" and fit.stabilized


def test_fit_perturbed_row_one():
    t = dimension_table(load_fixture("th_perturbed"), 1, 14, fit=True)
    assert str(t.fit) == "2d^2-6d+7"
    assert t.fit.stabilization_degree is not None


def test_fit_constant_and_short_window():
    fit = fit_hilbert_polynomial(DimensionTable({d: 1 for d in range(4)}), 0)
    assert fit.coefficients == [1] and fit.stabilization_degree == 0
    with pytest.raises(ValueError):
        fit_hilbert_polynomial({0: 1, 1: 2}, 2)
    assert not fit_hilbert_polynomial({d: 2 ** d for d in range(6)}, 1).stabilized


def test_quotient_matrix_rows():
    M = quotient_matrix((1, 1, 0), 2, 3)
    # dim (R/l^2)_3 in three variables
    assert len(M) == binom(5, 2) - binom(3, 2)


@settings(max_examples=12, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=4, max_size=4), st.integers(0, 3), st.integers(0, 5))
def test_more_smoothness_fewer_splines(alpha, which, d):
    c = load_fixture("fexm")
    raised = list(alpha)
    raised[which] += 1
    assert spline_dim(c, raised, d) <= spline_dim(c, alpha, d)
