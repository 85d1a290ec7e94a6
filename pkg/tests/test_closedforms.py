import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algspline.cellcomplex import ComplexError, EmbeddedComplex
from algspline.closedforms import (colength, cycle_constant, cycle_constant_from_resolution, line_syzygies,
                                   minimal_generators, mixed_hf, omega, planar_main, plf_dim,
                                   resolution_hf, rmodi_hilbert_poly, schumaker_lower_bound,
                                   star_dimension, syzygy_data)
from algspline.fixtures import PLANAR_SIMPLICIAL, load_fixture
from algspline.invsys import powers_rank, random_forms
from algspline.polyring import binom, eval_univariate
from algspline.splinemod import SplineSystem, fit_hilbert_polynomial, spline_dim


def test_schumaker_values():
    c = load_fixture("fexm")
    assert schumaker_lower_bound(c, 1, 2) == 7
    assert schumaker_lower_bound(c, 1, 2) <= spline_dim(c, 1, 2)
    for name in PLANAR_SIMPLICIAL:
        c = load_fixture(name)
        assert schumaker_lower_bound(c, 0, 1) == c.f(0)


def test_schumaker_needs_triangulation():
    with pytest.raises(ComplexError):
        schumaker_lower_bound(load_fixture("th"), 1, 2)


def test_star_values():
    c = load_fixture("fexm")
    assert star_dimension(c, 1, 2) == spline_dim(c, 1, 2) == 7
    assert star_dimension(c, 1, 1) == 3
    n2 = load_fixture("star_n2")
    assert star_dimension(n2, 1, 2) == spline_dim(n2, 1, 2)
    with pytest.raises(ComplexError):
        star_dimension(load_fixture("generic"), 1, 2)


def test_plf_values():
    assert plf_dim([2, 2, 2, 2], 2) == 3
    assert plf_dim([2, 2], 3) == 4
    assert plf_dim([3, 4], 2) == 0


def test_minimal_generators():
    assert minimal_generators([2, 2, 2]) == [2, 2, 2]
    assert minimal_generators([2, 2, 2, 2]) == [2, 2, 2]
    with pytest.raises(ValueError):
        minimal_generators([5, 1])
    with pytest.raises(ValueError):
        minimal_generators([0, 1])


def test_syzygy_data_examples():
    d = syzygy_data([2, 2, 2])
    assert (d.omega, d.a) == (2, 2)
    assert d.resolution_text() == "0 -> S(-3)^2 -> S(-2)^3 -> J -> 0"
    assert (d.alpha_psi, d.s1, d.s2) == (1, 2, 0)
    d = syzygy_data([2, 3])
    assert (d.omega, d.a) == (4, 1)
    assert d.resolution_text() == "0 -> S(-5) -> S(-2) + S(-3) -> J -> 0"
    with pytest.raises(ValueError):
        syzygy_data([2])
    with pytest.raises(ValueError):
        syzygy_data([2, 2, 2, 2])


def test_mixed_hf_examples():
    assert mixed_hf([2, 2, 2], 1) == 2
    assert mixed_hf([2, 2, 2], omega([2, 2, 2])) == 0
    assert mixed_hf([2, 2, 2], omega([2, 2, 2]) - 1) == syzygy_data([2, 2, 2]).a


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("r", range(5))
def test_line_syzygies_consistent(n, r):
    alpha = minimal_generators([r + 1] * n)
    ap, s1, s2 = line_syzygies(n, r)
    assert s1 >= 0 and s2 >= 0 and s1 + s2 == n - 1
    if len(alpha) == n:
        assert cycle_constant(n, r) == cycle_constant_from_resolution(n, r) == colength(alpha)
        d = syzygy_data(alpha)
        for i in range(d.omega + 4):
            assert resolution_hf(alpha, i) == mixed_hf(alpha, i)


def test_rmodi_hilbert_poly():
    # three lines through a point, r = 1: constant 3
    assert rmodi_hilbert_poly(3, 1, 2)[0] == 3 and len(rmodi_hilbert_poly(3, 1, 2)) == 1
    for r in range(4):
        assert rmodi_hilbert_poly(2, r, 2) == [(r + 1) ** 2]
    assert eval_univariate(rmodi_hilbert_poly(4, 0, 2), 10) == 1


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=2, max_size=5), st.integers(0, 100))
def test_plf_matches_rank_oracle(alpha, seed):
    alpha = minimal_generators(sorted(alpha))
    forms = random_forms(len(alpha), seed=seed)
    for t in range(sum(alpha) + 1):
        rk = powers_rank(forms, alpha, t)
        assert plf_dim(alpha, t) == rk
        if len(alpha) >= 2:
            assert mixed_hf(alpha, t) == t + 1 - rk


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 7), min_size=2, max_size=6))
def test_resolution_matches_mixed_hf(alpha):
    alpha = minimal_generators(sorted(alpha))
    if len(alpha) < 2:
        return
    for i in range(omega(alpha) + 4):
        assert resolution_hf(alpha, i) == mixed_hf(alpha, i)


def test_planar_main_th_row_two():
    rep = planar_main(load_fixture("th"), 2)
    assert str(rep) == "2d^2-12d+32"
    assert rep.face_constant == 4 and rep.cycle_total == 28
    assert all(cyc["n"] == 3 for cyc in rep.cycles)


def test_planar_main_perturbed_drop():
    for r in range(5):
        a = (r + 1) // 2
        full = planar_main(load_fixture("th"), r).coefficients[0]
        pert = planar_main(load_fixture("th_perturbed"), r).coefficients[0]
        assert full - pert == binom(r + 2, 2) + a * (r - a)


def _grid():
    verts = [(x, y) for y in range(3) for x in range(3)]
    sq = [[0, 1, 4, 3], [1, 2, 5, 4], [3, 4, 7, 6], [4, 5, 8, 7]]
    return EmbeddedComplex(verts, sq, polyhedral=True)


@pytest.mark.parametrize("name", ["generic", "morgan_scott_generic", "fexm", "grid"])
def test_planar_main_matches_fitted_dimensions(name):
    c = _grid() if name == "grid" else load_fixture(name)
    for r in range(3):
        s = SplineSystem(c, r)
        top = 3 * r + 10
        fit = fit_hilbert_polynomial({d: s.dim(d) for d in range(top + 1)}, 2)
        assert fit.stabilized
        assert [Fraction(x) for x in planar_main(c, r).coefficients] == fit.coefficients


def test_planar_main_grid_value():
    assert str(planar_main(_grid(), 1)) == "2d^2-2d+4"


def test_planar_main_mixed_smoothness():
    c = load_fixture("th")
    rng = random.Random(3)
    alpha = [rng.randint(0, 2) for _ in c.interior(1)]
    s = SplineSystem(c, alpha)
    fit = fit_hilbert_polynomial({d: s.dim(d) for d in range(17)}, 2)
    assert [Fraction(x) for x in planar_main(c, alpha).coefficients] == fit.coefficients
