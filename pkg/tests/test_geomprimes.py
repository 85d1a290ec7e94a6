from fractions import Fraction

import pytest

from algspline.cellcomplex import ComplexError, EmbeddedComplex
from algspline.closedforms import colength
from algspline.fixtures import load_fixture
from algspline.geomprimes import (build_xi_graph, cycle_ideals, locus_at, pencil_basis, pencil_coordinates,
                                  xi_candidates)
from algspline.splinemod import cokernel_dim


@pytest.fixture(scope="module")
def th():
    return load_fixture("th")


def _affine(loci):
    return sorted((x.affine, x.n_lines) for x in loci if not x.at_infinity)


def test_th_concurrent_loci(th):
    loci = xi_candidates(th, min_lines=3)
    interior = {tuple(th.vertices[v]) for v in th.interior(0)}
    points = {x.affine for x in loci}
    assert interior < points
    assert len(points - interior) == 1
    for xi in loci:
        g = build_xi_graph(th, xi)
        assert [comp["kind"] for comp in g.components] == ["cycle"]
        assert len(g.cycles[0]["faces"]) == 3


def test_perturbed_has_only_vertex_loci():
    c = load_fixture("th_perturbed")
    interior = {tuple(c.vertices[v]) for v in c.interior(0)}
    assert {x.affine for x in xi_candidates(c, min_lines=3)} == interior


def test_perturbed_former_concurrency_point_is_acyclic(th):
    c = load_fixture("th_perturbed")
    extra = next(x for x in xi_candidates(th, 3) if x.affine not in {tuple(th.vertices[v]) for v in th.interior(0)})
    g = build_xi_graph(c, extra.affine)
    assert g.is_acyclic
    assert cycle_ideals(c, extra.affine, 1, graph=g) == []


def test_cycle_ideals_at_central_point(th):
    for xi in xi_candidates(th, 3):
        cycles = cycle_ideals(th, xi, 1)
        assert len(cycles) == 1
        assert cycles[0].exponents == [2, 2, 2] and cycles[0].contribution == 3


def _strips():
    verts = [(0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (2, 1), (1, 1), (0, 1)]
    faces = [[0, 1, 6, 7], [1, 2, 5, 6], [2, 3, 4, 5]]
    return EmbeddedComplex(verts, faces, polyhedral=True)


def test_parallel_edges_meet_at_infinity():
    c = _strips()
    loci = xi_candidates(c)
    assert len(loci) == 1 and loci[0].at_infinity
    g = build_xi_graph(c, loci[0])
    assert [comp["kind"] for comp in g.components] == ["path"]


def _grid():
    verts = [(x, y) for y in range(3) for x in range(3)]
    sq = [[0, 1, 4, 3], [1, 2, 5, 4], [3, 4, 7, 6], [4, 5, 8, 7]]
    return EmbeddedComplex(verts, sq, polyhedral=True)


def test_four_cycle_counts_distinct_forms():
    c = _grid()
    g = build_xi_graph(c, (1, 1))
    assert len(g.cycles) == 1 and len(g.cycles[0]["faces"]) == 4
    for r in range(3):
        cyc = cycle_ideals(c, (1, 1), r, graph=g)[0]
        assert cyc.n == 2 and cyc.contribution == (r + 1) ** 2 == colength([r + 1, r + 1])
        # the codimension-two part of the cokernel settles at this colength
        assert cokernel_dim(c, r, 20) == cyc.contribution


def test_rotation_invariance(th):
    rot = [[Fraction(3, 5), Fraction(-4, 5)], [Fraction(4, 5), Fraction(3, 5)]]

    def move(p):
        return (rot[0][0] * p[0] + rot[0][1] * p[1], rot[1][0] * p[0] + rot[1][1] * p[1])

    turned = EmbeddedComplex([move(v) for v in th.vertices], [th.face_vertices(2, t) for t in range(th.f(2))],
                             polyhedral=True)
    for m in (2, 3):
        before = sorted((move(p), n) for p, n in _affine(xi_candidates(th, m)))
        assert before == _affine(xi_candidates(turned, m))
        assert len(xi_candidates(th, m)) == len(xi_candidates(turned, m))


def test_pencil_coordinates_round_trip():
    p = (2, -1, 1)
    b0, b1 = pencil_basis(p)
    form = tuple(3 * a - 2 * b for a, b in zip(b0, b1))
    assert pencil_coordinates(p, form) == (3, -2)
    with pytest.raises(ValueError):
        pencil_coordinates(p, (1, 0, 0))


def test_locus_at_accepts_affine_and_projective(th):
    a = locus_at(th, (0, 0))
    b = locus_at(th, (0, 0, 5))
    assert a.point == b.point == (0, 0, 1)


def test_degenerate_face_rejected():
    # four collinear vertices on a shared side give one face three edges through a point
    verts = [(0, 0), (1, 0), (2, 0), (3, 0), (3, 2), (0, 2), (Fraction(3, 2), -2)]
    c = EmbeddedComplex(verts, [[0, 1, 2, 3, 4, 5], [0, 6, 3, 2, 1]], polyhedral=True)
    with pytest.raises(ComplexError):
        build_xi_graph(c, (1, 0))


def test_planar_only():
    with pytest.raises(ComplexError):
        xi_candidates(load_fixture("octahedron"))
