import json

import pytest

from algspline.cellcomplex import (ComplexError, EmbeddedComplex, boundary_matrix_relative,
                                   distinct_hyperplane_count, is_star, load_complex,
                                   smoothness_exponents, validate)
from algspline.fixtures import fixture_names, load_fixture
from algspline.polyring import LinearForm


@pytest.fixture(scope="module")
def fexm():
    return load_fixture("fexm")


@pytest.mark.parametrize("name", fixture_names())
def test_fixtures_validate(name):
    assert validate(load_fixture(name)) == []


def test_fexm_counts(fexm):
    assert (fexm.f(0), fexm.f(1), fexm.f(2)) == (5, 8, 4)
    assert fexm.f0(0) == 1 and fexm.f0(1) == 4
    assert is_star(fexm)
    assert distinct_hyperplane_count(fexm, fexm.interior(0)[0]) == 4


def test_fexm_edge_forms(fexm):
    forms = {fexm.face_form(e).primitive() for e in fexm.interior(1)}
    expected = {LinearForm(c).primitive() for c in [(0, 1, 0), (1, -1, 0), (1, 1, 0), (1, 0, 0)]}
    assert forms == expected


def test_fexm_relative_boundary(fexm):
    b = boundary_matrix_relative(fexm, 2, row_basis=[(0, 1), (0, 2), (0, 3), (0, 4)],
                                 col_basis=[(0, 1, 4), (0, 2, 1), (0, 3, 2), (0, 4, 3)])
    assert b.entries == [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [-1, 0, 0, 1]]


def test_th_relative_boundary():
    th = load_fixture("th")
    b = boundary_matrix_relative(th, 2, row_basis=[(3, 0), (4, 1), (5, 2), (3, 4), (4, 5), (5, 3)],
                                 col_basis=[(0, 2, 5, 3), (0, 3, 4, 1), (1, 4, 5, 2), (3, 5, 4)])
    assert b.entries == [[1, -1, 0, 0], [0, 1, -1, 0], [-1, 0, 1, 0],
                         [0, 1, 0, -1], [0, 0, 1, -1], [1, 0, 0, -1]]


@pytest.mark.parametrize("name", ["generic", "octahedron", "tetra_split", "th"])
def test_relative_boundary_squares_to_zero(name):
    c = load_fixture(name)
    for i in range(2, c.k + 1):
        a = boundary_matrix_relative(c, i - 1).entries
        b = boundary_matrix_relative(c, i).entries
        if not a or not b or not a[0]:
            continue
        prod = [[sum(a[r][m] * b[m][col] for m in range(len(b))) for col in range(len(b[0]))]
                for r in range(len(a))]
        assert all(v == 0 for row in prod for v in row)


def test_smoothness_exponents_forms(fexm):
    interior = fexm.interior(1)
    assert smoothness_exponents(fexm, 2) == {e: 2 for e in interior}
    assert smoothness_exponents(fexm, [1, 2, 1, 3]) == dict(zip(interior, [1, 2, 1, 3]))
    with pytest.raises(ComplexError):
        smoothness_exponents(fexm, [1, 2])
    with pytest.raises(ComplexError):
        smoothness_exponents(fexm, -1)


def test_round_trip_through_json(tmp_path, fexm):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(fexm.to_dict()))
    c = load_complex(path)
    assert c.f(2) == fexm.f(2) and c.vertices == fexm.vertices


def test_malformed_json_propagates(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"vertices": [')
    with pytest.raises(json.JSONDecodeError):
        load_complex(path)


def test_missing_field():
    with pytest.raises(ComplexError):
        EmbeddedComplex.from_dict({"vertices": [[0, 0]]})


def test_validate_flags_folded_triangles():
    c = EmbeddedComplex([[0, 0], [1, 0], [0, 1], [1, 1]], [[0, 1, 2], [1, 2, 3], [0, 1, 3]])
    assert validate(c)


def test_validate_flags_nonconvex_polygon():
    c = EmbeddedComplex([[0, 0], [4, 0], [1, 1], [0, 4]], [[0, 1, 2, 3]], polyhedral=True)
    assert any("convex" in p for p in validate(c))


def test_validate_flags_disconnected_triangles():
    c = EmbeddedComplex([[0, 0], [1, 0], [0, 1], [5, 5], [6, 5], [5, 6]], [[0, 1, 2], [3, 4, 5]])
    assert validate(c)


def test_validate_flags_degenerate_triangle():
    c = EmbeddedComplex([[0, 0], [1, 1], [2, 2]], [[0, 1, 2]])
    assert validate(c)
