"""
Simplicial and polyhedral complexes embedded in R^2 or R^3.

A complex is built from its maximal faces; lower faces come from closure.
Simplices are oriented by sorted vertex order, polygons by their cyclic
vertex list, which is flipped at load time if needed so the signed area is
positive.  Faces are interior when they do not lie in the boundary
subcomplex (the closure of the (k-1)-faces that have a single coface).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Mapping, Sequence

from .linalg import nullspace, rank
from .polyring import LinearForm, Polynomial, parse_rational, power


class ComplexError(ValueError):
    """Invalid or unsupported complex input."""


@dataclass(frozen=True)
class Face:
    id: int
    dim: int
    vertices: tuple
    is_interior: bool


@dataclass
class BoundaryMatrix:
    i: int
    entries: list
    row_faces: list
    col_faces: list

    @property
    def shape(self):
        return (len(self.row_faces), len(self.col_faces))


def _det(rows):
    rows = [list(r) for r in rows]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def _perm_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        while seq[i] != i:
            j = seq[i]
            seq[i], seq[j] = seq[j], seq[i]
            sign = -sign
    return sign


def _signed_area(pts):
    a = Fraction(0)
    for i in range(len(pts)):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % len(pts)]
        a += x1 * y2 - x2 * y1
    return a / 2


class EmbeddedComplex:
    """Pure k-dimensional complex with rational vertex coordinates."""

    def __init__(self, vertices: Sequence[Sequence], maximal_faces: Sequence[Sequence[int]],
                 polyhedral: bool = False, name: str = ""):
        self.vertices = [tuple(parse_rational(x) for x in v) for v in vertices]
        if not self.vertices:
            raise ComplexError("complex has no vertices")
        self.k = len(self.vertices[0])
        self.polyhedral = bool(polyhedral)
        self.name = name
        self.problems: list[str] = []
        self._build([list(f) for f in maximal_faces])

    # construction

    def _build(self, maximal):
        k = self.k
        if k not in (2, 3):
            raise ComplexError(f"only k = 2 or 3 supported, got vertices of length {k}")
        if any(len(v) != k for v in self.vertices):
            raise ComplexError("vertices have inconsistent dimensions")
        if self.polyhedral and k != 2:
            raise ComplexError("polyhedral input is only supported in the plane")
        nv = len(self.vertices)
        tops = []
        for f in maximal:
            if any(not isinstance(v, int) or not 0 <= v < nv for v in f):
                raise ComplexError(f"face {f} references an unknown vertex")
            if len(set(f)) != len(f):
                self.problems.append(f"degenerate face {f}: repeated vertex")
            if self.polyhedral:
                if len(f) < 3:
                    raise ComplexError(f"polygon {f} needs at least 3 vertices")
                if _signed_area([self.vertices[v] for v in f]) < 0:
                    f = [f[0]] + f[1:][::-1]
                tops.append(tuple(f))
            else:
                if len(f) != k + 1:
                    raise ComplexError(f"simplex {f} should have {k + 1} vertices")
                tops.append(tuple(sorted(f)))
        self._tops = tops
        faces: list[dict] = [dict() for _ in range(k + 1)]
        for v in range(nv):
            faces[0][(v,)] = None
        if self.polyhedral:
            for f in tops:
                for a, b in zip(f, f[1:] + f[:1]):
                    faces[1][tuple(sorted((a, b)))] = None
        else:
            for f in tops:
                for i in range(1, k):
                    for sub in combinations(f, i + 1):
                        faces[i][sub] = None
        # vertices not used by any face are reported, not silently kept
        used = {v for f in tops for v in f}
        for v in range(nv):
            if v not in used:
                self.problems.append(f"vertex {v} lies in no maximal face")
        lower = [sorted(faces[i]) for i in range(k)]
        self._keys = lower + [tops]
        self._index = [{self._key(i, f): n for n, f in enumerate(fs)} for i, fs in enumerate(self._keys)]
        if len(self._index[k]) != len(tops):
            self.problems.append("duplicate maximal faces")
        # facets of each top face, cofaces of each (k-1)-face
        self._facets = []
        self._cofaces = [[] for _ in self._keys[k - 1]]
        for t, f in enumerate(tops):
            if self.polyhedral:
                fac = [self._index[1][tuple(sorted((a, b)))] for a, b in zip(f, f[1:] + f[:1])]
            else:
                fac = [self._index[k - 1][sub] for sub in combinations(f, k)]
            self._facets.append(fac)
            for e in fac:
                self._cofaces[e].append(t)
        boundary = [set() for _ in range(k + 1)]
        for e, co in enumerate(self._cofaces):
            if len(co) == 1:
                verts = self._keys[k - 1][e]
                for i in range(k):
                    for sub in combinations(verts, i + 1):
                        boundary[i].add(sub)
        self._interior = []
        for i in range(k + 1):
            self._interior.append([n for n, f in enumerate(self._keys[i])
                                   if i == k or f not in boundary[i]])
        self._interior_set = [set(x) for x in self._interior]

    @staticmethod
    def _key(i, f):
        return tuple(sorted(f))

    @classmethod
    def from_dict(cls, data: Mapping, name: str = "") -> EmbeddedComplex:
        try:
            verts = data["vertices"]
            faces = data["maximal_faces"]
        except KeyError as exc:
            raise ComplexError(f"missing field {exc.args[0]!r}") from None
        c = cls(verts, faces, polyhedral=data.get("polyhedral", False), name=data.get("name", name))
        if "dim" in data and int(data["dim"]) != c.k:
            raise ComplexError(f"declared dim {data['dim']} but vertices have length {c.k}")
        return c

    def to_dict(self) -> dict:
        d = {"dim": self.k, "vertices": [[str(x) for x in v] for v in self.vertices],
             "maximal_faces": [list(f) for f in self._tops]}
        if self.polyhedral:
            d["polyhedral"] = True
        if self.name:
            d["name"] = self.name
        return d

    # queries

    def face_vertices(self, i: int, n: int) -> tuple:
        return self._keys[i][n]

    def face(self, i: int, n: int) -> Face:
        return Face(n, i, self._keys[i][n], n in self._interior_set[i])

    def faces(self, i: int) -> list[Face]:
        return [self.face(i, n) for n in range(len(self._keys[i]))]

    def face_id(self, i: int, verts: Sequence[int]) -> int:
        try:
            return self._index[i][tuple(sorted(verts))]
        except KeyError:
            raise ComplexError(f"{list(verts)} is not an {i}-face") from None

    def f(self, i: int) -> int:
        return len(self._keys[i])

    def f0(self, i: int) -> int:
        return len(self._interior[i])

    def interior(self, i: int) -> list[int]:
        return list(self._interior[i])

    def is_interior(self, i: int, n: int) -> bool:
        return n in self._interior_set[i]

    def facets(self, t: int) -> list[int]:
        return list(self._facets[t])

    def cofaces(self, e: int) -> list[int]:
        return list(self._cofaces[e])

    def faces_containing(self, i: int, n: int, j: int) -> list[int]:
        """Ids of j-faces (j > i) that contain the i-face n."""
        verts = set(self._keys[i][n])
        return [m for m, f in enumerate(self._keys[j]) if verts <= set(f)]

    def points(self, i: int, n: int) -> list[tuple]:
        return [self.vertices[v] for v in self._keys[i][n]]

    def is_simplicial(self) -> bool:
        return not self.polyhedral or all(len(f) == 3 for f in self._tops)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return (f"<EmbeddedComplex{label} k={self.k} f={[self.f(i) for i in range(self.k + 1)]}"
                f" interior={[self.f0(i) for i in range(self.k + 1)]}>")

    # geometry

    def span_forms(self, i: int, n: int) -> list[LinearForm]:
        """Homogeneous linear forms cutting out the cone over the span of a face."""
        rows = [list(p) + [Fraction(1)] for p in self.points(i, n)]
        basis = nullspace(rows, self.k + 1)
        return [LinearForm(tuple(v)).primitive() for v in basis]

    def face_form(self, n: int) -> LinearForm:
        """l_tau for the (k-1)-face n, primitive integer coefficients, positive lead."""
        forms = self.span_forms(self.k - 1, n)
        if len(forms) != 1:
            raise ComplexError(f"face {list(self._keys[self.k - 1][n])} has no well-defined span")
        return forms[0]


def load_complex(path: str | Path) -> EmbeddedComplex:
    """Read a complex from JSON.  JSON syntax errors propagate as json.JSONDecodeError."""
    text = Path(path).read_text(encoding="utf-8")
    data = json.loads(text)
    return EmbeddedComplex.from_dict(data, name=Path(path).stem)


def validate(c: EmbeddedComplex) -> list[str]:
    """List every violated structural or geometric condition; empty means valid."""
    problems = list(c.problems)
    k = c.k
    for t, f in enumerate(c._tops):
        pts = [c.vertices[v] for v in f]
        if len(set(f)) != len(f):
            continue
        if c.polyhedral:
            m = len(pts)
            crosses = []
            for j in range(m):
                (x0, y0), (x1, y1), (x2, y2) = pts[j - 1], pts[j], pts[(j + 1) % m]
                crosses.append((x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1))
            if any(cr == 0 for cr in crosses):
                problems.append(f"degenerate polygon {list(f)}: three consecutive collinear vertices")
            elif any(cr < 0 for cr in crosses):
                problems.append(f"polygon {list(f)} is not convex")
        else:
            if _det([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]) == 0:
                problems.append(f"degenerate simplex {list(f)}: affinely dependent vertices")
    for e, co in enumerate(c._cofaces):
        if len(co) > 2:
            problems.append(f"pseudomanifold: face {list(c._keys[k - 1][e])} lies in {len(co)} maximal faces")
    # dual graph connectivity through (k-1)-faces
    n_top = len(c._tops)
    if n_top:
        adj = [[] for _ in range(n_top)]
        for co in c._cofaces:
            if len(co) == 2:
                a, b = co
                adj[a].append(b)
                adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            for b in adj[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        if len(seen) != n_top:
            problems.append("pseudomanifold: maximal faces are not connected through (k-1)-faces")
    # the two faces at an interior facet must sit on opposite sides of it
    for e in c.interior(k - 1):
        co = c._cofaces[e]
        if len(co) != 2:
            continue
        try:
            l = c.face_form(e)
        except ComplexError as exc:
            problems.append(str(exc))
            continue
        sides = []
        for t in co:
            pts = [c.vertices[v] for v in c._tops[t]]
            centroid = [sum(p[i] for p in pts) / len(pts) for i in range(k)]
            sides.append(l(list(centroid) + [1]))
        if sides[0] * sides[1] >= 0:
            problems.append(f"faces {co} do not lie on opposite sides of {list(c._keys[k - 1][e])}")
    return problems


def orientation_sign(c: EmbeddedComplex, i: int, n: int, oriented: Sequence[int]) -> int:
    """+1 or -1: the given vertex sequence against the stored orientation of face (i, n)."""
    stored = list(c._keys[i][n])
    oriented = list(oriented)
    if sorted(stored) != sorted(oriented):
        raise ComplexError(f"{oriented} does not describe face {stored}")
    if c.polyhedral and i == 2:
        m = len(stored)
        start = stored.index(oriented[0])
        fwd = [stored[(start + j) % m] for j in range(m)]
        back = [stored[(start - j) % m] for j in range(m)]
        if oriented == fwd:
            return 1
        if oriented == back:
            return -1
        raise ComplexError(f"{oriented} is not a cyclic ordering of polygon {stored}")
    return _perm_sign([stored.index(v) for v in oriented])


def _incidence(c: EmbeddedComplex, i: int, n: int) -> dict:
    """Signed boundary of face (i, n) as {(i-1)-face id: sign}."""
    verts = c._keys[i][n]
    out = {}
    if c.polyhedral and i == 2:
        m = len(verts)
        for j in range(m):
            a, b = verts[j], verts[(j + 1) % m]
            out[c._index[1][tuple(sorted((a, b)))]] = 1 if a < b else -1
        return out
    for m_, _ in enumerate(verts):
        sub = verts[:m_] + verts[m_ + 1:]
        out[c._index[i - 1][sub]] = (-1) ** m_
    return out


def boundary_matrix_relative(c: EmbeddedComplex, i: int, row_basis=None, col_basis=None) -> BoundaryMatrix:
    """∂_i of the chain complex of (Δ, ∂Δ).

    Rows are interior (i-1)-faces, columns interior i-faces (all k-faces
    when i = k).  Optional bases are lists of oriented vertex tuples; the
    matrix is then written in those bases, signs included.
    """
    k = c.k
    if not 0 <= i <= k:
        raise ValueError(f"boundary index {i} outside 0..{k}")
    cols = c.interior(i)
    rows = c.interior(i - 1) if i > 0 else []
    row_sign = [1] * len(rows)
    col_sign = [1] * len(cols)
    if row_basis is not None:
        rows, row_sign = _reorder(c, i - 1, rows, row_basis)
    if col_basis is not None:
        cols, col_sign = _reorder(c, i, cols, col_basis)
    elif i == k and not c.polyhedral:
        # orient top simplices like the ambient space so kernels are actual splines
        col_sign = [ambient_orientation(c, n) for n in cols]
    rpos = {r: a for a, r in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    if i > 0:
        for b, col in enumerate(cols):
            for r, s in _incidence(c, i, col).items():
                if r in rpos:
                    a = rpos[r]
                    M[a][b] = s * row_sign[a] * col_sign[b]
    return BoundaryMatrix(i, M, rows, cols)


def ambient_orientation(c: EmbeddedComplex, n: int) -> int:
    """Sign of the stored vertex order of top simplex n against the ambient orientation."""
    verts = [c.vertices[v] for v in c._keys[c.k][n]]
    d = _det([[a - b for a, b in zip(v, verts[0])] for v in verts[1:]])
    return 1 if d > 0 else -1


def _reorder(c, i, ids, basis):
    ids = set(ids)
    out, signs = [], []
    for oriented in basis:
        n = c.face_id(i, oriented)
        if n not in ids:
            raise ComplexError(f"{list(oriented)} is not in the requested face set")
        out.append(n)
        signs.append(orientation_sign(c, i, n, oriented))
    if set(out) != ids or len(out) != len(ids):
        raise ComplexError("basis must list every face exactly once")
    return out, signs


def smoothness_exponents(c: EmbeddedComplex, alpha) -> dict[int, int]:
    """Normalize r, a list (interior facet order) or a mapping to {facet id: smoothness}."""
    interior = c.interior(c.k - 1)
    if isinstance(alpha, int):
        out = {e: alpha for e in interior}
    elif isinstance(alpha, Mapping):
        out = {}
        for key, v in alpha.items():
            e = c.face_id(c.k - 1, key) if isinstance(key, (tuple, list)) else int(key)
            out[e] = int(v)
        missing = set(interior) - set(out)
        if missing:
            raise ComplexError(f"no smoothness given for interior faces {sorted(missing)}")
        if set(out) - set(interior):
            raise ComplexError("smoothness given for a non-interior face")
    else:
        alpha = list(alpha)
        if len(alpha) != len(interior):
            raise ComplexError(f"expected {len(interior)} smoothness values, got {len(alpha)}")
        out = dict(zip(interior, (int(a) for a in alpha)))
    if any(v < 0 for v in out.values()):
        raise ComplexError("smoothness orders must be non-negative")
    return out


def interior_face_forms(c: EmbeddedComplex, alpha) -> dict[int, Polynomial]:
    """{interior facet id: l_tau^(alpha_tau + 1)} in k+1 homogeneous variables."""
    exps = smoothness_exponents(c, alpha)
    return {e: power(c.face_form(e), a + 1) for e, a in exps.items()}


def distinct_hyperplane_count(c: EmbeddedComplex, v: int, dim: int = 0) -> int:
    """Number of distinct spans among the (k-1)-faces containing an interior face."""
    if not c.is_interior(dim, v):
        raise ComplexError(f"face {list(c.face_vertices(dim, v))} is not interior")
    forms = {c.face_form(e) for e in c.faces_containing(dim, v, c.k - 1)}
    return len(forms)


def is_star(c: EmbeddedComplex) -> bool:
    """True when there is one interior vertex and every maximal face contains it."""
    if c.f0(0) != 1:
        return False
    v = c.face_vertices(0, c.interior(0)[0])[0]
    return all(v in f for f in c._tops)


def affine_rank(points) -> int:
    rows = [[a - b for a, b in zip(p, points[0])] for p in points[1:]]
    return rank(rows) if rows else 0
