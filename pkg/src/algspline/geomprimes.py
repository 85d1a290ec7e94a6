"""
Codimension-two loci of a planar polyhedral complex and their face graphs.

Every interior edge spans a line, which on the cone is a plane through the
origin with a primitive integer normal.  Candidate loci ξ are projective
points where two or more of these lines meet (points at infinity included).
For a locus, the graph has one node per 2-face with an edge whose line
passes through ξ and one edge per interior edge through ξ.  Cycle
components carry ideals generated by powers of the edge forms; their
colengths are the constant-term corrections of the Hilbert polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .cellcomplex import ComplexError, EmbeddedComplex
from .closedforms import colength, cycle_constant, minimal_generators, syzygy_data
from .polyring import LinearForm


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _normalize_point(p) -> tuple[int, int, int]:
    g = 0
    for x in p:
        g = gcd(g, int(x))
    p = tuple(int(x) // g for x in p)
    # z > 0 for affine points; otherwise first nonzero positive
    lead = p[2] if p[2] else next(x for x in p if x)
    return tuple(-x for x in p) if lead < 0 else p


@dataclass(frozen=True)
class XiLocus:
    point: tuple                 # primitive integer (x, y, z); z = 0 means at infinity
    edges: tuple                 # interior edge ids whose line passes through the point
    n_lines: int                 # number of distinct lines among them

    @property
    def at_infinity(self) -> bool:
        return self.point[2] == 0

    @property
    def affine(self) -> tuple | None:
        if self.at_infinity:
            return None
        return (Fraction(self.point[0], self.point[2]), Fraction(self.point[1], self.point[2]))

    def to_json(self) -> dict:
        aff = self.affine
        return {"point": list(self.point), "affine": [str(x) for x in aff] if aff else None,
                "at_infinity": self.at_infinity, "edges": list(self.edges), "n_lines": self.n_lines}


def xi_candidates(c: EmbeddedComplex, min_lines: int = 2) -> list[XiLocus]:
    """Projective points lying on at least ``min_lines`` distinct interior edge lines."""
    if c.k != 2:
        raise ComplexError("loci are computed for planar complexes")
    edges = c.interior(1)
    forms = {e: c.face_form(e).integer_coefficients() for e in edges}
    lines = sorted(set(forms.values()))
    points = set()
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = _cross(lines[i], lines[j])
            if any(p):
                points.add(_normalize_point(p))
    out = []
    for p in points:
        on = tuple(e for e in edges if sum(a * b for a, b in zip(forms[e], p)) == 0)
        n = len({forms[e] for e in on})
        if n >= min_lines:
            out.append(XiLocus(p, on, n))
    out.sort(key=lambda x: (x.at_infinity, -x.n_lines, x.point))
    return out


def locus_at(c: EmbeddedComplex, point: Sequence) -> XiLocus:
    """Locus for an affine point (x, y) or a projective triple."""
    if len(point) == 2:
        fx, fy = Fraction(point[0]), Fraction(point[1])
        den = fx.denominator * fy.denominator
        p = (int(fx * den), int(fy * den), den)
    else:
        p = tuple(int(x) for x in point)
    p = _normalize_point(p)
    forms = {e: c.face_form(e).integer_coefficients() for e in c.interior(1)}
    on = tuple(e for e, f in forms.items() if sum(a * b for a, b in zip(f, p)) == 0)
    return XiLocus(p, on, len({forms[e] for e in on}))


@dataclass
class XiGraph:
    locus: XiLocus
    nodes: list                   # 2-face ids
    edges: list                   # (face, face, interior edge id)
    components: list = field(default_factory=list)   # [{"kind", "faces", "edges"}]

    def valence(self, node: int) -> int:
        return sum((a == node) + (b == node) for a, b, _ in self.edges)

    @property
    def cycles(self) -> list:
        return [comp for comp in self.components if comp["kind"] == "cycle"]

    @property
    def is_acyclic(self) -> bool:
        return not self.cycles

    def to_json(self) -> dict:
        return {"locus": self.locus.to_json(), "nodes": self.nodes,
                "edges": [list(e) for e in self.edges], "components": self.components}


def build_xi_graph(c: EmbeddedComplex, xi: XiLocus | Sequence) -> XiGraph:
    """The graph of 2-faces around a codimension-two locus.

    Raises ComplexError if some face has three or more edges through ξ,
    which only happens for degenerate (non-convex or flat) faces.
    """
    if not isinstance(xi, XiLocus):
        xi = locus_at(c, xi)
    p = xi.point

    def through(e):
        f = c.face_form(e).integer_coefficients()
        return sum(a * b for a, b in zip(f, p)) == 0

    nodes = []
    for t in range(c.f(2)):
        hits = [e for e in c.facets(t) if through(e)]
        if len(hits) > 2:
            raise ComplexError(f"face {list(c.face_vertices(2, t))} has {len(hits)} edges through {list(p)}")
        if hits:
            nodes.append(t)
    gedges = []
    for e in c.interior(1):
        if through(e):
            a, b = c.cofaces(e)
            gedges.append((a, b, e))
    g = XiGraph(xi, nodes, gedges)
    for node in nodes:
        if g.valence(node) > 2:
            raise ComplexError(f"face {node} has valence {g.valence(node)} at {list(p)}")
    # components
    adj = {v: [] for v in nodes}
    for a, b, e in gedges:
        adj[a].append((b, e))
        adj[b].append((a, e))
    seen = set()
    for start in nodes:
        if start in seen:
            continue
        # walk from an end if there is one so paths come out in order
        comp = _collect(start, adj)
        seen.update(comp)
        ends = [v for v in comp if len(adj[v]) < 2]
        order, used = _walk(ends[0] if ends else min(comp), adj)
        kind = "cycle" if len(used) == len(comp) and not ends and len(comp) >= 2 else "path"
        g.components.append({"kind": kind, "faces": order, "edges": used})
    return g


def _collect(start, adj):
    comp = {start}
    stack = [start]
    while stack:
        for w, _ in adj[stack.pop()]:
            if w not in comp:
                comp.add(w)
                stack.append(w)
    return comp


def _walk(start, adj):
    order = [start]
    used = []
    prev_edge = None
    cur = start
    while True:
        nxt = [(w, e) for w, e in sorted(adj[cur], key=lambda x: x[1]) if e != prev_edge and e not in used]
        if not nxt:
            break
        w, e = nxt[0]
        used.append(e)
        if w == start:
            break
        order.append(w)
        prev_edge, cur = e, w
    return order, used


@dataclass
class CycleData:
    locus: XiLocus
    faces: list
    edges: list
    forms: list                  # distinct forms in pencil coordinates (a, b)
    exponents: list              # minimal generator exponents, ascending
    all_exponents: list          # exponents after dedupe, before the minimality filter
    contribution: Fraction

    @property
    def n(self) -> int:
        return len(self.exponents)

    def to_json(self) -> dict:
        out = {"locus": list(self.locus.point), "faces": self.faces, "edges": self.edges,
               "n": self.n, "exponents": self.exponents, "distinct_exponents": self.all_exponents,
               "c": str(self.contribution)}
        if self.n >= 2:
            data = syzygy_data(self.exponents)
            out.update({"omega": data.omega, "a": data.a})
            if data.r is not None:
                out.update({"alpha": data.alpha_psi, "s1": data.s1, "s2": data.s2})
        return out


def pencil_coordinates(p: Sequence[int], form: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Coordinates of a form vanishing at p in a fixed basis of such forms."""
    basis = pencil_basis(p)
    # solve form = a*b0 + b*b1 using two independent coordinates
    b0, b1 = basis
    for i in range(3):
        for j in range(i + 1, 3):
            det = b0[i] * b1[j] - b0[j] * b1[i]
            if det:
                a = Fraction(form[i] * b1[j] - form[j] * b1[i], det)
                b = Fraction(b0[i] * form[j] - b0[j] * form[i], det)
                if any(a * x + b * y != z for x, y, z in zip(b0, b1, form)):
                    raise ValueError("form does not vanish at the locus")
                return a, b
    raise ValueError("degenerate pencil basis")


def pencil_basis(p: Sequence[int]):
    """Two independent integer forms vanishing at the projective point p."""
    x, y, z = p
    cands = [(y, -x, 0), (z, 0, -x), (0, z, -y)]
    cands = [v for v in cands if any(v)]
    b0 = cands[0]
    for v in cands[1:]:
        if any(_cross(b0, v)):
            return b0, v
    raise ValueError("zero point")


def cycle_ideals(c: EmbeddedComplex, xi, alpha, graph: XiGraph | None = None) -> list[CycleData]:
    """One entry per cycle component of the graph at ξ."""
    from .splinemod import ExponentVector

    av = ExponentVector.build(c, alpha)
    exps = av.as_dict()
    if graph is None:
        graph = build_xi_graph(c, xi)
    p = graph.locus.point
    out = []
    for comp in graph.cycles:
        best: dict = {}
        for e in comp["edges"]:
            f = c.face_form(e).integer_coefficients()
            a, b = pencil_coordinates(p, f)
            key = LinearForm((a, b)).primitive().integer_coefficients()
            best[key] = min(exps[e] + 1, best.get(key, exps[e] + 1))
        items = sorted(best.items(), key=lambda kv: (kv[1], kv[0]))
        all_exps = [e for _, e in items]
        mins = minimal_generators(all_exps)
        forms = [list(f) for f, _ in items[:len(mins)]]
        contribution = Fraction(colength(mins)) if len(mins) >= 2 else Fraction(0)
        if len(set(mins)) == 1 and len(mins) >= 2:
            assert contribution == cycle_constant(len(mins), mins[0] - 1)
        out.append(CycleData(graph.locus, comp["faces"], comp["edges"], forms, mins, all_exps,
                             contribution))
    return out
