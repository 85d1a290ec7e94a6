"""
Golden suites: reference values checked against the computations.

Each suite returns a list of GoldenItem.  Expected polynomials and series
are literal reference data; everything else is a comparison between two
independent computations (closed form versus rank oracle, or two complexes).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .cellcomplex import validate
from .chainhomology import build_rj_complex, euler_check, hpdim_probe, local_series_formula
from .closedforms import (minimal_generators, mixed_hf, omega, plf_dim,
                          planar_main, resolution_hf, schumaker_lower_bound, star_dimension)
from .fixtures import PLANAR_SIMPLICIAL, SPATIAL, STARS, load_fixture
from .invsys import (FatPointScheme, annihilator_dim, fatpoints_hf, general_points, ideal_dim,
                     expected_hf, inverse_system_span_dim, powers_rank, random_forms)
from .polyring import GeneratingSeries, binom
from .splinemod import SplineSystem, fit_hilbert_polynomial

TH_TABLE = {
    "th": ["2d^2+2", "2d^2-6d+10", "2d^2-12d+32", "2d^2-18d+64", "2d^2-24d+110"],
    "th_perturbed": ["2d^2+1", "2d^2-6d+7", "2d^2-12d+25", "2d^2-18d+52", "2d^2-24d+91"],
}
TH_DECOMPOSITION = {  # r: (leading part, face constant, cycle total)
    0: ("2d^2", -2, 4), 1: ("2d^2-6d", -2, 12), 2: ("2d^2-12d", 4, 28),
    3: ("2d^2-18d", 16, 48), 4: ("2d^2-24d", 34, 76),
}


@dataclass
class GoldenItem:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.suite}: {self.name}" + (f" ({self.detail})" if self.detail else "")

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "ok": self.ok, "detail": self.detail}


def th_table() -> list[GoldenItem]:
    out = []
    for name, column in TH_TABLE.items():
        c = load_fixture(name)
        for r, expected in enumerate(column):
            sys_ = SplineSystem(c, r)
            top = 3 * r + 12
            fit = fit_hilbert_polynomial({d: sys_.dim(d) for d in range(top + 1)}, 2)
            got = str(fit)
            out.append(GoldenItem("th-table", f"{name} r={r}", fit.stabilized and got == expected,
                                  f"got {got}, stable from d={fit.stabilization_degree}, expected {expected}"))
    return out


def planar_main_suite() -> list[GoldenItem]:
    out = []
    c = load_fixture("th")
    for r, (lead, const, cycles) in TH_DECOMPOSITION.items():
        rep = planar_main(c, r)
        a = (r + 1) // 2
        ok = (str(rep) == TH_TABLE["th"][r] and rep.to_json()["leading_part"] == lead
              and rep.face_constant == const and rep.cycle_total == cycles
              and cycles == 4 * (binom(r + 2, 2) + a * (r - a)))
        out.append(GoldenItem("planar-main", f"th r={r}", ok,
                              f"{rep} = [{rep.to_json()['leading_part']}] + [{rep.face_constant}] + [{rep.cycle_total}]"))
    cp = load_fixture("th_perturbed")
    for r in range(5):
        rep = planar_main(cp, r)
        a = (r + 1) // 2
        full = planar_main(c, r)
        drop = full.coefficients[0] - rep.coefficients[0]
        ok = str(rep) == TH_TABLE["th_perturbed"][r] and drop == binom(r + 2, 2) + a * (r - a)
        out.append(GoldenItem("planar-main", f"th_perturbed r={r}", ok, f"{rep}, drop {drop}"))
    return out


def octahedron(max_degree: int = 12, max_r: int = 3) -> list[GoldenItem]:
    out = []
    c = load_fixture("octahedron")
    for r in range(max_r + 1):
        cx = build_rj_complex(c, r)
        h = [(i, d) for i in (1, 2) for d in range(max_degree + 1) if cx.homology_dim(i, d)]
        out.append(GoldenItem("octahedron", f"r={r} H1=H2=0 for d<={max_degree}", not h,
                              f"nonzero at {h}" if h else ""))
        s = local_series_formula(c, r, max_degree + 4)
        e = r + 1
        expected = GeneratingSeries(tuple(_sparse({0: 1, e: 3, 2 * e: 3, 3 * e: 1})), 4)
        out.append(GoldenItem("octahedron", f"r={r} local series", s == expected, str(s)))
        sys_ = SplineSystem(c, r)
        bad = [d for d in range(max_degree + 1) if s.coefficient(d) != sys_.dim(d)]
        out.append(GoldenItem("octahedron", f"r={r} series coefficients = spline dims", not bad,
                              f"mismatch at {bad}" if bad else ""))
    return out


def _sparse(d: dict) -> list:
    out = [0] * (max(d) + 1)
    for k, v in d.items():
        out[k] += v
    return out


def star(max_degree: int = 15, max_r: int = 3) -> list[GoldenItem]:
    out = []
    for name in STARS:
        c = load_fixture(name)
        bad = []
        for r in range(max_r + 1):
            sys_ = SplineSystem(c, r)
            bad += [(r, d) for d in range(max_degree + 1) if star_dimension(c, r, d) != sys_.dim(d)]
        out.append(GoldenItem("star", f"{name} r<={max_r} d<={max_degree}", not bad,
                              f"mismatch at {bad[:5]}" if bad else ""))
    return out


def schumaker(max_degree: int = 15, max_r: int = 3) -> list[GoldenItem]:
    out = []
    for name in PLANAR_SIMPLICIAL:
        c = load_fixture(name)
        below, unequal = [], []
        for r in range(max_r + 1):
            sys_ = SplineSystem(c, r)
            for d in range(max_degree + 1):
                lb, dim = schumaker_lower_bound(c, r, d), sys_.dim(d)
                if lb > dim:
                    below.append((r, d))
                if d >= 3 * r + 2 and lb != dim:
                    unequal.append((r, d))
        out.append(GoldenItem("schumaker", f"{name} bound <= dim", not below, f"violations {below[:5]}" if below else ""))
        out.append(GoldenItem("schumaker", f"{name} equality for d >= 3r+2", not unequal,
                              f"differs at {unequal[:5]}" if unequal else ""))
    return out


def minimal_exponent_vectors(max_sum: int = 14) -> list[tuple]:
    """Sorted exponent vectors with positive entries, sum <= max_sum, that are minimal generators."""
    out = []

    def rec(prefix, lo, remaining):
        if prefix:
            out.append(tuple(prefix))
        for a in range(lo, remaining + 1):
            cand = prefix + [a]
            if minimal_generators(cand) == cand:
                rec(cand, a, remaining - a)

    rec([], 1, max_sum)
    return out


def plf(max_sum: int = 14, n_sets: int = 20, seed: int = 0) -> list[GoldenItem]:
    vectors = minimal_exponent_vectors(max_sum)
    max_len = max(len(v) for v in vectors)
    form_sets = [random_forms(max_len, seed=seed + s) for s in range(n_sets)]
    bad_plf, bad_hf, bad_res = [], [], []
    for alpha in vectors:
        top = (omega(alpha) + 3) if len(alpha) >= 2 else max(alpha) + 3
        for s, forms in enumerate(form_sets):
            for t in range(top + 1):
                oracle = powers_rank(forms[:len(alpha)], alpha, t)
                if plf_dim(alpha, t) != oracle:
                    bad_plf.append((alpha, s, t))
                if mixed_hf(alpha, t) != t + 1 - oracle and len(alpha) >= 2:
                    bad_hf.append((alpha, s, t))
        if len(alpha) >= 2:
            for t in range(omega(alpha) + 4):
                if resolution_hf(alpha, t) != mixed_hf(alpha, t):
                    bad_res.append((alpha, t))
    n = len(vectors)
    return [
        GoldenItem("plf", f"plf_dim = rank oracle ({n} vectors x {n_sets} form sets)", not bad_plf, str(bad_plf[:3]) if bad_plf else ""),
        GoldenItem("plf", "mixed_hf = t+1 - rank oracle", not bad_hf, str(bad_hf[:3]) if bad_hf else ""),
        GoldenItem("plf", "resolution Hilbert function = mixed_hf", not bad_res, str(bad_res[:3]) if bad_res else ""),
    ]


def top_homology(max_degree: int = 10, max_r: int = 2, names=None) -> list[GoldenItem]:
    out = []
    for name in names or (PLANAR_SIMPLICIAL + SPATIAL):
        c = load_fixture(name)
        bad = []
        for r in range(max_r + 1):
            rj, ri, sys_ = build_rj_complex(c, r, "rj"), build_rj_complex(c, r, "ri"), SplineSystem(c, r)
            for d in range(max_degree + 1):
                a, b, s = rj.homology_dim(c.k, d), ri.homology_dim(c.k, d), sys_.dim(d)
                if not a == b == s:
                    bad.append((r, d, a, b, s))
        out.append(GoldenItem("top-homology", f"{name} r<={max_r} d<={max_degree}", not bad, str(bad[:3]) if bad else ""))
    return out


def euler(max_degree: int = 8, max_r: int = 2) -> list[GoldenItem]:
    out = []
    for name in PLANAR_SIMPLICIAL + SPATIAL + ("th", "th_perturbed"):
        c = load_fixture(name)
        variants = ("rj", "ri", "r") if c.is_simplicial() else ("rj", "r")
        bad = []
        for r in range(max_r + 1):
            for v in variants:
                cx = build_rj_complex(c, r, v)
                bad += [(r, v, d) for d in range(max_degree + 1) if not euler_check(cx, d).ok]
        out.append(GoldenItem("euler", f"{name}", not bad, str(bad[:3]) if bad else ""))
    return out


def hpdim(max_degree: int = 12, max_r: int = 2) -> list[GoldenItem]:
    out = []
    for name in PLANAR_SIMPLICIAL:
        c = load_fixture(name)
        for r in range(max_r + 1):
            for i in (0, 1):
                rep = hpdim_probe(c, r, i, range(max_degree + 1))
                out.append(GoldenItem("hpdim", f"{name} r={r} H{i}", rep.degree <= i - 2,
                                      f"degree {rep.to_json()['degree']}"))
    c = load_fixture("tetra_split")
    for r in range(2):
        rep = hpdim_probe(c, r, 2, range(max_degree + 1))
        out.append(GoldenItem("hpdim", f"tetra_split r={r} H2", rep.degree <= 0, f"degree {rep.to_json()['degree']}"))
    return out


def fatpoint_schemes(seed: int = 0) -> dict:
    gp = general_points(6, seed=seed)
    schemes = {
        "two double points": FatPointScheme([(1, 0, 1), (0, 1, 1)], [2, 2]),
        "five general double points": FatPointScheme(gp[:5], [2] * 5),
        "one simple point": FatPointScheme([(2, 3, 1)], [1]),
        "three triple points": FatPointScheme(gp[:3], [3, 3, 3]),
        "six mixed points": FatPointScheme(gp, [1, 2, 3, 1, 2, 3]),
        "four collinear double points": FatPointScheme([(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)], [2] * 4),
        "two points on the line": FatPointScheme([(1, 0), (1, 1)], [2, 2]),
        "three points on the line": FatPointScheme([(1, 0), (0, 1), (1, 1)], [3, 1, 2]),
    }
    return schemes


def fatpoints(max_degree: int = 8, seed: int = 0) -> list[GoldenItem]:
    out = []
    for label, X in fatpoint_schemes(seed).items():
        bad = []
        for j in range(max_degree + 1):
            hf = fatpoints_hf(X, j)
            if not hf == annihilator_dim(X, j) == inverse_system_span_dim(X, j):
                bad.append(j)
        out.append(GoldenItem("fatpoints", f"{label}: hf = annihilator = span, j<={max_degree}", not bad,
                              f"differs at {bad}" if bad else ""))
    schemes = fatpoint_schemes(seed)
    for label, j in (("two double points", 2), ("five general double points", 4)):
        X = schemes[label]
        deficit = ideal_dim(X, j) - expected_hf(X, j)["ideal"]
        out.append(GoldenItem("fatpoints", f"{label} deficit at j={j}", deficit == 1, f"deficit {deficit}"))
    return out


def validation() -> list[GoldenItem]:
    from .fixtures import fixture_names
    return [GoldenItem("fixtures", name, not validate(load_fixture(name)), "; ".join(validate(load_fixture(name))))
            for name in fixture_names()]


SUITES: dict[str, Callable[[], list[GoldenItem]]] = {
    "fixtures": validation,
    "th-table": th_table,
    "planar-main": planar_main_suite,
    "octahedron": octahedron,
    "star": star,
    "schumaker": schumaker,
    "plf": plf,
    "top-homology": top_homology,
    "euler": euler,
    "hpdim": hpdim,
    "fatpoints": fatpoints,
}


def run_suite(name: str) -> list[GoldenItem]:
    if name == "all":
        return [item for suite in SUITES.values() for item in suite()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return SUITES[name]()
