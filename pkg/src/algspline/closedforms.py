"""
Closed-form dimension counts.

Planar spline bounds, ideals generated by powers of linear forms in two
variables (dimensions, minimal generators, resolutions), and the Hilbert
polynomial of planar polyhedral spline spaces assembled from per-cycle
contributions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cellcomplex import ComplexError, EmbeddedComplex, distinct_hyperplane_count, is_star
from .polyring import binom, format_univariate


def _binom_poly(shift: int, k: int) -> list[Fraction]:
    """Coefficients in d of C(d + shift, k) as a polynomial (valid for d + shift >= 0)."""
    coeffs = [Fraction(1)]
    for i in range(k):
        # multiply by (d + shift - i)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j] += c * (shift - i)
            nxt[j + 1] += c
        coeffs = nxt
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return [c / fact for c in coeffs]


def _add(a, b, scale=1):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += scale * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


# planar simplicial formulas


def _slope_sum(r: int, d: int, n: int) -> int:
    return sum(max(r + 1 + j * (1 - n), 0) for j in range(1, d - r + 1))


def schumaker_lower_bound(c: EmbeddedComplex, r: int, d: int) -> int:
    """Lower bound for dim S^r_d on a planar triangulation.

    Sum over interior vertices of the slope terms runs over j = 1..d-r, and
    the vertex correction uses C(min(d, r)+2, 2) so that the count is also
    right below degree r.
    """
    if c.k != 2 or not c.is_simplicial():
        raise ComplexError("the lower bound is for planar triangulations")
    f10 = c.f0(1)
    f00 = c.f0(0)
    total = binom(d + 2, 2) + binom(d - r + 1, 2) * f10
    total -= (binom(d + 2, 2) - binom(min(d, r) + 2, 2)) * f00
    for v in c.interior(0):
        total += _slope_sum(r, d, distinct_hyperplane_count(c, v))
    return total


def star_dimension(c: EmbeddedComplex, r: int, d: int) -> int:
    """dim S^r_d on the star of a single interior vertex, exact in every degree."""
    if c.k != 2 or not c.is_simplicial():
        raise ComplexError("the star formula is for planar triangulations")
    if not is_star(c):
        raise ComplexError("complex is not the star of a single interior vertex")
    n = distinct_hyperplane_count(c, c.interior(0)[0])
    return star_formula(c.f0(1), n, r, d)


def star_formula(f10: int, n: int, r: int, d: int) -> int:
    if d < 0:
        return 0
    return (binom(d + 2, 2) + binom(d - r + 1, 2) * f10
            - (binom(d + 2, 2) - binom(min(d, r) + 2, 2)) + _slope_sum(r, d, n))


# powers of linear forms in two variables


def plf_dim(alpha: Sequence[int], t: int) -> int:
    """dim J_t for J generated by l_i^alpha_i, pairwise independent forms in two variables."""
    if t < 0:
        return 0
    return min(t + 1, sum(max(t - a + 1, 0) for a in alpha))


def minimal_generators(alpha: Sequence[int]) -> list[int]:
    """Longest prefix of a sorted exponent list whose powers minimally generate."""
    alpha = list(alpha)
    if not alpha:
        raise ValueError("need at least one exponent")
    if any(a < 1 for a in alpha):
        raise ValueError("exponents must be positive")
    if alpha != sorted(alpha):
        raise ValueError(f"exponents must be sorted ascending, got {alpha}")
    kept = alpha[:2]
    for m in range(2, len(alpha)):
        # kept has m entries here
        if (m - 1) * alpha[m] <= sum(kept) - m:
            kept.append(alpha[m])
        else:
            break
    return kept


def omega(alpha: Sequence[int]) -> int:
    """Least degree where S/J vanishes; the socle degree is omega - 1."""
    t = len(alpha)
    if t < 2:
        raise ValueError("omega needs at least two generators")
    return (sum(alpha) - t) // (t - 1) + 1


def mixed_hf(alpha: Sequence[int], i: int) -> int:
    """H(S/J, i) = max(0, i + 1 - d_i) with d_i = sum max(i - alpha_j + 1, 0)."""
    if i < 0:
        return 0
    d_i = sum(max(i - a + 1, 0) for a in alpha)
    return max(0, i + 1 - d_i)


@dataclass
class SyzygyData:
    """Numerical data of J = <l_1^alpha_1, ..., l_t^alpha_t> in two variables."""

    alpha: tuple
    omega: int
    a: int
    # line-arrangement data, filled for uniform exponents r+1
    r: int | None = None
    alpha_psi: int | None = None
    s1: int | None = None
    s2: int | None = None

    @property
    def t(self) -> int:
        return len(self.alpha)

    @property
    def syzygy_shifts(self) -> list[tuple[int, int]]:
        """[(shift, multiplicity)] of the second module in the resolution."""
        out = []
        if self.a:
            out.append((self.omega + 1, self.a))
        if self.t - 1 - self.a:
            out.append((self.omega, self.t - 1 - self.a))
        return out

    def resolution_text(self) -> str:
        syz = " + ".join(f"S(-{s})^{m}" if m > 1 else f"S(-{s})" for s, m in self.syzygy_shifts) or "0"
        counts: dict = {}
        for a in self.alpha:
            counts[a] = counts.get(a, 0) + 1
        gens = " + ".join(f"S(-{a})^{m}" if m > 1 else f"S(-{a})" for a, m in sorted(counts.items()))
        return f"0 -> {syz} -> {gens} -> J -> 0"

    def to_json(self) -> dict:
        out = {"alpha": list(self.alpha), "t": self.t, "omega": self.omega, "a": self.a,
               "socle_degree": self.omega - 1,
               "syzygies": [{"shift": s, "multiplicity": m} for s, m in self.syzygy_shifts],
               "resolution": self.resolution_text()}
        if self.r is not None:
            out.update({"r": self.r, "alpha_psi": self.alpha_psi, "s1": self.s1, "s2": self.s2})
        return out


def syzygy_data(alpha: Sequence[int]) -> SyzygyData:
    alpha = tuple(alpha)
    if len(alpha) < 2:
        raise ValueError("resolution data needs at least two generators")
    if list(alpha) != minimal_generators(alpha):
        raise ValueError(f"exponents {list(alpha)} are not a minimal generating set")
    om = omega(alpha)
    a = sum(alpha) + (1 - len(alpha)) * om
    data = SyzygyData(alpha, om, a)
    if len(set(alpha)) == 1:
        r = alpha[0] - 1
        ap, s1, s2 = line_syzygies(len(alpha), r)
        data.r, data.alpha_psi, data.s1, data.s2 = r, ap, s1, s2
    return data


def resolution_hf(alpha: Sequence[int], i: int) -> int:
    """H(S/J, i) read off the resolution 0 -> F2 -> F1 -> S -> S/J -> 0."""
    data = syzygy_data(alpha)
    val = binom(i + 1, 1)
    val -= sum(binom(i - a + 1, 1) for a in data.alpha)
    val += sum(m * binom(i - s + 1, 1) for s, m in data.syzygy_shifts)
    return val


def line_syzygies(n: int, r: int) -> tuple[int, int, int]:
    """(alpha, s1, s2) for n minimal generators l_i^(r+1)."""
    if n < 2:
        raise ValueError("need at least two generators")
    ap = (r + 1) // (n - 1)
    return ap, (n - 1) * ap + n - r - 2, r + 1 - (n - 1) * ap


def rmodi_hilbert_poly(n: int, r: int, k: int) -> list[Fraction]:
    """Hilbert polynomial in d of R/<l_1^(r+1), ..., l_n^(r+1)>, R with k+1 variables."""
    ap, s1, s2 = line_syzygies(n, r)
    p = _binom_poly(k, k)
    p = _add(p, _binom_poly(k - r - 1, k), -n)
    p = _add(p, _binom_poly(k - r - 1 - ap, k), s1)
    p = _add(p, _binom_poly(k - r - 2 - ap, k), s2)
    return p


def cycle_constant(n: int, r: int) -> Fraction:
    """Contribution of one cycle with n minimal generators of exponent r+1."""
    ap, _, _ = line_syzygies(n, r)
    return binom(r + 2, 2) + Fraction(ap, 2) * (2 * r + 3 + ap - n * (1 + ap))


def cycle_constant_from_resolution(n: int, r: int) -> int:
    ap, s1, s2 = line_syzygies(n, r)
    return 1 - n * binom(r, 2) + s1 * binom(r + ap, 2) + s2 * binom(r + ap + 1, 2)


def colength(alpha: Sequence[int]) -> int:
    """dim S/J = sum of H(S/J, i), finite since J has two or more generators."""
    return sum(mixed_hf(alpha, i) for i in range(omega(alpha)))


# Hilbert polynomial of planar polyhedral splines


@dataclass
class PlanarMainReport:
    r: int | None
    coefficients: list                       # low degree first
    leading_part: list                       # quadratic and linear terms
    face_constant: Fraction                  # f_2 + (C(r,2)-1) f_1^0 for uniform r
    cycle_total: Fraction
    cycles: list = field(default_factory=list)  # per-cycle dicts

    def __str__(self):
        return format_univariate(self.coefficients)

    def to_json(self) -> dict:
        return {"r": self.r, "polynomial": str(self),
                "coefficients": [str(Fraction(c)) for c in self.coefficients],
                "leading_part": format_univariate(self.leading_part),
                "face_constant": str(self.face_constant),
                "cycle_total": str(self.cycle_total), "cycles": self.cycles}


def planar_main(c: EmbeddedComplex, alpha, min_lines: int = 2) -> PlanarMainReport:
    """Hilbert polynomial of S^alpha(P) for a planar polyhedral complex.

    The cycle contributions are summed over every locus from
    ``xi_candidates``; each is the colength of S/J for the minimal
    generators of its cycle ideal, which for uniform smoothness equals the
    closed expression in ``cycle_constant``.
    """
    from .geomprimes import build_xi_graph, cycle_ideals, xi_candidates
    from .splinemod import ExponentVector

    if c.k != 2:
        raise ComplexError("planar_main needs a planar complex")
    av = ExponentVector.build(c, alpha)
    r = av.uniform_value()
    f2 = c.f(2)
    exps = av.as_dict()
    # f_2 C(d+2,2) - sum_tau [C(d+2,2) - C(d+2-e,2)]
    poly = [Fraction(0)]
    poly = _add(poly, _binom_poly(2, 2), f2)
    for e in c.interior(1):
        poly = _add(poly, _binom_poly(2, 2), -1)
        poly = _add(poly, _binom_poly(2 - exps[e] - 1, 2), 1)
    cycles = []
    cycle_total = Fraction(0)
    for xi in xi_candidates(c, min_lines=min_lines):
        graph = build_xi_graph(c, xi)
        for cyc in cycle_ideals(c, xi, av, graph=graph):
            cycle_total += cyc.contribution
            cycles.append(cyc.to_json())
    poly = _add(poly, [cycle_total])
    poly = [Fraction(x) for x in poly] + [Fraction(0)] * (3 - len(poly))
    leading = [Fraction(0), poly[1], poly[2]]
    face_const = poly[0] - cycle_total
    if r is not None:
        f10 = c.f0(1)
        expected = [Fraction(f2 + (binom(r, 2) - 1) * f10),
                    Fraction(3 * f2 - 2 * (r + 1) * f10, 2), Fraction(f2, 2)]
        assert [face_const, poly[1], poly[2]] == expected
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return PlanarMainReport(r, poly, leading, face_const, cycle_total, cycles)
