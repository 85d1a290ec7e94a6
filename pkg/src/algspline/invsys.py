"""
Inverse systems: differentiation action, fat points, powers of linear forms.

R acts on S (same number of variables) by letting x_i act as ∂/∂y_i.  For a
fat point scheme X = ∩ p_i^(m_i) the degree-j piece of R/I_X has the same
dimension as the annihilator of (I_X)_j in S_j, and as the span of the
powers l_p^(j - m_i + 1) times S_(m_i - 1).  All three are computed here by
exact linear algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .linalg import ComputationLimitError, nullspace, rank
from .polyring import (LinearForm, Polynomial, binom, graded_piece_matrix, monomial_basis,
 multiply, num_monomials, power)


def apolar_action(f: Polynomial, g: Polynomial) -> Polynomial:
    """f ∘ g: substitute ∂/∂y_i for x_i in f and apply to g."""
    if f.n_vars != g.n_vars:
        raise ValueError(f"variable counts differ: {f.n_vars} and {g.n_vars}")
    out = Polynomial(g.n_vars)
    for a, c in f.terms.items():
        h = g
        for i, times in enumerate(a):
            if times:
                h = h.derivative(i, times)
            if h.is_zero():
                break
        out = out + h * c
    return out


def _projectively_equal(p, q) -> bool:
    return all(p[i] * q[j] == p[j] * q[i] for i in range(len(p)) for j in range(len(p)))


@dataclass(frozen=True)
class FatPointScheme:
    """Points of P^n (homogeneous coordinates) with multiplicities m_i >= 1."""

    points: tuple
    mults: tuple

    def __post_init__(self):
        pts = tuple(tuple(Fraction(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))
        if len(pts) != len(self.mults):
            raise ValueError("one multiplicity per point is required")
        if pts and len({len(p) for p in pts}) != 1:
            raise ValueError("points have different numbers of coordinates")
        if any(m < 1 for m in self.mults):
            raise ValueError("multiplicities must be at least 1")
        for p in pts:
            if not any(p):
                raise ValueError("the zero vector is not a projective point")
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if _projectively_equal(pts[i], pts[j]):
                    raise ValueError(f"points {i} and {j} coincide")

    @property
    def n_vars(self) -> int:
        return len(self.points[0]) if self.points else 3

    @property
    def ambient_dim(self) -> int:
        return self.n_vars - 1

    def to_json(self) -> dict:
        return {"points": [[str(x) for x in p] for p in self.points], "mults": list(self.mults)}


MAX_CONDITIONS = 20_000


def condition_matrix(X: FatPointScheme, j: int) -> list[list[Fraction]]:
    """Rows: derivatives of order m_i - 1 at p_i; columns: degree-j monomials.

    For forms of degree j, vanishing of all order-(m-1) partials at p is
    equivalent to vanishing to order m at p.
    """
    n = X.n_vars
    mons = monomial_basis(n, j)
    rows = []
    for p, m in zip(X.points, X.mults):
        if m - 1 > j:
            # every degree-j form has all order m-1 partials zero; the point
            # still forces full vanishing of all lower ones, i.e. I_j = 0
            for b in monomial_basis(n, j):
                rows.append([Fraction(int(a == b)) for a in mons])
            continue
        for beta in monomial_basis(n, m - 1):
            row = []
            for a in mons:
                if any(x < y for x, y in zip(a, beta)):
                    row.append(Fraction(0))
                    continue
                v = Fraction(1)
                for ai, bi, pi in zip(a, beta, p):
                    v *= Fraction(factorial(ai), factorial(ai - bi)) * pi ** (ai - bi)
                row.append(v)
            rows.append(row)
    if len(rows) * len(mons) > MAX_CONDITIONS * 50:
        raise ComputationLimitError("fat point system too large")
    return rows


def fatpoints_hf(X: FatPointScheme, j: int) -> int:
    """dim (R/I_X)_j."""
    if j < 0:
        return 0
    rows = condition_matrix(X, j)
    return rank(rows) if rows else 0


def ideal_dim(X: FatPointScheme, j: int) -> int:
    return num_monomials(X.n_vars, j) - fatpoints_hf(X, j)


def ideal_basis(X: FatPointScheme, j: int) -> list[Polynomial]:
    n = X.n_vars
    mons = monomial_basis(n, j)
    rows = condition_matrix(X, j)
    vecs = nullspace(rows, len(mons)) if rows else [
        [Fraction(int(i == k)) for i in range(len(mons))] for k in range(len(mons))]
    return [Polynomial(n, {mons[i]: v[i] for i in range(len(mons)) if v[i]}) for v in vecs]


def annihilator_dim(X: FatPointScheme, j: int) -> int:
    """dim of {g in S_j : f ∘ g = 0 for all f in (I_X)_j}, through the apolar pairing."""
    if j < 0:
        return 0
    n = X.n_vars
    mons = monomial_basis(n, j)
    basis = ideal_basis(X, j)
    if not basis:
        return len(mons)
    pairing = []
    for f in basis:
        row = []
        for b in mons:
            val = apolar_action(f, Polynomial.monomial(b))
            row.append(val.coefficient((0,) * n))
        pairing.append(row)
    return len(mons) - rank(pairing)


def inverse_system_span_dim(X: FatPointScheme, j: int) -> int:
    """dim of l_{p_1}^(j-n_1) S_{n_1} + ... with n_i = m_i - 1 (S_j when j <= max n_i)."""
    n = X.n_vars
    if j < 0:
        return 0
    ns = [m - 1 for m in X.mults]
    if not ns:
        return 0
    if j <= max(ns):
        return num_monomials(n, j)
    gens = []
    for p, ni in zip(X.points, ns):
        lp = power(LinearForm(p), j - ni)
        for b in monomial_basis(n, ni):
            gens.append(multiply(lp, Polynomial.monomial(b)))
    M = graded_piece_matrix(gens, j)
    return rank(M) if M and M[0] else 0


def apolarity_check(X: FatPointScheme, j: int) -> dict:
    """Compare the three routes to dim (R/I_X)_j; 'ok' when all agree."""
    hf = fatpoints_hf(X, j)
    ann = annihilator_dim(X, j)
    span = inverse_system_span_dim(X, j)
    return {"degree": j, "hf": hf, "annihilator": ann, "span": span, "ok": hf == ann == span}


def expected_hf(X: FatPointScheme, j: int) -> dict:
    """Naive count: every point imposes C(m_i + n - 1, n) independent conditions."""
    n = X.ambient_dim
    total = num_monomials(X.n_vars, j)
    conditions = sum(binom(m + n - 1, n) for m in X.mults)
    quotient = min(total, conditions) if j >= 0 else 0
    return {"degree": j, "quotient": quotient, "ideal": max(0, total - conditions)}


@dataclass
class ShghRow:
    label: str
    degree: int
    expected: int
    actual: int

    @property
    def deficit(self) -> int:
        return self.actual - self.expected

    def to_json(self) -> dict:
        return {"scheme": self.label, "degree": self.degree, "expected_ideal_dim": self.expected,
                "actual_ideal_dim": self.actual, "deficit": self.deficit}


def shgh_scan(schemes: dict, degrees: Sequence[int]) -> list[ShghRow]:
    """Expected versus actual dim (I_X)_j for each named scheme and degree."""
    out = []
    for label, X in schemes.items():
        for j in degrees:
            out.append(ShghRow(label, j, expected_hf(X, j)["ideal"], ideal_dim(X, j)))
    return out


def _collinear(p, q, s) -> bool:
    det = (p[0] * (q[1] * s[2] - q[2] * s[1]) - p[1] * (q[0] * s[2] - q[2] * s[0])
           + p[2] * (q[0] * s[1] - q[1] * s[0]))
    return det == 0


def general_points(count: int, seed: int = 0, bound: int = 97, n_vars: int = 3) -> list[tuple]:
    """Pseudo-random integer points of P^(n_vars-1), last coordinate 1.

    Samples are drawn from a seeded generator and redrawn while two points
    coincide or (in the plane) three are collinear.
    """
    rng = random.Random(seed)
    pts: list[tuple] = []
    while len(pts) < count:
        cand = tuple(rng.randint(-bound, bound) for _ in range(n_vars - 1)) + (1,)
        if any(_projectively_equal(cand, p) for p in pts):
            continue
        if n_vars == 3 and any(_collinear(p, q, cand) for i, p in enumerate(pts) for q in pts[i + 1:]):
            continue
        pts.append(cand)
    return pts


def random_forms(count: int, seed: int = 0, bound: int = 50, n_vars: int = 2) -> list[LinearForm]:
    """Pairwise independent random integer linear forms."""
    rng = random.Random(seed)
    forms: list[LinearForm] = []
    while len(forms) < count:
        coeffs = tuple(rng.randint(-bound, bound) for _ in range(n_vars))
        if not any(coeffs):
            continue
        cand = LinearForm(coeffs)
        if any(cand.projectively_equal(f) for f in forms):
            continue
        forms.append(cand)
    return forms


def powers_rank(forms: Sequence[LinearForm], exponents: Sequence[int], t: int) -> int:
    """dim of <l_i^e_i> in degree t, by the graded rank oracle."""
    gens = [power(l, e) for l, e in zip(forms, exponents)]
    M = graded_piece_matrix(gens, t)
    return rank(M) if M and M[0] else 0


def nine_planes_experiment(seed: int = 0, exponent: int = 3, count: int = 9, max_degree: int = 8) -> dict:
    """Hilbert function of R/<l_1^e, ..., l_count^e> in three variables for random forms."""
    forms = random_forms(count, seed=seed, n_vars=3)
    rows = []
    for t in range(max_degree + 1):
        dim_j = powers_rank(forms, [exponent] * count, t)
        rows.append({"degree": t, "ideal_dim": dim_j, "quotient_dim": num_monomials(3, t) - dim_j})
    return {"seed": seed, "exponent": exponent, "forms": [list(f.integer_coefficients()) for f in forms],
            "hilbert_function": rows}
