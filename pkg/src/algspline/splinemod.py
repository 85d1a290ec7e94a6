"""
Spline modules through the graded presentation phi = [∂_k | D].

A spline on the cone over Δ is a tuple (f_σ) of homogeneous polynomials of
the same degree such that l_τ^(α_τ+1) divides the difference across every
interior (k-1)-face τ.  The degree-d spline space is the kernel of φ_d
projected to the first f_k blocks, and since D is injective its dimension
equals the nullity of the reduced map

    ⊕_σ R_d  ->  ⊕_τ (R / l_τ^(α_τ+1))_d,

which is what ``spline_dim`` computes.  The reduction expresses R_d in the
coordinates (l, x') where x' are the remaining variables; a polynomial is
zero modulo l^e exactly when its coefficients on u^s x'^b with s < e vanish.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .cellcomplex import (ComplexError, EmbeddedComplex, boundary_matrix_relative,
                          smoothness_exponents)
from .linalg import nullspace, rank
from .polyring import (LinearForm, Polynomial, StabilizationError, eval_univariate,
                       format_univariate, homogenize, interpolate, monomial_basis,
                       monomial_index, num_monomials, power)


@dataclass(frozen=True)
class ExponentVector:
    """Smoothness order alpha_tau >= 0 for every interior (k-1)-face id."""

    values: tuple  # ((face id, alpha), ...) sorted by face id

    @classmethod
    def build(cls, c: EmbeddedComplex, alpha) -> ExponentVector:
        if isinstance(alpha, ExponentVector):
            return alpha
        return cls(tuple(sorted(smoothness_exponents(c, alpha).items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.values)

    @property
    def is_uniform(self) -> bool:
        return len({a for _, a in self.values}) <= 1

    def uniform_value(self) -> int | None:
        vals = {a for _, a in self.values}
        return vals.pop() if len(vals) == 1 else None

    def to_json(self):
        return {str(e): a for e, a in self.values}


# linear forms in the (u, x') coordinates


def _pivot(coeffs: Sequence[int]) -> int:
    nz = [(abs(c), i) for i, c in enumerate(coeffs) if c]
    if not nz:
        raise ValueError("zero linear form")
    return min(nz)[1]


@lru_cache(maxsize=512)
def _neg_rest_powers(coeffs: tuple, j: int, top: int) -> tuple:
    """(-L')^m for m = 0..top, as dicts over exponent tuples in the n-1 other variables."""
    n = len(coeffs)
    rest = [-c for i, c in enumerate(coeffs) if i != j]
    out = [{(0,) * (n - 1): 1}]
    for _ in range(top):
        prev = out[-1]
        nxt: dict = {}
        for e, v in prev.items():
            for i, c in enumerate(rest):
                if c:
                    k = e[:i] + (e[i] + 1,) + e[i + 1:]
                    nxt[k] = nxt.get(k, 0) + v * c
        out.append({k: v for k, v in nxt.items() if v})
    return tuple(out)


def quotient_row_count(n: int, e: int, d: int) -> int:
    return num_monomials(n, d) - num_monomials(n, d - e)


@lru_cache(maxsize=256)
def quotient_matrix(coeffs: tuple, e: int, d: int) -> tuple:
    """Integer matrix of R_d -> (R / l^e)_d for l = sum coeffs[i] x_i.

    Columns follow ``monomial_basis(n, d)``; rows are the coordinates u^s x'^b
    with s < e, |b| = d - s.  The whole map is scaled by c_j^d, with x_j the
    pivot variable, to keep entries integral; scaling does not change rank
    or kernel.
    """
    n = len(coeffs)
    if e <= 0 or d < 0:
        return ()
    j = _pivot(coeffs)
    cj = coeffs[j]
    smax = min(e - 1, d)
    row_index = {}
    for s in range(smax + 1):
        for b in monomial_basis(n - 1, d - s) if n > 1 else [()]:
            row_index[(s, b)] = len(row_index)
    cols = monomial_basis(n, d)
    powers = _neg_rest_powers(coeffs, j, d)
    rows = [[0] * len(cols) for _ in range(len(row_index))]
    for col, a in enumerate(cols):
        aj = a[j]
        rest = a[:j] + a[j + 1:]
        base = cj ** (d - aj)
        for s in range(min(aj, smax) + 1):
            factor = base * comb(aj, s)
            for b, v in powers[aj - s].items():
                key = (s, tuple(x + y for x, y in zip(b, rest)))
                rows[row_index[key]][col] += factor * v
    return tuple(tuple(r) for r in rows)


def split_by_linear_form(p: Polynomial, l: LinearForm) -> tuple[int, dict]:
    """Write p as a polynomial in u = l and the other variables.

    Returns (pivot index j, {(s, b): coefficient}) with p = sum coef u^s x^b,
    where b is an exponent tuple over all n variables with b[j] = 0.
    """
    coeffs = [Fraction(c) for c in l.coefficients]
    j = _pivot(coeffs)
    cj = coeffs[j]
    n = len(coeffs)
    rest = [-c / cj for i, c in enumerate(coeffs)]
    out: dict = {}
    for a, v in p.terms.items():
        aj = a[j]
        others = a[:j] + (0,) + a[j + 1:]
        # x_j^aj = (u/cj + sum rest_i x_i)^aj
        for s in range(aj + 1):
            coeff_s = v * comb(aj, s) / cj ** s
            # (sum rest_i x_i)^(aj - s)
            terms = {(0,) * n: Fraction(1)}
            for _ in range(aj - s):
                nxt: dict = {}
                for e, w in terms.items():
                    for i in range(n):
                        if i != j and rest[i]:
                            k = e[:i] + (e[i] + 1,) + e[i + 1:]
                            nxt[k] = nxt.get(k, 0) + w * rest[i]
                terms = nxt
            for e, w in terms.items():
                key = (s, tuple(x + y for x, y in zip(e, others)))
                out[key] = out.get(key, 0) + coeff_s * w
    return j, {k: v for k, v in out.items() if v}


def linear_power_remainder(p: Polynomial, l: LinearForm, e: int) -> dict:
    """Nonzero coefficients of p on u^s x^b with s < e; empty iff l^e divides p."""
    _, parts = split_by_linear_form(p, l)
    return {k: v for k, v in parts.items() if k[0] < e}


def exact_quotient(p: Polynomial, l: LinearForm, e: int) -> Polynomial:
    """p / l^e, raising ValueError if the division is not exact."""
    _, parts = split_by_linear_form(p, l)
    if any(s < e for s, _ in parts):
        raise ValueError(f"{l!r}^{e} does not divide {p!r}")
    n = l.n_vars
    lp = l.to_poly()
    q = Polynomial(n)
    for (s, b), v in parts.items():
        q = q + power(lp, s - e) * Polynomial.monomial(b, v)
    return q


# presentation


@dataclass
class GradedPresentation:
    """φ = [∂_k | D] with column shifts 0 on the ∂_k block and α_τ+1 on D."""

    complex: EmbeddedComplex
    alpha: ExponentVector
    boundary: list          # ±1 integer matrix, rows interior facets, cols k-faces
    row_faces: list
    col_faces: list
    forms: list             # LinearForm per row
    exponents: list         # α_τ + 1 per row

    @property
    def diagonal(self) -> list[Polynomial]:
        return [power(l, e) for l, e in zip(self.forms, self.exponents)]

    @property
    def column_shifts(self) -> list[int]:
        return [0] * len(self.col_faces) + list(self.exponents)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_faces), len(self.col_faces) + len(self.row_faces))

    def matrix(self) -> list[list]:
        """φ as a matrix of polynomials (integers on the ∂ block)."""
        n = self.complex.k + 1
        out = []
        diag = self.diagonal
        for a, row in enumerate(self.boundary):
            entries = [Polynomial.constant(n, v) for v in row]
            entries += [diag[a] if b == a else Polynomial(n) for b in range(len(self.row_faces))]
            out.append(entries)
        return out

    def degree_piece(self, d: int) -> list[list[Fraction]]:
        """Rational matrix of φ_d: ⊕ R_d ⊕ ⊕_τ R_{d-e_τ} -> ⊕_τ R_d."""
        n = self.complex.k + 1
        N = num_monomials(n, d)
        if N == 0:
            return []
        f = len(self.col_faces)
        extra = [num_monomials(n, d - e) for e in self.exponents]
        width = f * N + sum(extra)
        rows = [[0] * width for _ in range(len(self.row_faces) * N)]
        idx = monomial_index(n, d)
        offset = f * N
        for a, brow in enumerate(self.boundary):
            for b, v in enumerate(brow):
                if v:
                    for m in range(N):
                        rows[a * N + m][b * N + m] = v
            g = power(self.forms[a], self.exponents[a])
            for m_i, m in enumerate(monomial_basis(n, d - self.exponents[a]) if extra[a] else []):
                for ex, coef in g.terms.items():
                    rows[a * N + idx[tuple(x + y for x, y in zip(ex, m))]][offset + m_i] = coef
            offset += extra[a]
        return rows


def build_presentation(c: EmbeddedComplex, alpha) -> GradedPresentation:
    av = ExponentVector.build(c, alpha)
    k = c.k
    bm = boundary_matrix_relative(c, k)
    exps = av.as_dict()
    forms = [c.face_form(e) for e in bm.row_faces]
    return GradedPresentation(c, av, bm.entries, bm.row_faces, bm.col_faces, forms,
                              [exps[e] + 1 for e in bm.row_faces])


def presentation_nullity(c: EmbeddedComplex, alpha, d: int) -> int:
    """dim ker φ_d computed from the full presentation (slow reference route)."""
    if d < 0:
        return 0
    pres = build_presentation(c, alpha)
    M = pres.degree_piece(d)
    n = c.k + 1
    width = len(pres.col_faces) * num_monomials(n, d) + sum(num_monomials(n, d - e) for e in pres.exponents)
    if not M:
        return width
    return width - rank(M)


# the reduced map and its ranks


class SplineSystem:
    """Precomputed data for degree-by-degree spline computations on one complex."""

    def __init__(self, c: EmbeddedComplex, alpha):
        self.complex = c
        self.presentation = build_presentation(c, alpha)
        self.n = c.k + 1
        p = self.presentation
        self.int_forms = [l.integer_coefficients() for l in p.forms]
        self.monomial = all(sum(1 for x in f if x) == 1 for f in self.int_forms)
        self._rank_cache: dict[int, int] = {}

    @property
    def f_top(self) -> int:
        return len(self.presentation.col_faces)

    def reduced_matrix(self, d: int) -> list[list[int]]:
        p = self.presentation
        N = num_monomials(self.n, d)
        f = self.f_top
        rows = []
        for a, brow in enumerate(p.boundary):
            Q = quotient_matrix(self.int_forms[a], p.exponents[a], d)
            nz = [(b, v) for b, v in enumerate(brow) if v]
            for q in Q:
                row = [0] * (f * N)
                for b, v in nz:
                    row[b * N:(b + 1) * N] = q if v == 1 else [-x for x in q]
                rows.append(row)
        return rows

    def _monomial_rank(self, d: int) -> int:
        p = self.presentation
        var = [next(i for i, x in enumerate(f) if x) for f in self.int_forms]
        cache: dict = {}
        total = 0
        for m in monomial_basis(self.n, d):
            alive = tuple(a for a in range(len(p.boundary)) if m[var[a]] < p.exponents[a])
            if alive not in cache:
                cache[alive] = rank([p.boundary[a] for a in alive]) if alive else 0
            total += cache[alive]
        return total

    def reduced_rank(self, d: int) -> int:
        if d < 0:
            return 0
        if d not in self._rank_cache:
            if not self.presentation.boundary:
                r = 0
            elif self.monomial:
                r = self._monomial_rank(d)
            else:
                r = rank(self.reduced_matrix(d))
            self._rank_cache[d] = r
        return self._rank_cache[d]

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        return self.f_top * num_monomials(self.n, d) - self.reduced_rank(d)

    def cokernel_dim(self, d: int) -> int:
        if d < 0:
            return 0
        target = sum(quotient_row_count(self.n, e, d) for e in self.presentation.exponents)
        return target - self.reduced_rank(d)

    def basis(self, d: int) -> list[tuple[Polynomial, ...]]:
        """A basis of the degree-d spline space as tuples of homogeneous polynomials."""
        n = self.n
        N = num_monomials(n, d)
        mons = monomial_basis(n, d)
        rows = self.reduced_matrix(d)
        vecs = nullspace(rows, self.f_top * N) if rows else [
            [Fraction(int(i == j)) for i in range(self.f_top * N)] for j in range(self.f_top * N)]
        out = []
        for v in vecs:
            out.append(tuple(
                Polynomial(n, {mons[m]: v[b * N + m] for m in range(N) if v[b * N + m]})
                for b in range(self.f_top)))
        return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SPLINE_THREADS", "1")))
    except ValueError:
        return 1


def spline_dim(c: EmbeddedComplex, alpha, d: int) -> int:
    """dim S^α_d(Δ)."""
    return SplineSystem(c, alpha).dim(d)


def cokernel_dim(c: EmbeddedComplex, alpha, d: int) -> int:
    """dim N_d for N = coker φ."""
    return SplineSystem(c, alpha).cokernel_dim(d)


def _dims_worker(args):
    c, alpha, degrees = args
    sys_ = SplineSystem(c, alpha)
    return [sys_.dim(d) for d in degrees]


def spline_dims(c: EmbeddedComplex, alpha, degrees: Sequence[int], threads: int | None = None) -> dict[int, int]:
    """dim S^α_d for every d in degrees; SPLINE_THREADS (or threads) caps worker processes."""
    degrees = list(degrees)
    threads = threads or _threads()
    if threads <= 1 or len(degrees) < 2:
        sys_ = SplineSystem(c, alpha)
        return {d: sys_.dim(d) for d in degrees}
    chunks = [degrees[i::threads] for i in range(threads)]
    chunks = [ch for ch in chunks if ch]
    with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
        results = list(ex.map(_dims_worker, [(c, alpha, ch) for ch in chunks]))
    out = {}
    for ch, res in zip(chunks, results):
        out.update(zip(ch, res))
    return {d: out[d] for d in degrees}


def is_spline(c: EmbeddedComplex, alpha, polys: Sequence[Polynomial]) -> tuple[bool, int | None]:
    """Check the smoothness conditions; returns (ok, first failing interior facet id or None).

    Polynomials may be affine (k variables) or homogeneous on the cone
    (k + 1 variables); affine input is homogenized to a common degree.
    """
    polys = list(polys)
    if len(polys) != c.f(c.k):
        raise ComplexError(f"expected {c.f(c.k)} polynomials, got {len(polys)}")
    nv = {p.n_vars for p in polys}
    if len(nv) != 1:
        raise ValueError("polynomials have different numbers of variables")
    nv = nv.pop()
    if nv == c.k:
        deg = max(p.degree() for p in polys)
        polys = [homogenize(p, degree=max(deg, 0)) if not p.is_zero() else Polynomial(nv + 1) for p in polys]
    elif nv != c.k + 1:
        raise ValueError(f"polynomials must have {c.k} or {c.k + 1} variables")
    exps = ExponentVector.build(c, alpha).as_dict()
    for e in c.interior(c.k - 1):
        s1, s2 = c.cofaces(e)
        diff = polys[s1] - polys[s2]
        if diff.is_zero():
            continue
        if linear_power_remainder(diff, c.face_form(e), exps[e] + 1):
            return False, e
    return True, None


def syzygy_coefficients(c: EmbeddedComplex, alpha, polys: Sequence[Polynomial]) -> dict[int, Polynomial]:
    """The a_τ with ∂_k f + D a = 0, for a homogeneous spline tuple f."""
    pres = build_presentation(c, alpha)
    out = {}
    for a, e in enumerate(pres.row_faces):
        row = pres.boundary[a]
        image = Polynomial(pres.complex.k + 1)
        for b, v in enumerate(row):
            if v:
                image = image + polys[pres.col_faces[b]] * v
        out[e] = -exact_quotient(image, pres.forms[a], pres.exponents[a])
    return out


# Hilbert polynomial detection


@dataclass
class HilbertFit:
    coefficients: list          # low degree first, Fractions
    stabilization_degree: int | None
    stabilized: bool
    window: tuple

    def __call__(self, d) -> Fraction:
        return eval_univariate(self.coefficients, d)

    def __str__(self):
        return format_univariate(self.coefficients)

    def to_json(self) -> dict:
        return {"polynomial": str(self), "coefficients": [str(Fraction(x)) for x in self.coefficients],
                "stabilization_degree": self.stabilization_degree, "stabilized": self.stabilized,
                "window": list(self.window)}


@dataclass
class DimensionTable:
    dims: dict = field(default_factory=dict)
    fit: HilbertFit | None = None

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def to_json(self) -> dict:
        out = {"dims": [{"degree": d, "dim": self.dims[d]} for d in self.degrees()]}
        if self.fit is not None:
            out["hilbert_polynomial"] = self.fit.to_json()
        return out


def fit_hilbert_polynomial(table, k: int) -> HilbertFit:
    """Fit a degree <= k polynomial to the tail of a dimension table.

    Interpolates on the last k+1 degrees and accepts the fit only if the two
    degrees before them agree as well.  The stabilization degree is the
    smallest degree from which every table entry matches.
    """
    dims = table.dims if isinstance(table, DimensionTable) else dict(table)
    ds = sorted(dims)
    if len(ds) < k + 3:
        raise ValueError(f"need at least {k + 3} degrees to fit a degree-{k} polynomial, got {len(ds)}")
    if ds != list(range(ds[0], ds[-1] + 1)):
        raise ValueError("degree window must be contiguous")
    tail = ds[-(k + 1):]
    coeffs = interpolate(tail, [dims[d] for d in tail])
    check = ds[-(k + 3):-(k + 1)]
    ok = all(eval_univariate(coeffs, d) == dims[d] for d in check)
    stab = None
    if ok:
        stab = ds[-(k + 3)]
        for d in reversed(ds[:-(k + 3)]):
            if eval_univariate(coeffs, d) != dims[d]:
                break
            stab = d
    return HilbertFit(coeffs, stab, ok, (ds[0], ds[-1]))


def dimension_table(c: EmbeddedComplex, alpha, max_degree: int, min_degree: int = 0,
                    fit: bool = False) -> DimensionTable:
    dims = spline_dims(c, alpha, range(min_degree, max_degree + 1))
    t = DimensionTable(dims)
    if fit:
        t.fit = fit_hilbert_polynomial(t, c.k)
    return t


def hilbert_polynomial(c: EmbeddedComplex, alpha, max_degree: int) -> HilbertFit:
    """Fitted Hilbert polynomial; raises StabilizationError if the window is not stable."""
    t = dimension_table(c, alpha, max_degree, max(0, max_degree - c.k - 4), fit=True)
    if not t.fit.stabilized:
        raise StabilizationError(f"spline dimensions not polynomial by degree {max_degree}")
    return t.fit
