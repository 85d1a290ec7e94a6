"""
Graded chain complexes of quotient rings on the interior faces of a complex.

Three variants share one construction.  The term in position i is the sum
over interior i-faces (all k-faces in position k) of R/J(face):

* ``r``:  J = 0, the constant complex;
* ``ri``: J(face) = I(face)^(r+1), the power of the ideal of the face's cone
  (simplicial input only);
* ``rj``: J(face) = < l_τ^(α_τ+1) : τ an interior (k-1)-face containing face >.

Differentials are the relative boundary maps.  Everything is computed one
degree at a time: term dimensions from graded ranks of the face ideals,
differential ranks as rank[∂ | gens of target] - rank[gens of target].
When every face ideal is generated by monomials the complex splits over
monomials and each monomial contributes a small integer complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from .cellcomplex import ComplexError, EmbeddedComplex, boundary_matrix_relative
from .linalg import rank
from .polyring import (GeneratingSeries, Polynomial, StabilizationError, eval_univariate, interpolate,
                       monomial_basis, monomial_index, multiply, num_monomials, power,
                       series_from_dims)
from .splinemod import ExponentVector, quotient_matrix

VARIANTS = ("rj", "ri", "r")


class GradedChainComplex:
    """A bounded complex of graded vector spaces, queried one degree at a time.

    Subclasses provide ``term_dim(i, d)`` and ``differential_rank(i, d)`` for
    ∂_i : T_i -> T_{i-1}.  Positions run from ``low`` to ``high``.
    """

    low = 0
    high = 0

    def term_dim(self, i: int, d: int) -> int:
        raise NotImplementedError

    def differential_rank(self, i: int, d: int) -> int:
        raise NotImplementedError

    def homology_dim(self, i: int, d: int) -> int:
        if not self.low <= i <= self.high:
            raise ValueError(f"position {i} outside {self.low}..{self.high}")
        return self.term_dim(i, d) - self.differential_rank(i, d) - self.differential_rank(i + 1, d)

    def euler_characteristic(self, d: int) -> int:
        return sum((-1) ** i * self.term_dim(i, d) for i in range(self.low, self.high + 1))


class MatrixComplex(GradedChainComplex):
    """Free complex R^{n_i} with constant integer differentials.

    ``matrices[i]`` is ∂_i for i = low+1..high (a dict).  With n_vars = 0 the
    ring is the field itself and only degree 0 is nonzero.
    """

    def __init__(self, sizes: dict, matrices: dict, n_vars: int = 0):
        self.sizes = dict(sizes)
        self.matrices = {i: [list(r) for r in m] for i, m in matrices.items()}
        self.low = min(self.sizes)
        self.high = max(self.sizes)
        self.n_vars = n_vars

    def _graded(self, d: int) -> int:
        if self.n_vars == 0:
            return 1 if d == 0 else 0
        return num_monomials(self.n_vars, d)

    def term_dim(self, i: int, d: int) -> int:
        return self.sizes.get(i, 0) * self._graded(d)

    def differential_rank(self, i: int, d: int) -> int:
        m = self.matrices.get(i)
        if not m or not m[0]:
            return 0
        return rank(m) * self._graded(d)


@dataclass(frozen=True)
class FaceIdeal:
    """Generators of J(face): either principal powers or the power of a span ideal."""

    dim: int
    face: int
    forms: tuple            # LinearForms
    exponents: tuple        # one per form for "powers"; a single entry for "span"
    kind: str               # "powers" | "span" | "zero"

    def generators(self) -> list[Polynomial]:
        if self.kind == "zero" or not self.forms:
            return []
        if self.kind == "powers":
            return [power(l, e) for l, e in zip(self.forms, self.exponents)]
        e = self.exponents[0]
        polys = [l.to_poly() for l in self.forms]
        gens = []
        for combo in combinations_with_replacement(range(len(polys)), e):
            g = Polynomial.constant(polys[0].n_vars)
            for j in combo:
                g = multiply(g, polys[j])
            gens.append(g)
        return gens

    @property
    def is_monomial(self) -> bool:
        return all(sum(1 for x in l.integer_coefficients() if x) == 1 for l in self.forms)

    def contains_monomial(self, m: tuple) -> bool:
        """Membership of a monomial, valid when ``is_monomial``."""
        idx = [next(j for j, x in enumerate(l.integer_coefficients()) if x) for l in self.forms]
        if self.kind == "powers":
            return any(m[v] >= e for v, e in zip(idx, self.exponents))
        if self.kind == "span":
            return bool(idx) and sum(m[v] for v in set(idx)) >= self.exponents[0]
        return False


def _dedupe_powers(pairs):
    """Keep one generator per projective form, with the smallest exponent."""
    best: dict = {}
    for l, e in pairs:
        p = l.primitive()
        best[p] = min(e, best.get(p, e))
    items = sorted(best.items(), key=lambda kv: (kv[1], kv[0].integer_coefficients()))
    return tuple(l for l, _ in items), tuple(e for _, e in items)


class SplineChainComplex(GradedChainComplex):
    """The complexes R, R/I and R/J on the interior faces of an embedded complex."""

    def __init__(self, c: EmbeddedComplex, r, variant: str = "rj"):
        variant = variant.lower()
        if variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if variant == "ri" and not c.is_simplicial():
            raise ComplexError("the R/I complex needs simplicial input")
        self.complex = c
        self.variant = variant
        self.alpha = ExponentVector.build(c, r)
        if variant == "ri" and not self.alpha.is_uniform:
            raise ValueError("the R/I complex is defined for uniform smoothness only")
        self.k = c.k
        self.n = c.k + 1
        self.low, self.high = 0, c.k
        self.boundaries = {i: boundary_matrix_relative(c, i) for i in range(1, c.k + 1)}
        self.faces = {i: (c.interior(i) if i < c.k else list(range(c.f(c.k)))) for i in range(c.k + 1)}
        self.ideals = {i: [self._ideal(i, f) for f in self.faces[i]] for i in range(c.k + 1)}
        self.monomial = all(J.is_monomial for i in self.ideals for J in self.ideals[i])
        self._rank_cache: dict = {}
        self._ideal_dim_cache: dict = {}

    def _ideal(self, i: int, f: int) -> FaceIdeal:
        c = self.complex
        if self.variant == "r" or i == self.k:
            return FaceIdeal(i, f, (), (), "zero")
        if self.variant == "ri":
            r = self.alpha.uniform_value()
            r = 0 if r is None else r
            return FaceIdeal(i, f, tuple(c.span_forms(i, f)), (r + 1,), "span")
        exps = self.alpha.as_dict()
        facets = c.faces_containing(i, f, self.k - 1) if i < self.k - 1 else [f]
        pairs = [(c.face_form(e), exps[e] + 1) for e in facets if c.is_interior(self.k - 1, e)]
        forms, es = _dedupe_powers(pairs)
        return FaceIdeal(i, f, forms, es, "powers")

    def face_ideal(self, i: int, f: int) -> FaceIdeal:
        return self.ideals[i][self.faces[i].index(f)]

    # dimensions

    def ideal_dim(self, J: FaceIdeal, d: int) -> int:
        if d < 0 or J.kind == "zero" or not J.forms:
            return 0
        key = (J.kind, J.forms, J.exponents, d)
        if key in self._ideal_dim_cache:
            return self._ideal_dim_cache[key]
        if J.kind == "powers" and len(J.forms) == 1:
            val = num_monomials(self.n, d - J.exponents[0])
        elif J.is_monomial:
            val = sum(1 for m in monomial_basis(self.n, d) if J.contains_monomial(m))
        else:
            val = rank(_generator_columns(J.generators(), self.n, d))
        self._ideal_dim_cache[key] = val
        return val

    def term_dim(self, i: int, d: int) -> int:
        if d < 0 or not self.low <= i <= self.high:
            return 0
        N = num_monomials(self.n, d)
        return sum(N - self.ideal_dim(J, d) for J in self.ideals[i])

    def differential_rank(self, i: int, d: int) -> int:
        if i <= self.low or i > self.high or d < 0:
            return 0
        key = (i, d)
        if key not in self._rank_cache:
            self._rank_cache[key] = self._compute_rank(i, d)
        return self._rank_cache[key]

    def _compute_rank(self, i: int, d: int) -> int:
        B = self.boundaries[i].entries
        if not B or not B[0]:
            return 0
        if self.monomial:
            return self._monomial_ranks(d)[i]
        targets = self.ideals[i - 1]
        N = num_monomials(self.n, d)
        if all(J.kind == "zero" or not J.forms for J in targets):
            return rank(B) * N
        if all(J.kind == "powers" and len(J.forms) == 1 for J in targets):
            return self._principal_rank(B, targets, d)
        return self._general_rank(B, targets, d)

    def _principal_rank(self, B, targets, d: int) -> int:
        N = num_monomials(self.n, d)
        rows = []
        for a, J in enumerate(targets):
            Q = quotient_matrix(J.forms[0].integer_coefficients(), J.exponents[0], d)
            nz = [(b, v) for b, v in enumerate(B[a]) if v]
            for q in Q:
                row = [0] * (len(B[0]) * N)
                for b, v in nz:
                    row[b * N:(b + 1) * N] = q if v == 1 else [-x for x in q]
                rows.append(row)
        return rank(rows) if rows else 0

    def _general_rank(self, B, targets, d: int) -> int:
        N = num_monomials(self.n, d)
        n_src = len(B[0])
        gen_blocks = [_generator_columns(J.generators(), self.n, d) if J.forms and J.kind != "zero" else []
                      for J in targets]
        widths = [len(g[0]) if g else 0 for g in gen_blocks]
        total_g = sum(widths)
        rows = []
        g_only = []
        offset = 0
        for a, J in enumerate(targets):
            G = gen_blocks[a]
            for m in range(N):
                row = [0] * (n_src * N + total_g)
                for b, v in enumerate(B[a]):
                    if v:
                        row[b * N + m] = v
                if G:
                    row[n_src * N + offset:n_src * N + offset + widths[a]] = G[m]
                rows.append(row)
                g_only.append(row[n_src * N:])
            offset += widths[a]
        rank_g = rank(g_only) if total_g else 0
        return rank(rows) - rank_g

    def _monomial_ranks(self, d: int) -> dict:
        """Ranks of every differential in degree d via the monomial splitting."""
        key = ("mono", d)
        if key in self._rank_cache:
            return self._rank_cache[key]
        totals = {i: 0 for i in range(1, self.k + 1)}
        cache: dict = {}
        for m in monomial_basis(self.n, d):
            alive = tuple(tuple(a for a, J in enumerate(self.ideals[i]) if not J.contains_monomial(m))
                          for i in range(self.k + 1))
            if alive not in cache:
                ranks = {}
                for i in range(1, self.k + 1):
                    B = self.boundaries[i].entries
                    sub = [[B[a][b] for b in alive[i]] for a in alive[i - 1]]
                    ranks[i] = rank(sub) if sub and sub[0] else 0
                cache[alive] = ranks
            for i, v in cache[alive].items():
                totals[i] += v
        self._rank_cache[key] = totals
        return totals

    def composition_is_zero(self) -> bool:
        """∂_{i} ∘ ∂_{i+1} = 0 on the incidence matrices (hence in every degree)."""
        for i in range(1, self.k):
            A = self.boundaries[i].entries
            B = self.boundaries[i + 1].entries
            if not A or not B:
                continue
            for row in A:
                for col in zip(*B):
                    if sum(x * y for x, y in zip(row, col)):
                        return False
        return True


def _generator_columns(gens: Sequence[Polynomial], n: int, d: int) -> list[list[int]]:
    """R_d-coordinates of g*m for every generator g and monomial m of matching degree (rows = R_d)."""
    N = num_monomials(n, d)
    idx = monomial_index(n, d)
    cols = []
    for g in gens:
        deg = g.degree()
        if deg > d:
            continue
        terms = [(e, c) for e, c in g.terms.items()]
        den = 1
        for _, c in terms:
            den = den * c.denominator // _gcd(den, c.denominator)
        for m in monomial_basis(n, d - deg):
            col = [0] * N
            for e, c in terms:
                col[idx[tuple(x + y for x, y in zip(e, m))]] += int(c * den)
            cols.append(col)
    if not cols:
        return [[] for _ in range(N)]
    return [list(r) for r in zip(*cols)]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def build_rj_complex(c: EmbeddedComplex, r, variant: str = "rj") -> SplineChainComplex:
    return SplineChainComplex(c, r, variant)


def homology_dim(cx: GradedChainComplex, i: int, d: int) -> int:
    return cx.homology_dim(i, d)


@dataclass
class EulerReport:
    degree: int
    term_side: int
    homology_side: int

    @property
    def ok(self) -> bool:
        return self.term_side == self.homology_side


def euler_check(cx: GradedChainComplex, d: int) -> EulerReport:
    """Alternating sums of term and homology dimensions in degree d."""
    terms = cx.euler_characteristic(d)
    hom = sum((-1) ** i * cx.homology_dim(i, d) for i in range(cx.low, cx.high + 1))
    return EulerReport(d, terms, hom)


@dataclass
class FreenessVerdict:
    verdict: str                # "free-consistent" | "not-free" | "inconclusive"
    witness: tuple | None       # (i, d, dim) of the first nonzero lower homology
    degree_bound: int
    homology: dict

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "witness": list(self.witness) if self.witness else None,
                "degree_bound": self.degree_bound,
                "homology": {f"H{i}": [self.homology[i][d] for d in sorted(self.homology[i])]
                             for i in sorted(self.homology)}}


def freeness_probe(c: EmbeddedComplex, r, degree_bound: int) -> FreenessVerdict:
    """Look for nonzero H_i(R/J), i < k, up to a degree bound.

    Vanishing up to the bound is reported as consistent with freeness, never
    as a proof.  A bound below the first degree where the ideals J appear
    (r + 2) cannot see anything and is reported inconclusive.
    """
    cx = SplineChainComplex(c, r, "rj")
    hom = {i: {} for i in range(c.k)}
    witness = None
    for d in range(degree_bound + 1):
        for i in range(c.k):
            h = cx.homology_dim(i, d)
            hom[i][d] = h
            if h and witness is None:
                witness = (i, d, h)
    if witness:
        verdict = "not-free"
    else:
        av = cx.alpha.as_dict()
        need = min(av.values(), default=0) + 2
        verdict = "free-consistent" if degree_bound >= need else "inconclusive"
    return FreenessVerdict(verdict, witness, degree_bound, hom)


def local_series_formula(c: EmbeddedComplex, r, max_degree: int) -> GeneratingSeries:
    """Σ (-1)^(k-i) HS(T_i) for the R/J complex, fitted to numerator / (1-t)^(k+1)."""
    cx = SplineChainComplex(c, r, "rj")
    k = c.k
    dims = [sum((-1) ** (k - i) * cx.term_dim(i, d) for i in range(k + 1)) for d in range(max_degree + 1)]
    return series_from_dims(dims, k + 1)


@dataclass
class HPDimReport:
    index: int
    dims: dict
    degree: float               # -inf when eventually zero
    stabilized: bool

    def to_json(self) -> dict:
        deg = "-inf" if self.degree == float("-inf") else int(self.degree)
        return {"index": self.index, "dims": [self.dims[d] for d in sorted(self.dims)],
                "degrees": sorted(self.dims), "degree": deg, "stabilized": self.stabilized}


def hpdim_probe(c: EmbeddedComplex, r, i: int, window: Sequence[int]) -> HPDimReport:
    """Degree of the eventual polynomial d -> dim H_i(R/J)_d over a degree window.

    The polynomial is read off by finite differences: the tail is accepted as
    degree e when the last three (e+1)-th differences vanish.  Raises
    StabilizationError if no degree up to k fits.
    """
    if not 0 <= i < c.k:
        raise ValueError(f"index must be in 0..{c.k - 1}")
    cx = SplineChainComplex(c, r, "rj")
    window = list(window)
    dims = {d: cx.homology_dim(i, d) for d in window}
    seq = [dims[d] for d in window]
    if len(seq) >= 3 and all(v == 0 for v in seq[-3:]):
        return HPDimReport(i, dims, float("-inf"), True)
    for e in range(c.k + 1):
        need = e + 3
        if len(seq) < need + 1:
            break
        tail = window[-(e + 1):]
        coeffs = interpolate(tail, [dims[d] for d in tail])
        check = window[-(e + 3):-(e + 1)]
        if all(eval_univariate(coeffs, d) == dims[d] for d in check):
            return HPDimReport(i, dims, float(len(coeffs) - 1), True)
    raise StabilizationError(f"H_{i} dimensions not polynomial within degrees {window[0]}..{window[-1]}")
