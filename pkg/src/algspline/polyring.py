"""
Exact multivariate polynomials over Q, graded pieces, and Hilbert series.

Polynomials are sparse maps from exponent tuples to nonzero Fractions.
Monomials of a fixed degree are listed in graded-lexicographic order,
so ``monomial_basis(2, 2)`` is ``[x^2, xy, y^2]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Iterable, Sequence


VAR_NAMES = "xyzwuvts"


def binom(a: int, b: int) -> int:
    """C(a, b), with C(a, b) = 0 whenever b < 0 or a < b."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def num_monomials(n_vars: int, d: int) -> int:
    if d < 0:
        return 0
    return comb(d + n_vars - 1, n_vars - 1)


@lru_cache(maxsize=None)
def _monomials(n_vars: int, d: int) -> tuple:
    if d < 0:
        return ()
    if n_vars == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in _monomials(n_vars - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def monomial_basis(n_vars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree d, graded-lex (descending) order."""
    if n_vars < 1:
        raise ValueError("n_vars must be positive")
    return list(_monomials(n_vars, d))


@lru_cache(maxsize=None)
def monomial_index(n_vars: int, d: int) -> dict:
    return {m: i for i, m in enumerate(_monomials(n_vars, d))}


def parse_rational(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(f"cannot read {s!r} as a rational; use an int or a 'p/q' string")


def format_rational(q) -> str:
    return str(Fraction(q))


class Polynomial:
    """Immutable sparse polynomial in ``n_vars`` variables with rational coefficients."""

    __slots__ = ("n_vars", "terms", "_hash")

    def __init__(self, n_vars: int, terms=None):
        if n_vars < 1:
            raise ValueError("n_vars must be positive")
        self.n_vars = n_vars
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exps, c in items:
                exps = tuple(int(e) for e in exps)
                if len(exps) != n_vars:
                    raise ValueError(f"exponent vector {exps} has wrong length for {n_vars} variables")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = Fraction(c)
                if c:
                    c = clean.get(exps, 0) + c
                    if c:
                        clean[exps] = c
                    else:
                        clean.pop(exps, None)
        self.terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def constant(cls, n_vars: int, c=1) -> Polynomial:
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def variable(cls, n_vars: int, i: int) -> Polynomial:
        e = [0] * n_vars
        e[i] = 1
        return cls(n_vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> Polynomial:
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def from_linear(cls, coeffs: Sequence) -> Polynomial:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial(self.n_vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        e = max(self.terms, key=lambda e: (sum(e), e))
        return self.terms[e]

    # arithmetic

    def _check(self, other: Polynomial):
        if not isinstance(other, Polynomial):
            raise TypeError("expected a Polynomial")
        if other.n_vars != self.n_vars:
            raise ValueError(f"variable count mismatch: {self.n_vars} vs {other.n_vars}")

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.n_vars, other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.n_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.n_vars, {e: c * other for e, c in self.terms.items()})
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.n_vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n_vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n_vars == other.n_vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n_vars, frozenset(self.terms.items())))
        return self._hash

    def derivative(self, i: int, times: int = 1) -> Polynomial:
        terms = {}
        for e, c in self.terms.items():
            if e[i] < times:
                continue
            f = 1
            for k in range(times):
                f *= e[i] - k
            ne = list(e)
            ne[i] -= times
            terms[tuple(ne)] = c * f
        return Polynomial(self.n_vars, terms)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def substitute_last(self, value) -> Polynomial:
        """Set the last variable to ``value``; the result lives in n_vars - 1 variables."""
        if self.n_vars < 2:
            raise ValueError("need at least two variables")
        value = Fraction(value)
        terms = {}
        for e, c in self.terms.items():
            k = e[:-1]
            terms[k] = terms.get(k, 0) + c * value ** e[-1]
        return Polynomial(self.n_vars - 1, terms)

    # serialization

    def to_json(self) -> list:
        return [[list(e), format_rational(c)] for e, c in sorted(self.terms.items(), reverse=True)]

    @classmethod
    def from_json(cls, data, n_vars: int | None = None) -> Polynomial:
        if n_vars is None:
            if not data:
                raise ValueError("n_vars required for the zero polynomial")
            n_vars = len(data[0][0])
        return cls(n_vars, [(tuple(e), parse_rational(c)) for e, c in data])

    def __repr__(self):
        if not self.terms:
            return "0"
        names = VAR_NAMES if self.n_vars <= len(VAR_NAMES) else None
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
            mon = []
            for i, k in enumerate(e):
                if not k:
                    continue
                v = names[i] if names else f"x{i}"
                mon.append(v if k == 1 else f"{v}^{k}")
            mon_s = "*".join(mon)
            if not mon_s:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon_s)
            elif c == -1:
                parts.append("-" + mon_s)
            else:
                parts.append(f"{c}*{mon_s}")
        return " + ".join(parts).replace("+ -", "- ")


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    terms: dict = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            terms[e] = terms.get(e, 0) + c1 * c2
    return Polynomial(p.n_vars, terms)


@dataclass(frozen=True)
class LinearForm:
    """Homogeneous linear form sum(c_i x_i)."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @property
    def n_vars(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def to_poly(self) -> Polynomial:
        return Polynomial.from_linear(self.coefficients)

    def primitive(self) -> LinearForm:
        """Scale to coprime integers with positive leading nonzero entry."""
        if self.is_zero():
            raise ValueError("zero linear form has no primitive representative")
        den = 1
        for c in self.coefficients:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coefficients]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = [-v for v in ints]
        return LinearForm(tuple(ints))

    def integer_coefficients(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.primitive().coefficients)

    def projectively_equal(self, other: LinearForm) -> bool:
        return self.primitive() == other.primitive()

    def __call__(self, point: Sequence) -> Fraction:
        return sum((c * Fraction(x) for c, x in zip(self.coefficients, point)), Fraction(0))

    def __repr__(self):
        return repr(self.to_poly())


def power(l: LinearForm | Polynomial, e: int) -> Polynomial:
    """l^e, expanded."""
    p = l.to_poly() if isinstance(l, LinearForm) else l
    return p ** e


def homogenize(p: Polynomial, new_var_index: int | None = None, degree: int | None = None) -> Polynomial:
    """Cone an affine polynomial: add a variable and pad every term up to ``degree``.

    The new variable is appended last unless ``new_var_index`` says otherwise.
    ``degree`` defaults to deg p.
    """
    n = p.n_vars
    if new_var_index is None:
        new_var_index = n
    if not 0 <= new_var_index <= n:
        raise ValueError("new_var_index out of range")
    if degree is None:
        degree = max(p.degree(), 0)
    if p.terms and p.degree() > degree:
        raise ValueError("target degree below polynomial degree")
    terms = {}
    for e, c in p.terms.items():
        ne = list(e)
        ne.insert(new_var_index, degree - sum(e))
        terms[tuple(ne)] = c
    return Polynomial(n + 1, terms)


def dehomogenize(p: Polynomial, var_index: int | None = None) -> Polynomial:
    n = p.n_vars
    if var_index is None:
        var_index = n - 1
    terms = {}
    for e, c in p.terms.items():
        k = e[:var_index] + e[var_index + 1:]
        terms[k] = terms.get(k, 0) + c
    return Polynomial(n - 1, terms)


def graded_piece_matrix(generators: Iterable, d: int) -> list[list[Fraction]]:
    """Matrix of (g_1, ..., g_m) : ⊕ R(-deg g_i) -> R in degree d.

    Rows follow ``monomial_basis(n, d)``; columns run over g_i * m for m in
    ``monomial_basis(n, d - deg g_i)``.  Generators may be given as bare
    polynomials or as ``(poly, shift)`` pairs, where shift must equal the
    polynomial's degree.
    """
    gens = []
    for g in generators:
        if isinstance(g, tuple):
            g, shift = g
        else:
            shift = None
        if not g.is_homogeneous():
            raise ValueError(f"generator {g!r} is not homogeneous")
        deg = g.degree()
        if shift is not None and deg >= 0 and shift != deg:
            raise ValueError(f"shift {shift} does not match degree {deg} of {g!r}")
        gens.append((g, deg))
    if not gens:
        return []
    n = gens[0][0].n_vars
    rows = monomial_basis(n, d)
    index = monomial_index(n, d)
    cols = []
    for g, deg in gens:
        if deg < 0:
            continue
        for m in monomial_basis(n, d - deg) if d >= deg else []:
            col = [Fraction(0)] * len(rows)
            for e, c in g.terms.items():
                col[index[tuple(a + b for a, b in zip(e, m))]] += c
            cols.append(col)
    return [[col[i] for col in cols] for i in range(len(rows))]


@dataclass(frozen=True)
class GeneratingSeries:
    """numerator(t) / (1 - t)^denominator_power, numerator with integer coefficients."""

    numerator: tuple
    denominator_power: int

    def __post_init__(self):
        num = [int(c) for c in self.numerator]
        while num and num[-1] == 0:
            num.pop()
        object.__setattr__(self, "numerator", tuple(num))
        if self.denominator_power < 0:
            raise ValueError("denominator power must be non-negative")

    def coefficient(self, d: int) -> int:
        return series_coefficient(self, d)

    def coefficients(self, upto: int) -> list[int]:
        return [series_coefficient(self, d) for d in range(upto + 1)]

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denominator_power": self.denominator_power,
                "text": str(self)}

    def __str__(self):
        parts = []
        for i, c in enumerate(self.numerator):
            if not c:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}{mon}")
        num = " + ".join(parts).replace("+ -", "- ") or "0"
        return f"({num})/(1-t)^{self.denominator_power}"


def series_coefficient(s: GeneratingSeries, d: int) -> int:
    """Coefficient of t^d in s."""
    if d < 0:
        return 0
    n = s.denominator_power
    total = 0
    for i, a in enumerate(s.numerator):
        if i > d:
            break
        if n == 0:
            total += a if i == d else 0
        else:
            total += a * comb(d - i + n - 1, n - 1)
    return total


class StabilizationError(ValueError):
    """Raised when a sequence of dimensions has not visibly stabilized in the supplied window."""


def series_from_dims(dims: Sequence[int], denominator_power: int, confirm: int = 2) -> GeneratingSeries:
    """Recover numerator/(1-t)^n from dims[0], dims[1], ...

    The numerator is (1-t)^n times the truncated series; it is accepted once
    its last ``confirm`` coefficients inside the window vanish.
    """
    n = denominator_power
    dims = [int(v) for v in dims]
    # (1-t)^n has coefficients (-1)^i C(n, i)
    factor = [(-1) ** i * comb(n, i) for i in range(n + 1)]
    num = []
    for d in range(len(dims)):
        num.append(sum(factor[i] * dims[d - i] for i in range(min(n, d) + 1)))
    if len(num) < confirm or any(num[len(num) - confirm:]):
        raise StabilizationError(
            f"numerator not stabilized within {len(dims)} terms (tail {num[-confirm:]})")
    s = GeneratingSeries(tuple(num), n)
    assert all(series_coefficient(s, d) == v for d, v in enumerate(dims))
    return s


def hilbert_series_of_shift(n_vars: int, shift: int) -> GeneratingSeries:
    """HS(R(-shift)) = t^shift / (1-t)^n_vars."""
    return GeneratingSeries(tuple([0] * shift + [1]), n_vars)


def format_univariate(coeffs: Sequence, var: str = "d") -> str:
    """Render c0 + c1 d + c2 d^2 + ... as e.g. '2d^2-6d+10' (highest degree first)."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        num = format_rational(a)
        if i == 0:
            body = num
        else:
            mon = var if i == 1 else f"{var}^{i}"
            if a == 1:
                body = mon
            elif a.denominator == 1:
                body = f"{num}{mon}"
            else:
                body = f"({num}){mon}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


def eval_univariate(coeffs: Sequence, x) -> Fraction:
    total = Fraction(0)
    for c in reversed(list(coeffs)):
        total = total * x + Fraction(c)
    return total


def interpolate(xs: Sequence, ys: Sequence) -> list[Fraction]:
    """Coefficients (low to high) of the unique polynomial of degree < len(xs) through the points."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for m in range(len(basis) - 1):
                basis[m] -= xs[j] * basis[m + 1]
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / denom
        for m in range(n):
            coeffs[m] += scale * basis[m]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs
