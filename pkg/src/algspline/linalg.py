"""
Rank and nullspace over Q.

Three rank routes share one entry point, ``rank``:

* ``bareiss``: fraction-free elimination in pure Python (reference route,
  used for small matrices and as the test oracle);
* ``flint``: fraction-free LU over Z in FLINT, for mid-size matrices;
* ``modular``: rank over GF(p) for a fixed 62-bit prime.  rank_p never
  exceeds rank_Q, and it is smaller only when p divides every maximal
  nonzero minor; pass more primes to ``modular_rank`` to shrink that risk.

``auto`` picks by entry count.  Thresholds can be moved with
``set_rank_limits``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

import flint

PRIMES = (4611686018427387847, 4611686018427387761)

_limits = {"bareiss": 4_000, "flint": 60_000, "max_entries": 40_000_000}


class ComputationLimitError(RuntimeError):
    """A requested computation exceeds the configured size limit."""


def set_rank_limits(bareiss: int | None = None, flint_exact: int | None = None,
                    max_entries: int | None = None) -> dict:
    old = dict(_limits)
    if max_entries is not None:
        _limits["max_entries"] = max_entries
    if bareiss is not None:
        _limits["bareiss"] = bareiss
    if flint_exact is not None:
        _limits["flint"] = flint_exact
    return old


def integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = 1
        for v in row:
            if isinstance(v, Fraction) and v.denominator != 1:
                den = den * v.denominator // gcd(den, v.denominator)
        if den == 1:
            out.append([int(v) for v in row])
        else:
            out.append([int(v * den) for v in row])
    return out


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    A = [r for r in integer_rows(rows) if any(r)]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    prev = 1
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        p = pr[c]
        for i in range(r + 1, m):
            row = A[i]
            a = row[c]
            if a:
                A[i] = [(p * x - a * y) // prev for x, y in zip(row, pr)]
            elif p != prev:
                A[i] = [p * x // prev for x in row]
        prev = p
        r += 1
        if r == m:
            break
    return r


def _flat(A: list[list[int]]) -> list[int]:
    return [v for row in A for v in row]


def _fmpz(rows: Sequence[Sequence]):
    try:
        return flint.fmpz_mat([list(r) for r in rows] if not isinstance(rows, list) else rows)
    except (TypeError, ValueError):
        return flint.fmpz_mat(integer_rows(rows))


def flint_rank(rows: Sequence[Sequence]) -> int:
    if not rows or not len(rows[0]):
        return 0
    return _fmpz(rows).rank()


def modular_rank(rows: Sequence[Sequence], primes: Sequence[int] = PRIMES[:1]) -> int:
    if not rows or not len(rows[0]):
        return 0
    A = _fmpz(rows)
    return max(flint.nmod_mat(A, p).rank() for p in primes)


def rank(rows: Sequence[Sequence], method: str = "auto") -> int:
    """Rank over Q of a dense matrix given as a list of rows."""
    if not rows or not len(rows[0]):
        return 0
    size = len(rows) * len(rows[0])
    if size > _limits["max_entries"]:
        raise ComputationLimitError(f"{len(rows)}x{len(rows[0])} matrix exceeds the size limit")
    if method == "auto":
        if size <= _limits["bareiss"]:
            method = "bareiss"
        elif size <= _limits["flint"]:
            method = "flint"
        else:
            method = "modular"
    if method == "bareiss":
        return bareiss_rank(rows)
    if method == "flint":
        return flint_rank(rows)
    if method == "modular":
        return modular_rank(rows)
    raise ValueError(f"unknown rank method {method!r}")


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = [[Fraction(v) for v in row] for row in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def nullspace(rows: Sequence[Sequence], n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : A v = 0} over Q."""
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def transpose(rows: Sequence[Sequence]) -> list[list]:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]
