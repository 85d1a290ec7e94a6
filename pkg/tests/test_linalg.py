import random
from fractions import Fraction

import pytest

from algspline.linalg import (PRIMES, ComputationLimitError, bareiss_rank, flint_rank, modular_rank,
                              nullspace, rank, rref, set_rank_limits)


def _random_matrix(rows, cols, r, seed):
    rng = random.Random(seed)
    A = [[rng.randint(-9, 9) for _ in range(r)] for _ in range(rows)]
    B = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(r)]
    return [[sum(a[k] * B[k][j] for k in range(r)) for j in range(cols)] for a in A]


@pytest.mark.parametrize("seed", range(5))
def test_rank_routes_agree(seed):
    M = _random_matrix(12, 9, 5, seed)
    assert bareiss_rank(M) == flint_rank(M) == modular_rank(M) == rank(M)
    assert rank(M) <= 5


def test_rank_of_rationals():
    M = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]
    assert rank(M) == 1
    assert rank([]) == 0
    assert rank([[0, 0], [0, 0]]) == 0


def test_rref_and_nullspace():
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    R, pivots = rref(M)
    assert pivots == [0, 1]
    ns = nullspace(M, 3)
    assert len(ns) == 1
    assert all(sum(Fraction(a) * b for a, b in zip(row, ns[0])) == 0 for row in M)


def test_primes_are_large():
    assert all(p > 2 ** 61 for p in PRIMES)


def test_limit_raises():
    set_rank_limits(max_entries=10)
    try:
        with pytest.raises(ComputationLimitError):
            rank([[1] * 5] * 5)
    finally:
        set_rank_limits(max_entries=40_000_000)
