"""Exact q-analog counting: Gaussian binomials and MRD rank distributions."""

from __future__ import annotations

from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def gaussian_binomial(q: int, n: int, k: int) -> int:
    """[n choose k]_q; 0 when k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


@lru_cache(maxsize=None)
def rank_distribution(q: int, m: int, n: int, delta: int, r: int) -> int:
    """Number of rank-r codewords in a linear (m x n, delta) MRD code."""
    lo, hi = min(m, n), max(m, n)
    if not (delta <= r <= lo):
        raise ValueError(f"rank {r} outside [{delta}, {lo}]")
    total = 0
    for s in range(r - delta + 1):
        total += (-1) ** s * q ** comb(s, 2) * gaussian_binomial(q, r, s) * (q ** (hi * (r - s - delta + 1)) - 1)
    return gaussian_binomial(q, lo, r) * total


def rank_count(q: int, m: int, n: int, delta: int, r: int) -> int:
    """Like rank_distribution but defined for every r: 1 at r = 0, 0 below delta."""
    if r == 0:
        return 1
    if r < delta or r > min(m, n):
        return 0
    return rank_distribution(q, m, n, delta, r)
