"""Characters of S_k on rectangular partitions and the dimensions of their irreps.

Two routes are provided. The two-row case (m = 2) uses a fixed-point count on
p-subsets, following the recursion of the qubit dimension code. Any number of
rows goes through the Murnaghan-Nakayama rule on beta-sets.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .combinatorics import Partition, as_partition, class_size, partitions_of


def fixed_points(p: int, q: int, mu) -> int:
    """Fixed points of a permutation of cycle type `mu` acting on p-subsets of {1..p+q}.

    A subset is fixed exactly when it is a union of cycles, so this counts the
    ways to split the cycles into two groups of total lengths p and q.
    """
    parts = as_partition(mu).parts
    if sum(parts) != p + q:
        raise ValueError(f"cycle type {parts} is not a partition of {p + q}")
    return _fp(p, q, parts)


@lru_cache(maxsize=None)
def _fp(p: int, q: int, x: tuple[int, ...]) -> int:
    # branch order mirrors the reference recursion, including the empty case
    if len(x) == 0:
        return 0
    a = x[0]
    r, s = (q, p) if p < q else (p, q)
    if s == 0:
        return 1
    if max(x) == 1:
        return math.comb(r + s, r)
    if a > r:
        return 0
    if a <= s:
        return _fp(r - a, s, x[1:]) + _fp(r, s - a, x[1:])
    return _fp(r - a, s, x[1:])


def char_two_row(k: int, mu) -> int:
    """chi_{(k/2, k/2)}(mu) as a difference of two fixed-point counts."""
    if k % 2:
        raise ValueError("two-row rectangular characters need even k")
    mu = as_partition(mu)
    if mu.k != k:
        raise ValueError(f"{mu} is not a partition of {k}")
    if k == 0:
        return 1
    h = k // 2
    return fixed_points(h, h, mu) - fixed_points(h + 1, h - 1, mu)


def _to_betas(shape: tuple[int, ...]) -> list[int]:
    n = len(shape)
    return [shape[i] + n - 1 - i for i in range(n)]


def _from_betas(betas: list[int]) -> tuple[int, ...]:
    betas = sorted(betas, reverse=True)
    n = len(betas)
    return tuple(v for v in (b - (n - 1 - i) for i, b in enumerate(betas)) if v > 0)


@lru_cache(maxsize=None)
def _murnaghan_nakayama(shape: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not shape else 0
    h, rest = mu[0], mu[1:]
    betas = _to_betas(shape)
    occupied = set(betas)
    total = 0
    for b in betas:
        target = b - h
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in betas if target < c < b)
        new_shape = _from_betas([target if c == b else c for c in betas])
        value = _murnaghan_nakayama(new_shape, rest)
        total += -value if height % 2 else value
    return total


def character(lam, mu) -> int:
    """chi_lam(mu) for arbitrary partitions of the same integer."""
    lam, mu = as_partition(lam), as_partition(mu)
    if lam.k != mu.k:
        raise ValueError(f"{lam} and {mu} partition different integers")
    return _murnaghan_nakayama(lam.parts, mu.parts)


def char_rectangular(m: int, r: int, mu) -> int:
    """chi_lam(mu) for the rectangle lam = (r, ..., r) with m rows."""
    if m < 1 or r < 1:
        raise ValueError("need m >= 1 and r >= 1")
    mu = as_partition(mu)
    if mu.k != m * r:
        raise ValueError(f"{mu} is not a partition of {m * r}")
    return _murnaghan_nakayama((r,) * m, mu.parts)


def rect_character(m: int, r: int, mu) -> int:
    """Rectangular character, taking the fixed-point route when m == 2."""
    if m == 2:
        return char_two_row(2 * r, mu)
    return char_rectangular(m, r, mu)


def rect_dim(m: int, r: int) -> int:
    """dim V^lam for lam = (r, ..., r) with m rows."""
    if m < 1 or r < 1:
        raise ValueError("need m >= 1 and r >= 1")
    k = m * r
    num = math.factorial(k)
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            num *= j - i
    den = 1
    for j in range(1, m + 1):
        den *= math.factorial(r + m - j)
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def generalized_catalan(m: int, r: int) -> int:
    """Multinomial Catalan number: (mr)! prod_{i<j}(j - i) / prod_{j=0}^{m-1} (r + j)!.

    The argument `m` is the number of rows of the rectangle, so the result is
    the base of the exponential growth of the dimension of degree-mr SLIPs
    on qudits of dimension m. For m = 2 this is the classical Catalan number.
    """
    if m < 1 or r < 1:
        raise ValueError("need m >= 1 and r >= 1")
    vandermonde = math.prod(math.factorial(j) for j in range(m))
    den = math.prod(math.factorial(r + j) for j in range(m))
    value, rem = divmod(math.factorial(m * r) * vandermonde, den)
    assert rem == 0
    return value


def character_table_row(lam) -> list[dict]:
    """One row of the character table: value and class size for every class."""
    lam = as_partition(lam)
    rows = []
    for mu in partitions_of(lam.k):
        if lam.is_rectangular() and lam.parts:
            value = rect_character(len(lam), lam[0], mu)
        else:
            value = character(lam, mu)
        rows.append({"cycle_type": list(mu.parts), "value": value, "class_size": class_size(mu)})
    return rows
