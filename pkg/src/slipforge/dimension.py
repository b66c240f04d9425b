"""Dimensions of spaces of degree-k SLIPs.

For n qudits of common dimension m and k = m r, the dimension is the number of
S_k-invariants in the n-fold tensor power of the rectangular irrep,

    d(k, n) = sum_mu chi(mu)**n / cstd(mu),

summed over cycle types mu of S_k. Seen as a function of n this is an
exponential polynomial, which `ExpPolyDim` holds with exact coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .characters import rect_character, rect_dim
from .combinatorics import cstd, partitions_of


@dataclass(frozen=True)
class ExpPolyDim:
    """sum_b c_b * b**n with exact rational coefficients, for a fixed degree k."""

    k: int
    terms: dict[int, Fraction]

    def __call__(self, n: int) -> int:
        value = sum((c * Fraction(b) ** n for b, c in self.terms.items()), Fraction(0))
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral dimension {value} at n={n}")
        return int(value)

    def numerators(self) -> dict[int, int]:
        """Coefficients scaled by k!, which are always integers."""
        kf = math.factorial(self.k)
        out = {}
        for b, c in self.terms.items():
            scaled = c * kf
            assert scaled.denominator == 1
            out[b] = int(scaled)
        return out

    def to_json(self) -> dict:
        return {
            "factorial_denominator": math.factorial(self.k),
            "terms": [{"base": b, "numerator": c} for b, c in sorted(self.numerators().items())],
        }


def degree_gate(k: int, dims) -> bool:
    """True iff lcm(dims) divides k; otherwise every degree-k SLIP vanishes."""
    dims = list(dims)
    if any(d < 2 for d in dims):
        raise ValueError("local dimensions must be >= 2")
    return k % math.lcm(*dims) == 0


def _character_values(k: int, m: int):
    r = k // m
    for mu in partitions_of(k):
        yield mu, rect_character(m, r, mu)


def slip_dim(k: int, n: int, m: int) -> int:
    """Dimension of degree-k SLIPs on n qudits of dimension m."""
    if k < 0 or n < 1 or m < 2:
        raise ValueError("need k >= 0, n >= 1, m >= 2")
    if k % m:
        return 0
    if k == 0:
        return 1
    total = Fraction(0)
    for mu, chi in _character_values(k, m):
        if chi:
            total += Fraction(chi**n, cstd(mu))
    assert total.denominator == 1
    return int(total)


def slip_dim_symbolic(k: int, m: int) -> ExpPolyDim:
    """d(k, n) as an exponential polynomial in n; zero-character classes dropped, equal bases merged."""
    if k < 0 or m < 2:
        raise ValueError("need k >= 0, m >= 2")
    if k % m:
        return ExpPolyDim(k, {})
    if k == 0:
        return ExpPolyDim(0, {1: Fraction(1)})
    terms: dict[int, Fraction] = {}
    for mu, chi in _character_values(k, m):
        if chi:
            terms[chi] = terms.get(chi, Fraction(0)) + Fraction(1, cstd(mu))
    return ExpPolyDim(k, {b: c for b, c in sorted(terms.items()) if c})


def asymptotic_ratio(k: int, m: int, n_max: int) -> list[Fraction]:
    """d(k, n) / dim(V^lam)**n for n = 1..n_max.

    Tends to 1/k! for k > 4 and to 1/6 for k = 4, m = 2. For k = 2 the base is
    1 and the sequence alternates 0, 1.
    """
    if k % m or k == 0:
        raise ValueError("m must divide k and k must be positive")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    poly = slip_dim_symbolic(k, m)
    base = rect_dim(m, k // m)
    return [Fraction(poly(n), base**n) for n in range(1, n_max + 1)]
