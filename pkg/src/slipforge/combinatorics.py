"""Integer partitions, cycle types and conjugacy-class sizes of S_k."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be nonincreasing: {parts}")

    @property
    def k(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.parts).items()))

    def is_rectangular(self) -> bool:
        return len(set(self.parts)) <= 1

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class CycleType:
    """Cycle type of a permutation, kept both as a partition and as `1^m1 2^m2 ...`."""

    partition: Partition
    multiplicities: dict[int, int] = field(compare=False, hash=False, default=None)

    def __post_init__(self):
        mult = self.partition.multiplicities()
        if self.multiplicities is None:
            object.__setattr__(self, "multiplicities", mult)
        elif {j: m for j, m in self.multiplicities.items() if m} != mult:
            raise ValueError("multiplicities inconsistent with partition")

    @property
    def k(self) -> int:
        return self.partition.k

    @classmethod
    def of_permutation(cls, perm) -> "CycleType":
        """Cycle type of a permutation given as a sequence of images of 0..k-1."""
        perm = list(perm)
        seen = [False] * len(perm)
        lengths = []
        for start in range(len(perm)):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            lengths.append(length)
        return cls(Partition(tuple(sorted(lengths, reverse=True))))


def as_partition(mu) -> Partition:
    if isinstance(mu, Partition):
        return mu
    if isinstance(mu, CycleType):
        return mu.partition
    return Partition(tuple(mu))


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(k: int) -> list[Partition]:
    """All partitions of `k` in descending lexicographic order.

    For k = 4 this is (4), (3,1), (2,2), (2,1,1), (1,1,1,1), the same order in
    which the classes of S_4 are usually tabulated.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    return [Partition(p) for p in _partitions(k, k)]


def cstd(mu) -> int:
    """Order of the centralizer, prod_j m_j! * j**m_j."""
    mu = as_partition(mu)
    out = 1
    for j, m in mu.multiplicities().items():
        out *= math.factorial(m) * j**m
    return out


def class_size(mu) -> int:
    """Number of permutations in S_k with cycle type `mu`."""
    mu = as_partition(mu)
    size, rem = divmod(math.factorial(mu.k), cstd(mu))
    assert rem == 0
    return size


def partition_count(k: int) -> int:
    """p(k) via Euler's pentagonal recurrence (independent of the enumerator)."""
    p = [1] + [0] * k
    for n in range(1, k + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > n:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[n - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            j += 1
        p[n] = total
    return p[k]
