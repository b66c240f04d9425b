import itertools
import math

import pytest
from hypothesis import given, strategies as st

from slipforge.combinatorics import (
    CycleType,
    Partition,
    as_partition,
    class_size,
    cstd,
    partition_count,
    partitions_of,
)


def brute_partitions(k):
    # compositions of k made weakly decreasing, deduplicated
    out = set()
    for cuts in itertools.product((0, 1), repeat=max(k - 1, 0)):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.add(tuple(sorted(parts, reverse=True)))
    return out


def test_partitions_of_4_order():
    got = [p.parts for p in partitions_of(4)]
    assert got == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


@pytest.mark.parametrize("k", range(1, 13))
def test_partitions_match_brute_force(k):
    got = [p.parts for p in partitions_of(k)]
    assert len(got) == len(set(got))
    assert set(got) == brute_partitions(k)
    assert got == sorted(got, reverse=True)


def test_partition_counts_against_pentagonal_recurrence():
    for k in range(0, 31):
        assert len(partitions_of(k)) == partition_count(k)
    assert partition_count(30) == 5604


def test_cstd_examples():
    assert cstd((1, 1, 1, 1)) == 24
    assert cstd((3, 1)) == 3
    assert cstd((2, 2)) == 8
    assert cstd((4,)) == 4


@pytest.mark.parametrize("k", range(1, 13))
def test_class_sizes_sum_to_factorial(k):
    assert sum(class_size(mu) for mu in partitions_of(k)) == math.factorial(k)


@pytest.mark.parametrize("k", range(1, 7))
def test_class_sizes_by_enumeration(k):
    counts = {}
    for perm in itertools.permutations(range(k)):
        mu = CycleType.of_permutation(perm).partition
        counts[mu] = counts.get(mu, 0) + 1
    for mu in partitions_of(k):
        assert counts[mu] == class_size(mu)
    assert class_size((k,)) == math.factorial(k - 1)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition((3, 3)).is_rectangular()
    assert not Partition((3, 1)).is_rectangular()


def test_cycle_type_multiplicities():
    ct = CycleType(Partition((2, 2, 1)))
    assert ct.multiplicities == {1: 1, 2: 2}
    assert ct.k == 5
    with pytest.raises(ValueError):
        CycleType(Partition((2, 1)), {1: 2})
    assert as_partition(ct) == Partition((2, 2, 1))


@given(st.permutations(list(range(7))))
def test_cycle_type_sums_to_k(perm):
    ct = CycleType.of_permutation(perm)
    assert ct.k == 7
    assert 1 <= class_size(ct.partition) <= math.factorial(7)
