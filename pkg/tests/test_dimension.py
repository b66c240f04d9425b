import math
from fractions import Fraction

import pytest

from slipforge.characters import rect_dim
from slipforge.dimension import asymptotic_ratio, degree_gate, slip_dim, slip_dim_symbolic


def d6_closed(n):
    num = 36 + 44 * (-1) ** n + 8 * 2**n + 3 * (-3) ** n + Fraction(5**n, 5)
    return Fraction(num, 144)


@pytest.mark.parametrize("n", range(1, 13))
def test_closed_forms(n):
    assert slip_dim(2, n, 2) == (1 + (-1) ** n) // 2
    assert slip_dim(4, n, 2) == Fraction(2 ** (n - 1) + (-1) ** n, 3)
    assert slip_dim(6, n, 2) == d6_closed(n)


def test_known_small_values():
    assert [slip_dim(4, n, 2) for n in range(1, 7)] == [0, 1, 1, 3, 5, 11]
    assert [slip_dim(6, n, 2) for n in range(1, 6)] == [0, 1, 0, 4, 1]
    assert slip_dim(3, 2, 3) == 1
    assert slip_dim(3, 3, 3) == 0


@pytest.mark.parametrize("k", [1, 3, 5, 7])
def test_odd_degree_vanishes_on_qubits(k):
    assert all(slip_dim(k, n, 2) == 0 for n in range(1, 8))


def test_degree_zero():
    assert slip_dim(0, 3, 2) == 1


@pytest.mark.parametrize("k,m", [(k, 2) for k in range(2, 11, 2)] + [(k, 3) for k in (3, 6, 9)])
def test_symbolic_matches_numeric(k, m):
    poly = slip_dim_symbolic(k, m)
    for n in range(1, 13):
        assert poly(n) == slip_dim(k, n, m)


def test_symbolic_k6():
    assert slip_dim_symbolic(6, 2).numerators() == {-3: 15, -1: 220, 1: 180, 2: 40, 5: 1}


def test_symbolic_k10_against_printed_expression():
    # each printed term c * sign**n * prod(base**(n + shift)) as (c, sign, [(base, shift)])
    printed = [
        (272160, 1, []), (28448, 1, [(-3, 0)]), (766080, -1, []), (338751, 1, [(2, 0)]),
        (14175, -1, [(2, 2)]), (11200, 1, [(3, 1)]), (35, 1, [(2, 1), (3, 2)]),
        (315, -1, [(4, 3)]), (189, 1, [(-2, 0), (5, 1)]), (45, 1, [(14, 0)]), (1, 1, [(42, 0)]),
    ]
    expected = {}
    for c, sign, factors in printed:
        base = sign * math.prod(b for b, _ in factors)
        coef = c * math.prod(b**shift for b, shift in factors)
        expected[base] = expected.get(base, 0) + coef
    got = slip_dim_symbolic(10, 2)
    assert got.numerators() == expected
    assert got.to_json()["factorial_denominator"] == math.factorial(10)


def test_symbolic_gate_and_json():
    assert slip_dim_symbolic(5, 2).terms == {}
    js = slip_dim_symbolic(4, 2).to_json()
    assert js == {"factorial_denominator": 24, "terms": [{"base": -1, "numerator": 8}, {"base": 2, "numerator": 4}]}


def test_degree_gate():
    assert degree_gate(6, (2, 3))
    assert not any(degree_gate(k, (2, 3)) for k in (2, 3, 4, 5))
    assert degree_gate(4, (2, 2, 4))
    with pytest.raises(ValueError):
        degree_gate(2, (1, 2))


def test_asymptotics():
    r4 = asymptotic_ratio(4, 2, 20)
    r6 = asymptotic_ratio(6, 2, 20)
    assert all(isinstance(q, Fraction) for q in r4 + r6)
    assert abs(r4[-1] - Fraction(1, 6)) < Fraction(1, 1000)
    assert abs(r6[-1] - Fraction(1, 720)) < Fraction(1, 1000)
    assert r4[3] == Fraction(3, 16)
    r9 = asymptotic_ratio(9, 3, 30)
    assert abs(float(r9[-1]) * math.factorial(9) - 1) < 1e-3
    assert rect_dim(3, 3) == 42


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        slip_dim(2, 0, 2)
    with pytest.raises(ValueError):
        asymptotic_ratio(3, 2, 5)
