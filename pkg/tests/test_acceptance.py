"""Acceptance criteria, one test each. Run with -s to see the PASS/FAIL lines."""

import io
import json
import math
from fractions import Fraction

import numpy as np
import pytest

from slipforge.characters import char_two_row, rect_dim
from slipforge.cli import run
from slipforge.combinatorics import class_size, partitions_of
from slipforge.dimension import asymptotic_ratio, slip_dim, slip_dim_symbolic
from slipforge.qstate import apply_local, ghz, random_local_sl, random_state, w_state, zero_state
from slipforge.schur_weyl import eval_slip, project_single, slip_basis
from slipforge.sl2_ladder import (
    build_w,
    degree6_five_qubit,
    degree6_polynomial,
    extract_invariant,
    mu_poly,
    op_X,
    op_Y,
    phi_poly,
    restrict,
)
from slipforge.slip_qubit import canonical_cuts, degree4_span_rank, f_ell
from slipforge.slocc import Verdict, compare

import acceptance_log
from test_schur_weyl import cycle_lengths, sign, weighted_permutation_sum


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}"
    if detail:
        line += f" ({detail})"
    print(line)
    acceptance_log.LINES.append(line)
    assert ok, line


BASIS_CONFIGS = [(2, 2, 2), (3, 4, 2), (4, 2, 2), (4, 4, 2), (5, 4, 2), (5, 6, 2), (2, 3, 3), (3, 3, 3)]


@pytest.fixture(scope="module")
def bases():
    return {(n, k, m): slip_basis((m,) * n, k) for n, k, m in BASIS_CONFIGS}


def test_01_dimension_closed_forms():
    bad = []
    for n in range(1, 13):
        want = (
            Fraction(1 + (-1) ** n, 2),
            Fraction(2 ** (n - 1) + (-1) ** n, 3),
            Fraction(36 + 44 * (-1) ** n + 8 * 2**n + 3 * (-3) ** n + Fraction(5**n, 5), 144),
        )
        got = (slip_dim(2, n, 2), slip_dim(4, n, 2), slip_dim(6, n, 2))
        if got != want:
            bad.append(n)
    report(1, "dimension closed forms k=2,4,6 for n=1..12", not bad, f"mismatch at n={bad}" if bad else "")


def test_02_symbolic_k10():
    expected = {
        1: 272160, -3: 28448, -1: 766080, 2: 338751, -2: 14175 * 4, 3: 11200 * 3,
        6: 35 * 2 * 9, -4: 315 * 64, -10: 189 * 5, 14: 45, 42: 1,
    }
    got = slip_dim_symbolic(10, 2)
    ok = got.numerators() == expected and got.to_json()["factorial_denominator"] == math.factorial(10)
    report(2, "symbolic d(10, n) term-by-term", ok)


def test_03_character_table():
    values = [char_two_row(4, mu) for mu in partitions_of(4)]
    sizes = [class_size(mu) for mu in partitions_of(4)]
    ok = values == [0, -1, 2, 0, 2] and sizes == [6, 8, 3, 6, 1]
    report(3, "two-row character table of S_4", ok, f"values={values} sizes={sizes}")


def test_04_catalan_dimensions():
    catalan = [math.comb(2 * r, r) // (r + 1) for r in range(1, 11)]
    ok = [rect_dim(2, r) for r in range(1, 11)] == catalan and all(rect_dim(m, 1) == 1 for m in range(2, 7))
    report(4, "rect_dim(2, r) Catalan and rect_dim(m, 1) = 1", ok)


def test_05_projector_golden_forms():
    rng = np.random.default_rng(2024)
    weights = {(1, 1, 1, 1): 1 / 6, (3, 1): -1 / 12, (2, 2): 1 / 6}
    worst = 0.0
    for _ in range(20):
        w4 = rng.standard_normal(256) + 1j * rng.standard_normal(256)
        anti = weighted_permutation_sum(4, 4, lambda p: sign(p) / 24, w4)
        worst = max(worst, np.max(np.abs(project_single(4, 4, w4) - anti)))
        w2 = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        comb = weighted_permutation_sum(2, 4, lambda p: weights.get(cycle_lengths(p), 0), w2)
        worst = max(worst, np.max(np.abs(project_single(2, 4, w2) - comb)))
    report(5, "projector golden forms on 20 random vectors", worst <= 1e-12, f"max error {worst:.1e}")


def test_06_constructive_counts(bases):
    got = {c: len(b) for c, b in bases.items()}
    want = {(n, k, m): slip_dim(k, n, m) for n, k, m in BASIS_CONFIGS}
    bad = {c: (got[c], want[c]) for c in BASIS_CONFIGS if got[c] != want[c]}
    report(6, "basis sizes equal character-theoretic dimensions", not bad, f"{bad}" if bad else f"{got}")


def test_07_invariance_battery(bases):
    worst = 0.0

    def check(before, after):
        nonlocal worst
        worst = max(worst, abs(after - before) / max(1.0, abs(before)))

    trials = 100
    for (n, k, m), basis in bases.items():
        dims = (m,) * n
        if not basis:
            continue
        for seed in range(trials):
            psi = random_state(dims, seed)
            gpsi = apply_local(random_local_sl(dims, 10_000 + seed), psi)
            for v in basis:
                check(eval_slip(v, psi), eval_slip(v, gpsi))
    for n in range(2, 6):
        dims = (2,) * n
        for seed in range(trials):
            psi = random_state(dims, seed)
            gpsi = apply_local(random_local_sl(dims, 20_000 + seed), psi)
            for cut in canonical_cuts(n):
                for ell in (1, 2, 3):
                    check(f_ell(psi, cut, ell), f_ell(gpsi, cut, ell))
    for seed in range(trials):
        psi = random_state((2,) * 5, seed)
        gpsi = apply_local(random_local_sl((2,) * 5, 30_000 + seed), psi)
        check(degree6_five_qubit(psi), degree6_five_qubit(gpsi))
    report(7, "invariance under 100 seeded SL elements", worst <= 1e-8, f"worst relative error {worst:.1e}")


def test_08_degree4_span():
    got = {n: degree4_span_rank(n) for n in (3, 5)}
    ok = all(got[n] == slip_dim(4, n, 2) for n in got)
    report(8, "degree-4 trace family spans all degree-4 SLIPs", ok, f"ranks {got}")


def test_09_ladder_identities():
    phi, mu = phi_poly(), mu_poly()
    ident = extract_invariant(phi, 3) == 36 * (-phi + phi.swap_xy() + mu - mu.swap_xy())
    restr = restrict(build_w(), 4) == 4 * phi
    p = degree6_polynomial()
    killed = not op_X(p) and not op_Y(p)
    report(9, "ladder identities and X I6 = Y I6 = 0", ident and restr and killed,
           f"phi identity={ident} restriction={restr} annihilated={killed}")


def test_10_uniqueness_cross_oracle(bases):
    (fv,) = bases[(5, 6, 2)]
    ratios = np.array([degree6_five_qubit(psi) / eval_slip(fv, psi)
                       for psi in (random_state((2,) * 5, 500 + s) for s in range(20))])
    spread = float(np.max(np.abs(ratios / ratios[0] - 1)))
    report(10, "I6 / f_v constant over 20 states", spread <= 1e-8, f"spread {spread:.1e}")


def test_11_classifier_sanity():
    dims = (2,) * 4
    psi = random_state(dims, 11)
    gpsi = apply_local(random_local_sl(dims, 12), psi).normalized()
    same = compare(psi, gpsi, [2, 4])
    diff = compare(ghz(3), w_state(3), [4])
    null = compare(zero_state(3), w_state(3), [4]).to_json()
    ok = (
        same.verdict is Verdict.EQUIVALENT_CANDIDATE
        and diff.verdict is Verdict.INEQUIVALENT and diff.witness is not None and diff.witness.degree == 4
        and null["verdict"] == "NULL_CONE_INDISTINGUISHABLE" and null["stable_state_assumption"] is True
    )
    report(11, "classifier verdicts", ok, f"{same.verdict.value}, {diff.verdict.value}, {null['verdict']}")


def test_12_degree_gate():
    results = []
    for k in (2, 3, 4, 5):
        out = io.StringIO()
        code = run(["dim", "--k", str(k), "--dims", "2,3"], stdout=out)
        results.append(code == 0 and json.loads(out.getvalue())["dimension"] == 0 and slip_basis((2, 3), k) == [])
    report(12, "dims (2,3) have no SLIPs of degree 2..5", all(results))


def test_13_asymptotics():
    r4 = asymptotic_ratio(4, 2, 20)[-1]
    r6 = asymptotic_ratio(6, 2, 20)[-1]
    ok = abs(r4 - Fraction(1, 6)) < Fraction(1, 1000) and abs(r6 - Fraction(1, 720)) < Fraction(1, 1000)
    report(13, "d(4,n)/2^n -> 1/6 and d(6,n)/5^n -> 1/720 by n=20", ok, f"{float(r4):.6f}, {float(r6):.6f}")
