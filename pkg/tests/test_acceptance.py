"""Acceptance gate: the laboratory's headline checks.

One test per criterion, each recording a single pass/fail line with the
measured quantities (echoed in the terminal summary).  Tolerances are
asserted exactly as stated, including clauses that desk-scale data
genuinely cannot meet (a published column that is floor-truncated, and
o(1) terms that shrink only logarithmically); those tests fail with
their diagnostics rather than loosening the check.
"""

import math
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from mpmath import mp, mpf

from hecke7 import central, density, field, moments, specfun, vz
from hecke7.specfun import PrecisionContext

REPORT_LINES = []

CTX20 = PrecisionContext(20)
CTX25 = PrecisionContext(25)
CTX30 = PrecisionContext(30)

TABLE_B = {
    1: Fraction(1, 2), 3: 1, 5: 1, 7: 3, 9: 7,
    11: 3**2 * 5 * 7, 13: 3 * 7 * 29, 15: 3 * 7 * 103,
    17: 3 * 5 * 7 * 607, 19: 3**3 * 7 * 4793,
    21: 3**2 * 5 * 7 * 29 * 2399, 23: 3**3 * 5 * 7**2 * 10091,
    25: 3**2 * 7**2 * 29 * 61717, 27: 3**2 * 5**2 * 7**2 * 13 * 53**2 * 79,
    29: 3**4 * 5**2 * 7**2 * 113 * 127033, 31: 3**5 * 5 * 7**2 * 71 * 1690651,
    33: 3**4 * 5 * 7**2 * 1291 * 1747169,
}
TABLE_4DP = {
    1: "0.9666", 3: "4.7890", 5: "0.9885", 7: "0.7346", 9: "0.1769",
    11: "9.8609", 13: "0.6916", 15: "0.1187", 17: "1.0642", 19: "1.7403",
    21: "6.6396", 23: "0.3302", 25: "0.2072", 27: "1.2823", 29: "8.4268",
    31: "0.6039", 33: "0.0591",
}


def _record(num: int, ok: bool, detail: str) -> str:
    line = f"criterion {num:02d}: {'PASS' if ok else 'FAIL'} - {detail}"
    REPORT_LINES.append(line)
    print(line)
    return line


def test_criterion_01_exact_central_table():
    t0 = time.perf_counter()
    bad = [n for n, b in TABLE_B.items() if vz.A_of(n) != Fraction(b) ** 2]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    line = _record(1, ok, f"A(n) exact on all 17 rows, {elapsed:.2f}s")
    assert not bad, line
    assert elapsed < 60, line


def test_criterion_02_central_two_routes_and_table():
    route_diffs = {}
    table_diffs = {}
    with mp.workdps(30):
        for n in sorted(TABLE_B):
            cv = central.central_value_series(n, CTX20)
            ec = vz.central_value_exact(n, CTX20)
            route_diffs[n] = abs(cv.value - ec.L)
            table_diffs[n] = max(
                abs(cv.value - mpf(TABLE_4DP[n])), abs(ec.L - mpf(TABLE_4DP[n]))
            )
    max_route = max(route_diffs.values())
    bad_rows = [n for n, d in table_diffs.items() if d > 5e-5]
    max_table = max(table_diffs.values())
    ok = max_route <= 1e-10 and not bad_rows
    line = _record(
        2,
        ok,
        f"routes agree to {mpmath.nstr(max_route, 2)}; 4dp column max diff "
        f"{mpmath.nstr(max_table, 3)} with {len(bad_rows)}/17 rows over 5e-5 "
        f"(column is floor-truncated: every diff < 1e-4)",
    )
    assert max_route <= 1e-10, line
    assert max_table < 1e-4, line
    assert not bad_rows, line


def test_criterion_03_nonvanishing_congruence():
    t0 = time.perf_counter()
    assert vz.B_of(1) == Fraction(1, 2)
    rows = vz.congruence_check(301)
    elapsed = time.perf_counter() - t0
    bad = [n for (n, _, okk) in rows if not okk]
    ok = not bad and len(rows) == 150 and elapsed < 60
    line = _record(3, ok, f"B(n) = -n mod 4 for odd n in (1, 301], {elapsed:.2f}s")
    assert ok, line


def test_criterion_04_first_moment():
    t0 = time.perf_counter()
    pred = 2 * math.pi / math.sqrt(7)
    resids = []
    for N in (50, 100, 200, 469):
        rep = moments.empirical_moment(1, N, CTX25)
        resids.append(rep.residual)
        assert abs(rep.predicted_main - pred) < 1e-12
    elapsed = time.perf_counter() - t0
    bounds = [3 * math.log(N) / math.sqrt(N) for N in (50, 100, 200, 469)]
    bound_ok = all(abs(r) <= b for r, b in zip(resids, bounds))
    mags = [abs(r) for r in resids]
    trend_ok = all(a > b for a, b in zip(mags, mags[1:]))
    ok = bound_ok and trend_ok and elapsed < 600
    line = _record(
        4,
        ok,
        f"bound holds at all N (max |res|/bound {max(m / b for m, b in zip(mags, bounds)):.3f}); "
        f"|residual| sequence {', '.join(f'{m:.5f}' for m in mags)} "
        f"{'decreasing' if trend_ok else 'not decreasing'}; {elapsed:.1f}s",
    )
    assert bound_ok, line
    assert elapsed < 600, line
    assert trend_ok, line


def test_criterion_05_second_moment():
    rep = moments.empirical_moment(2, 469, CTX25)
    displayed, reduced = moments.m2_conjecture_main(469, CTX25)
    in_range = 28.32 <= rep.empirical <= 28.42
    main_ok = abs(float(reduced) - 28.35) <= 0.01
    forms_ok = abs(float(displayed) - float(reduced)) <= 0.05
    ok = in_range and main_ok and forms_ok
    line = _record(
        5,
        ok,
        f"M2(469) = {rep.empirical:.4f} in [28.32, 28.42]; reduced main "
        f"{float(reduced):.4f} = 28.35 +- 0.01; forms gap "
        f"{abs(float(displayed) - float(reduced)):.4f} <= 0.05",
    )
    assert ok, line


def test_criterion_06_euler_factor_oracle():
    assert abs(moments.local_factor(2, 0, 0).closed - 12) < 1e-20
    shifts = (0.0, 0.05, -0.05, 0.1, -0.1)
    pairs = [(a, b) for a in shifts for b in shifts]
    pairs += [(0.05j, 0.05j), (0.05j, -0.05j), (-0.05j, 0.05j), (-0.05j, -0.05j)]
    worst = 0.0
    for p in (2, 3, 5, 11, 13):
        for a, b in pairs:
            min_re = min(complex(a).real, complex(b).real)
            cut = moments.brute_cutoff_for(p, min_re)
            assert cut >= 60
            v = moments.local_factor(p, a, b, mode="brute", cutoff=cut, ctx=CTX30)
            worst = max(worst, float(abs(v.brute - v.closed)))
    ok = worst <= 1e-12
    line = _record(
        6,
        ok,
        f"closed vs brute on 5 primes x {len(pairs)} shift pairs, "
        f"max diff {worst:.2e} <= 1e-12 (cutoffs >= 60); spot value 12 exact",
    )
    assert ok, line


def test_criterion_07_delta_oracles():
    worst_one = 0.0
    for m in range(1, 31):
        emp = moments.empirical_delta_oracle(m, 1, 4000)
        worst_one = max(worst_one, abs(emp - moments.delta_one(m)))
    worst_two = 0.0
    for p in (2, 3, 5):
        for i in range(4):
            for j in range(4):
                emp = moments.empirical_delta_oracle(p**i, p**j, 4000)
                worst_two = max(worst_two, abs(emp - moments.delta_two(p**i, p**j)))
    ok = worst_one <= 0.02 and worst_two <= 0.02
    line = _record(
        7,
        ok,
        f"single-coefficient averages max |emp - closed| {worst_one:.4f}, "
        f"prime-power pairs max {worst_two:.4f}, both <= 0.02 at N=4000",
    )
    assert ok, line


def test_criterion_08_explicit_formula_identity():
    g = density.gaussian(2.0)
    worst = 0.0
    for n in (1, 2, 3):
        ef = density.explicit_formula_sum(n, g, CTX25)
        zs = density.zero_side_sum(n, g, 14.0)
        worst = max(worst, abs(ef - zs))
    ok = worst <= 1e-3
    line = _record(
        8, ok, f"zero side vs formula side, max residual {worst:.2e} <= 1e-3"
    )
    assert ok, line


def test_criterion_09_one_level_density():
    rmt = density.rmt_prediction(density.fejer(1.0))
    rmt_ok = rmt == Fraction(3, 2)
    rep = density.empirical_one_level(100, density.fejer(1.0), ctx=CTX25)
    bound_ok = rep.nonvanishing_lower_bound == 0.25
    count = len(central.zeros_up_to(50, 10.0).gammas)
    main = central.zero_count_main_term(50, 10.0)
    count_ok = abs(count - main) <= 5
    emp_gap = abs(rep.empirical - 1.5)
    emp_ok = emp_gap <= 0.15
    ok = rmt_ok and bound_ok and count_ok and emp_ok
    line = _record(
        9,
        ok,
        f"rmt = 3/2 exact; bound = 1/4; zero count {count} vs {main:.2f} (+-5); "
        f"Fejer empirical {rep.empirical:.4f} differs from 3/2 by {emp_gap:.4f} "
        f"(<= 0.15 required; explicit-formula side {rep.explicit_formula:.4f}, "
        f"gap to it {abs(rep.empirical - rep.explicit_formula):.4f} within "
        f"tail mass {rep.discarded_mass_bound:.4f})",
    )
    assert rmt_ok, line
    assert bound_ok, line
    assert count_ok, line
    assert emp_ok, line


def _Q_quadrature(n, x):
    with mp.workdps(50):
        n_, x_ = mpf(n), mpf(x)

        def g(t):
            return mpmath.exp((n_ - 1) * mpmath.log(t) - t - mpmath.loggamma(n_))

        s = mpmath.sqrt(n_)
        cand = [x_, n_ - 8 * s, n_ - s, n_, n_ + s, n_ + 8 * s]
        pts = sorted({p for p in cand if p >= x_})
        return +mpmath.quad(g, pts + [mpmath.inf])


def test_criterion_10_special_functions():
    omega = specfun.constants(CTX30)["omega"]
    omega_diff = abs(omega - mpf("0.81408739831"))
    omega_ok = omega_diff <= 1e-11
    tric_worst = 0.0
    for y in (-2, -1, 0, 1, 2):
        r = abs(specfun.tricomi_lhs(10**4, y, CTX30) - specfun.tricomi_rhs(10**4, y, CTX30))
        tric_worst = max(tric_worst, float(r))
    tric_ok = tric_worst <= 10.0 / 10**4
    q_worst = mpf(0)
    with mp.workdps(40):
        for n in (1, 10, 100, 1000):
            for x in (mpf("0.1"), mpf(n) / 2, mpf(n), 2 * mpf(n)):
                d = abs(specfun.reg_gamma_Q(n, x, CTX30) - _Q_quadrature(n, x))
                q_worst = max(q_worst, d)
    q_ok = q_worst <= mpf(10) ** (-30 + 3)
    ok = omega_ok and tric_ok and q_ok
    line = _record(
        10,
        ok,
        f"Omega diff {mpmath.nstr(omega_diff, 2)} <= 1e-11; Tricomi residual "
        f"{tric_worst:.2e} <= 1e-3 at n=1e4; Q vs quadrature max "
        f"{mpmath.nstr(q_worst, 2)} <= 1e-27",
    )
    assert ok, line
