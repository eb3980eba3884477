"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest -v tests/test_acceptance.py`` or directly with
``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import cmath
import math
import random
import sys
import time
from fractions import Fraction as F

import pytest

from artifact.catalog import SUPPORTED, case_constants, euler_defect
from artifact.dirichlet import (bernoulli, chi3, chi5, enumerate_characters, gauss_sum, l_one_odd, l_prime_minus1,
                                l_value_negative, principal)
from artifact.gw import (E, gw_x_closed, gw_y_closed, mirror_term, pf_verify, pt_pt_difference_in_y, pullback_x,
                         recursion_matches_product, regularized_limit_check, x_one_point)
from artifact.local_model import extremal_series, f_series, hypergeom_check, ode_residual, u_series
from artifact.modular import (canonical_P_of_q, classic_eisenstein, combo_series, extremal_eisenstein_combo, hauptmodul_P,
                              six_level_relation, theta_object)
from artifact.qseries import (Series, series_compose, series_exp, series_inv, series_log, series_reverse, series_root)
from artifact.transition_limits import (CuspRep, constant_term_consistency, cusp_limit, q_path_limit, real_axis_limit,
                                        remark_table_check, translation_battery, worked_examples)

CASES = [c.label for c in SUPPORTED]
NON_ELLIPTIC = ["3", "4", "5", "6I", "6II", "8"]
DEGREE = {"1": 1, "2": 2, "3": 3, "4": 4, "5": 5, "6I": 6, "6II": 6, "8": 8}
LP3 = complex(l_prime_minus1(chi3())).real

CRITERIA: dict[int, tuple[str, callable]] = {}


def criterion(n: int, title: str):
    def register(fn):
        CRITERIA[n] = (title, fn)
        return fn
    return register


@criterion(1, "constants and Euler defects")
def _c1():
    table = {"1": (432, 60, 0), "2": (64, 12, 0), "3": (27, 6, 0), "4": (16, 4, 0), "5": (11, 3, 1),
             "6I": (7, 2, 8), "6II": (10, 3, -9), "8": (0, 0, 16)}
    defects = {"1": 60, "2": 36, "3": 24, "4": 16, "5": 10, "6I": 6, "6II": 4, "7": 4, "8": 4}
    for d, klm in table.items():
        assert case_constants(d) == klm, d
    for d, chi in defects.items():
        assert euler_defect(d) == chi, d


@criterion(2, "mirror-map series")
def _c2():
    for d in CASES:
        assert ode_residual(d, f_series(d, 30)).valuation() is None, d
    for d in ("1", "2", "3", "4", "8"):
        rep = hypergeom_check(d, 30)
        assert rep.ok, (d, rep.first_mismatch)
    f4, f8 = f_series("4", 15), f_series("8", 30)
    for m in range(31):
        assert f8[m] == (f4[m // 2] * (-1) ** (m // 2) if m % 2 == 0 else 0), m


@criterion(3, "Picard-Fuchs operators")
def _c3():
    for d in CASES:
        rep = pf_verify(d, 10)
        assert rep.ok, (d, rep.failure)
    for d in ("1", "2", "3", "4", "8"):
        assert recursion_matches_product(d, 8) is None, d
    for d in CASES:
        f = f_series(d, 6)
        for m in range(1, 7):
            assert mirror_term(d, m) == E * (-f[m] / m), (d, m)


@criterion(4, "Gromov-Witten closed forms")
def _c4():
    N = 10
    assert gw_x_closed("3")["pt"] == {1: 6}
    assert gw_x_closed("3")["h2,h2"] == {1: 45}
    assert gw_x_closed("5")["pt,pt"] == {2: 1}
    eee5 = gw_y_closed("5", N)["E,E,E"].parts[0]
    assert (eee5[0], eee5[1]) == (5, -10)
    for d in CASES:
        kappa, lam, mu = case_constants(d)
        deg = DEGREE[d]
        assert x_one_point(d) == lam
        Y, X = gw_y_closed(d, N), pullback_x(d, N)
        f, u = f_series(d, N), u_series(d, N)
        assert Y["E,E,E"].parts[0] * u * f * f * f == Series.constant("P", N) * deg
        assert Y["H2,E2"].parts[1] == -deg * u * (f + f.theta())
        one = Series.constant("P", N)
        assert (Y["pt"] - X["pt"]).parts == {1: one}
        assert (Y["H2,H2"] - X["h2,h2"]).parts == {1: deg * one}
        a, b = pt_pt_difference_in_y(d, N)
        assert list(a.coeffs)[:3] == [F(-mu, deg), F(lam, deg), 0]
        assert list(b.coeffs)[:3] == [F(-mu, deg), F(kappa, deg), F(1, deg)]
    for d in ("5", "6I", "6II", "8"):
        assert regularized_limit_check(d, N).ok, d


@criterion(5, "modular identities")
def _c5():
    N = 20
    for d in NON_ELLIPTIC + ["2", "1"]:
        theta, power = theta_object(d, N)
        fP = series_compose(f_series(d, N), hauptmodul_P(d, N).series)
        assert fP ** power == theta.series, d
    assert theta_object("2", N)[1] == 2 and theta_object("1", N)[1] == 4
    fP1 = series_compose(f_series("1", N), hauptmodul_P("1", N).series)
    assert fP1 ** 4 == classic_eisenstein("E4", N).series
    for d in CASES:
        assert canonical_P_of_q(d, N).series == hauptmodul_P(d, N).series, d
    assert six_level_relation(N).ok


@criterion(6, "Eisenstein decomposition")
def _c6():
    N = 20
    for d in NON_ELLIPTIC:
        lhs = series_compose(extremal_series(d, N), hauptmodul_P(d, N).series)
        assert lhs == combo_series(extremal_eisenstein_combo(d), N), d


@criterion(7, "translation formula")
def _c7():
    examples = worked_examples()
    assert len(examples) == 2
    for r, computed, expected in examples:
        assert computed == expected, r
    battery = translation_battery(seed=0, count=10, c_max=24)
    assert len(battery) == 10
    for psi, r, resid in battery:
        assert CuspRep.parse(r).c <= 24
        assert resid < 1e-10, (psi, r, resid)


@criterion(8, "L-values")
def _c8():
    assert l_value_negative(-1, principal(5)) == F(1, 3)
    assert l_value_negative(-1, chi5() ** 2) == F(-2, 5)
    assert abs(LP3 - 0.3230659) < 5e-7
    c = chi5()
    val = complex(gauss_sum(c ** 3).to_mpc() * l_one_odd(c))
    assert abs(val - math.pi * (1 + 3j) / 5) < 1e-10


@criterion(9, "cusp limits")
def _c9():
    assert abs(cusp_limit("6I", CuspRep(1, 3)).q_value - cmath.exp(-1j * math.pi / 4)) < 1e-9
    assert cusp_limit("6I", CuspRep(1, 3)).root_of_unity == (-1, 8)
    assert abs(cusp_limit("5", CuspRep(2, 5)).q_value - cmath.exp(-1j * math.pi / 12)) < 1e-9
    assert cusp_limit("5", CuspRep(2, 5)).root_of_unity == (-1, 24)
    lim = cusp_limit("6II", CuspRep(1, 2))
    assert lim.lprime_multiplier(chi3()) == -2
    assert abs(lim.q_value - math.exp(-2 * LP3)) < 1e-9
    items = remark_table_check()
    assert items and all(it.ok for it in items), [it for it in items if not it.ok]
    assert abs(cusp_limit("3", CuspRep(1, 7)).q_value + math.exp(-63 * LP3)) < 1e-9
    assert abs(cusp_limit("6II", CuspRep(1, 7)).q_value + math.exp(-35 * LP3)) < 1e-9


@criterion(10, "numerical limits")
def _c10():
    start = time.perf_counter()
    for d in ("1", "2", "3", "4"):
        assert abs(real_axis_limit(d).log_limit) < 1e-6, d
    assert abs(real_axis_limit("8").value - 1j) < 1e-6
    assert time.perf_counter() - start <= 10
    for d, r in (("6I", (1, 3)), ("6II", (1, 2)), ("5", (2, 5))):
        start = time.perf_counter()
        path = q_path_limit(d, CuspRep(*r))
        assert time.perf_counter() - start <= 60
        assert abs(path.value - cusp_limit(d, CuspRep(*r)).q_value) < 1e-3, (d, path.value)


def _random_series(rng, order, lead):
    cs = [F(rng.randint(-5, 5), rng.randint(1, 7)) for _ in range(order + 1)]
    cs[0] = F(lead)
    return Series("x", order, cs)


@criterion(11, "property suites")
def _c11():
    rng = random.Random(0)
    order = 10
    x = Series.gen("x", order)
    for _ in range(100):
        a = _random_series(rng, order, 0)
        assert series_log(series_exp(a)) == a
        b = _random_series(rng, order, rng.randint(1, 9))
        assert b * series_inv(b) == Series.constant("x", order)
        k = rng.randint(2, 5)
        c = _random_series(rng, order, 1)
        assert series_root(c, k) ** k == c
        p = a + (rng.randint(1, 4) - a[1]) * x
        assert series_compose(p, series_reverse(p)) == x
    for m in range(1, 31):
        for chi in enumerate_characters(m):
            for k in range(0, 9):
                if (m, k) != (1, 1) and chi.parity() != (-1) ** k:
                    assert bernoulli(chi, k).value.is_zero(), (chi, k)
    for m in range(1, 61):
        for chi in enumerate_characters(m):
            if chi.is_primitive():
                assert abs(abs(complex(gauss_sum(chi))) ** 2 - chi.conductor) < 1e-10, chi
    for d, r in (("4", (1, 2)), ("5", (2, 5)), ("6I", (1, 3)), ("6II", (1, 2)), ("8", (1, 4))):
        top, zero = constant_term_consistency(d, CuspRep(*r))
        assert top == 1 and abs(zero) < 1e-12, (d, top, zero)


def run_criterion(n: int) -> tuple[bool, str]:
    title, fn = CRITERIA[n]
    start = time.perf_counter()
    try:
        fn()
    except Exception as exc:  # report every failure kind on the summary line
        return False, f"FAIL criterion {n}: {title} ({type(exc).__name__}: {exc})"
    return True, f"PASS criterion {n}: {title} ({time.perf_counter() - start:.1f}s)"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = run_criterion(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
