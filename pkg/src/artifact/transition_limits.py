"""Limits of the quantum variable Q at the transition point.

Along tau = r + i t the extremal function E_d gives

    log Q(t) = log(-q) + sum_M e_M q^M / M,     q = exp(2 pi i tau),

and as t -> 0 the limit is -e^{2 pi i r} exp(sum alpha I) where the sum runs
over the Eisenstein series obtained by translating E_d by r, and I are the
regularized period integrals from :func:`artifact.dirichlet.i_limit`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy import integrate

from .catalog import TransitionCase, case_constants, case_data
from .cyclotomic import Cyclotomic
from .dirichlet import (Closed, DirichletCharacter, enumerate_characters, euler_phi, gauss_sum,
                        i_limit, l_three, principal)
from .modular import (EisensteinParams, eis_constant_term, eis_numeric_coeffs,
                      extremal_eisenstein_combo, hauptmodul_P, Q_of_q)
from .qseries import SeriesError, series_eval

MAX_C = 240


class LimitError(ValueError):
    pass


@dataclass(frozen=True)
class CuspRep:
    a: int
    c: int

    def __post_init__(self):
        if self.c <= 0:
            raise LimitError("denominator must be positive")
        if math.gcd(self.a, self.c) != 1:
            raise LimitError(f"{self.a}/{self.c} is not in lowest terms")

    @staticmethod
    def parse(text: str) -> "CuspRep":
        a, _, c = text.partition("/")
        return CuspRep(int(a), int(c or 1))

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.c)

    def __str__(self):
        return f"{self.a}/{self.c}"


# ---------------------------------------------------------------------------
# Translation formula


def _add_term(acc: dict, params: EisensteinParams, coeff: Cyclotomic) -> None:
    if coeff.is_zero():
        return
    new = acc.get(params, Cyclotomic.rational(0)) + coeff
    if new.is_zero():
        acc.pop(params, None)
    else:
        acc[params] = new


def _factorizations(c: int):
    for c1 in range(1, c + 1):
        if c % c1:
            continue
        rest = c // c1
        for c2 in range(1, rest + 1):
            if rest % c2 == 0:
                yield c1, c2, rest // c2


def translate_eisenstein(psi: DirichletCharacter, r: CuspRep) -> list:
    """E_3^{1_1,psi,1}(tau + r) as a combination of E_3^{chi, psi', n}(tau)."""
    if r.c > MAX_C:
        raise LimitError(f"denominator {r.c} above cap {MAX_C}")
    acc: dict = {}
    for c1, c2, c3 in _factorizations(r.c):
        pc1 = psi(c1)
        if pc1.is_zero():
            continue
        for chi in enumerate_characters(c3):
            ca = chi(r.a)
            if ca.is_zero():
                continue
            coeff = ca * gauss_sum(chi.conj()) * pc1 * Fraction(c1 * c1, euler_phi(c3))
            psi2 = principal(c2 * c3) * chi * psi
            _add_term(acc, EisensteinParams(3, chi, psi2, c1 * c2), coeff)
    return _sorted_combo(acc)


def _sorted_combo(acc: dict) -> list:
    return sorted(((v, p) for p, v in acc.items()), key=lambda t: (t[1].n, str(t[1].chi), str(t[1].psi)))


def translate_params(p: EisensteinParams, r: CuspRep) -> list:
    """E^{1_1,psi,n}(tau + r) = E^psi_{n r}(n tau), folded into the n parameter."""
    if p.chi.modulus != 1:
        raise LimitError("only chi = 1_1 inputs are translated")
    nr = Fraction(p.n * r.a, r.c)
    inner = translate_eisenstein(p.psi, CuspRep(nr.numerator, nr.denominator))
    return [(c, EisensteinParams(q.k, q.chi, q.psi, q.n * p.n)) for c, q in inner]


def translate_combo(combo: list, r: CuspRep) -> list:
    acc: dict = {}
    for alpha, p in combo:
        for c, q in translate_params(p, r):
            _add_term(acc, q, alpha * c)
    return _sorted_combo(acc)


def _eval_numeric(coeffs: list, q0: complex) -> complex:
    out = 0j
    for c in reversed(coeffs):
        out = out * q0 + c
    return out


def translate_numeric_check(psi: DirichletCharacter, r: CuspRep, q0: complex, N: int = 400) -> float:
    """|E^{1_1,psi,1}(tau + r) - sum coeff E^{chi,psi',n}(tau)| at q = q0."""
    if abs(q0) > 0.3:
        raise LimitError("|q0| must be at most 0.3")
    base = EisensteinParams(3, principal(1), psi, 1)
    lhs_c = eis_numeric_coeffs(base, N)
    w = [cmath.exp(2j * math.pi * M * r.a / r.c) for M in range(N + 1)]
    lhs = _eval_numeric([c * x for c, x in zip(lhs_c, w)], q0)
    rhs = 0j
    for coeff, p in translate_eisenstein(psi, r):
        rhs += complex(coeff) * _eval_numeric(eis_numeric_coeffs(p, N), q0)
    return abs(lhs - rhs)


def worked_examples() -> list[tuple[CuspRep, list, list]]:
    """(r, computed, expected) for psi = chi_3 at r = 1/2 and r = 1/3."""
    from .dirichlet import chi3

    psi, one = chi3(), principal(1)
    c = Cyclotomic.rational
    sqrt3_i = gauss_sum(psi)  # i sqrt 3
    expected = {
        CuspRep(1, 2): [(c(-4), EisensteinParams(3, one, psi, 2)),
                        (c(1), EisensteinParams(3, one, principal(2) * psi, 2)),
                        (c(-1), EisensteinParams(3, principal(2), principal(2) * psi, 1))],
        CuspRep(1, 3): [(c(1), EisensteinParams(3, one, psi, 3)),
                        (c(Fraction(-1, 2)), EisensteinParams(3, principal(3), psi, 1)),
                        (sqrt3_i * Fraction(1, 2), EisensteinParams(3, psi, principal(3), 1))],
    }
    return [(r, translate_eisenstein(psi, r), _sorted_combo({p: v for v, p in exp}))
            for r, exp in expected.items()]


def translation_battery(seed: int = 0, count: int = 10, c_max: int = 24) -> list[tuple[str, str, float]]:
    """Two-sided numeric residuals for random odd psi, cusps a/c with c <= c_max and |q0| <= 0.3."""
    import random

    rng = random.Random(seed)
    pool = [chi for m in range(3, 13) for chi in enumerate_characters(m) if chi.is_odd()]
    out = []
    for _ in range(count):
        psi = rng.choice(pool)
        c = rng.randint(1, c_max)
        a = rng.choice([x for x in range(c) if math.gcd(x, c) == 1] or [0])
        if c == 1:
            a = 0
        q0 = cmath.rect(rng.uniform(0.05, 0.3), rng.uniform(0, 2 * math.pi))
        out.append((str(psi), f"{a}/{c}", translate_numeric_check(psi, CuspRep(a, c), q0)))
    return out


def decompose_extremal(d) -> list:
    return extremal_eisenstein_combo(d)


# ---------------------------------------------------------------------------
# Cusp limits


@dataclass(frozen=True)
class CuspLimit:
    case: TransitionCase
    r: CuspRep
    exact: Closed  # log Q_r exactly: pi i (1 + 2r) + sum alpha I
    log_value: complex
    q_value: complex
    root_of_unity: tuple | None

    @property
    def trivial_part(self) -> tuple:
        """((primitive psi, multiplier of L'(-1, psi)), ...)."""
        return self.exact.lprime

    @property
    def nontrivial_part(self) -> Closed:
        return Closed(self.exact.const, self.exact.pi_i - Cyclotomic.rational(1 + 2 * self.r.value))

    def lprime_multiplier(self, psi: DirichletCharacter) -> Cyclotomic:
        return self.exact.lprime_coefficient(psi)


def _normalize_turn(t: Fraction) -> Fraction:
    t = t % 1
    if t > Fraction(1, 2):
        t -= 1
    return t


def detect_root_of_unity(z: complex, max_den: int = 360, tol: float = 1e-9) -> tuple | None:
    if abs(abs(z) - 1) > tol:
        return None
    turn = cmath.phase(z) / (2 * math.pi)
    frac = Fraction(turn).limit_denominator(max_den)
    if abs(float(frac) - turn) > tol:
        return None
    frac = _normalize_turn(frac)
    return (frac.numerator, frac.denominator)


def cusp_limit(d, r: CuspRep) -> CuspLimit:
    case = TransitionCase.parse(d)
    combo = translate_combo(decompose_extremal(case), r)
    total = Closed(pi_i=Cyclotomic.rational(1 + 2 * r.value))
    for alpha, p in combo:
        lim = i_limit(3, p.chi, p.psi, p.n)
        total = total + lim.exact.scale(alpha)
    with mpmath.workdps(30):
        log_value = complex(total.evaluate())
    q_value = cmath.exp(log_value)
    root = None
    if not total.lprime and total.const.is_zero():
        if total.pi_i.is_rational():
            root_turn = _normalize_turn(total.pi_i.to_fraction() / 2)
            root = (root_turn.numerator, root_turn.denominator)
        else:
            root = detect_root_of_unity(q_value)
    return CuspLimit(case, r, total, log_value, q_value, root)


def constant_term_consistency(d, r: CuspRep) -> tuple[Cyclotomic, complex]:
    """(sum alpha a_{i infinity,0}, sum alpha a_{0,0}) over the translated combination.

    The constant at the cusp 0 of E_3^{chi, 1_M, n} is phi(M) L(3, chi) / (4 pi^3 i M n^3);
    it vanishes when psi is not principal.
    """
    combo = translate_combo(decompose_extremal(d), r)
    top = Cyclotomic.rational(0)
    zero = mpmath.mpc(0)
    with mpmath.workdps(30):
        for alpha, p in combo:
            top = top + alpha * eis_constant_term(p)
            if p.psi.is_principal():
                M = p.psi.modulus
                zero += alpha.to_mpc() * euler_phi(M) * l_three(p.chi) / (4 * mpmath.pi**3 * 1j * M * p.n**3)
    return top, complex(zero)


# ---------------------------------------------------------------------------
# Remark battery


@dataclass(frozen=True)
class BatteryItem:
    case: str
    r: str
    expected: str
    ok: bool
    detail: str


def _expect_lprime(lim: CuspLimit, psi, mult: int, sign: int) -> tuple[bool, str]:
    coeff = lim.lprime_multiplier(psi)
    other = [c for k, c in lim.trivial_part if k != psi.primitive()]
    phase_ok = lim.nontrivial_part.const.is_zero() and lim.exact.pi_i.is_rational()
    turn = _normalize_turn(lim.exact.pi_i.to_fraction() / 2) if phase_ok else None
    want_turn = Fraction(0) if sign == 1 else Fraction(1, 2)
    ok = coeff == mult and not other and turn == want_turn
    return ok, f"L' multiplier {coeff}, phase turn {turn}"


def remark_table_check() -> list[BatteryItem]:
    from .dirichlet import chi3, chi4

    out = []
    lim = cusp_limit("3", CuspRep(1, 7))
    ok, det = _expect_lprime(lim, chi3(), -63, -1)
    out.append(BatteryItem("3", "1/7", "(-1)^7 exp(-63 L'(-1,chi_3))", ok, det))
    lim = cusp_limit("4", CuspRep(1, 2))
    out.append(BatteryItem("4", "1/2", "1", lim.root_of_unity == (0, 1) and not lim.trivial_part,
                           f"root {lim.root_of_unity}"))
    lim = cusp_limit("4", CuspRep(1, 5))
    ok, det = _expect_lprime(lim, chi4(), -20, -1)
    out.append(BatteryItem("4", "1/5", "-exp(-20 L'(-1,chi_4))", ok, det))
    lim = cusp_limit("5", CuspRep(7, 120))
    out.append(BatteryItem("5", "7/120", "1", lim.root_of_unity == (0, 1) and not lim.trivial_part,
                           f"root {lim.root_of_unity}"))
    lim = cusp_limit("6I", CuspRep(1, 7))
    ok, det = _expect_lprime(lim, chi3(), -35, -1)
    out.append(BatteryItem("6", "1/7", "-exp(-35 L'(-1,chi_3))", ok, det))
    out.extend(_d5_and_6I_classes())
    return out


def _expect_root(lim: CuspLimit, turn: Fraction) -> tuple[bool, str]:
    want = _normalize_turn(turn)
    ok = not lim.trivial_part and lim.root_of_unity == (want.numerator, want.denominator)
    return ok, f"root {lim.root_of_unity}, expected {want}"


def _expect_value(lim: CuspLimit, expected: complex, rel: float = 1e-9) -> tuple[bool, str]:
    err = abs(lim.q_value - expected) / abs(expected)
    return err < rel, f"relative error {err:.2e}"


def _d5_and_6I_classes() -> list[BatteryItem]:
    """d=5 classes of 0, 1/2 and 2/5, and the 6I class of 1/3 (roots omega_N^{-c})."""
    from .dirichlet import chi5, l_prime_minus1

    lp5 = complex(l_prime_minus1(chi5()))
    out = []
    for a, c in ((1, 6), (2, 11)):
        ok, det = _expect_value(cusp_limit("5", CuspRep(a, c)), (-1) ** c * math.exp(c * ((-2 + 1j) * lp5).real))
        out.append(BatteryItem("5", f"{a}/{c}", f"(-1)^c exp(c Re((-2+i) L'(-1,chi_5))), c={c}", ok, det))
    for a, c in ((1, 7), (1, 12)):
        ok, det = _expect_value(cusp_limit("5", CuspRep(a, c)), math.exp(c * ((-1 - 2j) * lp5).real))
        out.append(BatteryItem("5", f"{a}/{c}", f"exp(c Re((-1-2i) L'(-1,chi_5))), c={c}", ok, det))
    for a, c in ((2, 5), (7, 10), (12, 25)):
        ok, det = _expect_root(cusp_limit("5", CuspRep(a, c)), Fraction(-c, 120))
        out.append(BatteryItem("5", f"{a}/{c}", f"omega_120^-{c}", ok, det))
    for a, c in ((1, 3), (1, 9), (4, 15)):
        ok, det = _expect_root(cusp_limit("6I", CuspRep(a, c)), Fraction(-c, 24))
        out.append(BatteryItem("6", f"{a}/{c}", f"omega_24^-{c}", ok, det))
    return out


# ---------------------------------------------------------------------------
# Real-axis limit via the Euler integral


def f_euler(d, p: float) -> float:
    """f_d(p) for real p >= 0 from the Euler integral of 2F1(1/n, 1-1/n; 1; -kappa p)."""
    data = case_data(d)
    n, kappa = data.n_d, data.kappa
    a = 1.0 / n
    beta = math.gamma(1 - a) * math.gamma(a)
    val, _ = integrate.quad(lambda s: (1 + kappa * p * s) ** (-a), 0.0, 1.0,
                            weight="alg", wvar=(-a, a - 1), epsabs=1e-14, epsrel=1e-13, limit=200)
    return val / beta


@dataclass(frozen=True)
class RealAxisResult:
    case: TransitionCase
    log_limit: float
    value: complex
    error_estimate: float


def _log_limit(d) -> tuple[float, float]:
    n = case_data(d).n_d
    inner, e1 = integrate.quad(lambda p: (f_euler(d, p) - 1) / p, 0.0, 1.0, epsabs=1e-12, limit=200)
    # p = w^{-n}: int_1^inf f(p) dp/p = n int_0^1 f(w^{-n}) dw / w
    outer, e2 = integrate.quad(lambda w: n * f_euler(d, w ** (-n)) / w if w > 0 else 0.0, 0.0, 1.0,
                               epsabs=1e-12, limit=200)
    return inner + outer, e1 + e2


def real_axis_limit(d) -> RealAxisResult:
    """lim log Q along P in (0, inf) for d <= 4; for d = 8 the limit of Q along (0, i inf)."""
    case = TransitionCase.parse(d)
    if case is TransitionCase.D8:
        L4, err = _log_limit(TransitionCase.D4)
        return RealAxisResult(case, L4 / 2, 1j * math.exp(L4 / 2), err)
    if case not in (TransitionCase.D1, TransitionCase.D2, TransitionCase.D3, TransitionCase.D4):
        raise LimitError("real-axis limit only for d in {1, 2, 3, 4, 8}")
    L, err = _log_limit(case)
    if err > 1e-7:
        raise LimitError(f"quadrature error estimate {err:.2e} too large")
    return RealAxisResult(case, L, complex(math.exp(L)), err)


# ---------------------------------------------------------------------------
# Numerical q-path limit


def extremal_numeric_coeffs(d, N: int) -> np.ndarray:
    out = np.zeros(N + 1, dtype=complex)
    for alpha, p in decompose_extremal(d):
        out += complex(alpha) * np.array(eis_numeric_coeffs(p, N))
    return out


def log_Q_numeric(e: np.ndarray, q: complex) -> complex:
    """log(-q) + sum_M e_M q^M / M with the principal log(-q)."""
    M = np.arange(1, len(e))
    powers = q ** M
    return cmath.log(-q) + complex(np.sum(e[1:] * powers / M))


@dataclass(frozen=True)
class PathLimit:
    value: complex
    samples: tuple
    residual: float


def q_path_limit(d, r: CuspRep, t_min: float = 0.02, t_max: float = 0.03, steps: int = 5,
                 tol: float = 1e-3) -> PathLimit:
    """Extrapolate Q(r + i t) to t = 0 from samples on [t_min, t_max].

    The segment integral 2 pi int_t^inf (E_d(r + i s) - 1) ds is taken term by
    term on the q-expansion, so it equals sum_M e_M q^M / M.  Near the cusp the
    integrand tends to -1, which fixes the linear model I(t) = I(0) + 2 pi t up
    to exponentially small corrections.  The intercept is read off at t_min and
    the spread of the two smallest samples is the residual.
    """
    case = TransitionCase.parse(d)
    if case not in (TransitionCase.D5, TransitionCase.D6I, TransitionCase.D6II):
        raise LimitError("q-path limit is provided for d in {5, 6I, 6II}")
    if t_min < 0.02 or t_max <= t_min or steps < 2:
        raise LimitError("need 0.02 <= t_min < t_max and at least two steps")
    N = int(40 / (2 * math.pi * t_min)) + 100
    e = extremal_numeric_coeffs(case, N)
    if abs(e[-1]) * math.exp(-2 * math.pi * t_min * N) > 1e-15:
        raise LimitError("series tail bound failure near t_min")
    ts = np.linspace(t_min, t_max, steps)
    base = 2j * math.pi * r.a / r.c
    intercepts = []
    for t in ts:
        q = cmath.exp(base - 2 * math.pi * t)
        integral = log_Q_numeric(e, q) - cmath.log(-q)
        # linear model: integral(t) = integral(0) + 2 pi t
        intercepts.append(1j * math.pi + base + integral - 2 * math.pi * t)
    resid = abs(intercepts[1] - intercepts[0])
    if resid > tol:
        raise LimitError(f"extrapolation residual {resid:.2e} above tolerance")
    return PathLimit(cmath.exp(intercepts[0]), tuple(zip(ts.tolist(), intercepts)), resid)


# ---------------------------------------------------------------------------
# Path images


@dataclass(frozen=True)
class PathRow:
    dir_index: int
    s: float
    q: complex
    P: complex
    Q: complex


_ETA_SPECS = {
    TransitionCase.D4: ((1, 8), (4, 16), (2, -24)),
    TransitionCase.D6I: ((1, 3), (6, 9), (2, -3), (3, -9)),
    TransitionCase.D6II: ((1, 4), (6, 8), (2, -8), (3, -4)),
    TransitionCase.D8: ((2, 4), (8, 8), (4, -12)),
}


def _euler_product_log(q: complex, delta: int, tol: float = 1e-17) -> complex:
    """log prod_m (1 - q^{delta m}), summed until terms fall below tol."""
    out, m = 0j, 1
    x = q**delta
    xm = x
    while abs(xm) > tol:
        out += cmath.log(1 - xm)
        m += 1
        xm *= x
        if m > 100000:
            raise LimitError("Euler product did not converge")
    return out


def P_numeric(d, q: complex) -> complex:
    case = TransitionCase.parse(d)
    if q == 0:
        return 0j
    if case in _ETA_SPECS:
        s = sum(r * _euler_product_log(q, dl) for dl, r in _ETA_SPECS[case])
        return -q * cmath.exp(s)
    if case is TransitionCase.D3:
        R = q * cmath.exp(12 * _euler_product_log(q, 3) - 12 * _euler_product_log(q, 1))
        return -R / (1 + 27 * R)
    if case is TransitionCase.D5:
        s, m, qm = 0j, 1, q
        while abs(qm) > 1e-17:
            eps = (0, 1, -1, -1, 1)[m % 5]
            if eps:
                s += 5 * eps * cmath.log(1 - qm)
            m += 1
            qm *= q
        return -q * cmath.exp(s)
    ser = hauptmodul_P(case, 64).series
    return series_eval(ser, q, tol=1e-10).value


def path_image(d, n_dir: int, samples: int, s_max: float = 0.97) -> list[PathRow]:
    case = TransitionCase.parse(d)
    case_constants(case)
    if not 0 < s_max < 1:
        raise LimitError("s_max must lie in (0, 1)")
    has_combo = case not in (TransitionCase.D1, TransitionCase.D2)
    if has_combo:
        N = int(math.log(1e-17) / math.log(s_max)) + 200
        e = extremal_numeric_coeffs(case, N)
    else:
        qser = Q_of_q(case, 64)
    rows = []
    for j in range(n_dir):
        w = cmath.exp(2j * math.pi * j / n_dir)
        for k in range(samples):
            s = s_max * k / (samples - 1) if samples > 1 else 0.0
            q = s * w
            if s == 0:
                rows.append(PathRow(j, 0.0, 0j, 0j, 0j))
                continue
            if has_combo:
                Q = -q * cmath.exp(log_Q_numeric(e, q) - cmath.log(-q))
            else:
                try:
                    Q = series_eval(qser, q, tol=1e-10).value
                except SeriesError as exc:
                    raise LimitError(f"tail bound failure at |q| = {s}: {exc}") from exc
            rows.append(PathRow(j, s, q, P_numeric(case, q), Q))
    return rows
