"""q-expansions: classical Eisenstein series, theta series, eta quotients,
Hauptmoduln and character-twisted Eisenstein series of weight 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalog import TransitionCase, case_constants
from .cyclotomic import Cyclotomic
from .dirichlet import DirichletCharacter, chi3, chi4, chi5, l_value_negative, principal
from .local_model import extremal_series, f_series, u_series
from .qseries import (GaussRational, Series, lambert, series_compose, series_exp, series_inv,
                      series_pow, series_reverse, solve_dlog)

F = Fraction


@dataclass(frozen=True)
class QExpansion:
    series: Series
    weight: Fraction
    note: str = ""

    def __getitem__(self, n):
        return self.series[n]


def _sigma_weight(k: int):
    return lambda m: F(m**k)


def classic_eisenstein(which: str, N: int) -> QExpansion:
    which = which.upper()
    if which == "E2":
        s = 1 - 24 * lambert("q", N, _sigma_weight(1))
        return QExpansion(s, F(2), "quasi-modular")
    if which == "E4":
        return QExpansion(1 + 240 * lambert("q", N, _sigma_weight(3)), F(4), "level 1")
    if which == "E6":
        return QExpansion(1 - 504 * lambert("q", N, _sigma_weight(5)), F(6), "level 1")
    raise ValueError(f"unknown Eisenstein series {which!r}")


def _char_weight(chi: DirichletCharacter, scale):
    def w(m):
        v = chi(m)
        return v.to_fraction() * scale if v.is_rational() else v * scale
    return w


def theta_series(which: str, N: int) -> QExpansion:
    if which in ("theta3", "t3"):
        return QExpansion(1 + lambert("q", N, _char_weight(chi3(), 6)), F(1), "Gamma1(3)")
    if which in ("theta4", "t4"):
        return QExpansion(1 + lambert("q", N, _char_weight(chi4(), 4)), F(1), "Gamma1(4)")
    if which == "f5":
        chi = chi5()
        a, b = GaussRational(F(3, 2), F(-1, 2)), GaussRational(F(3, 2), F(1, 2))

        def w(m):
            g = chi(m).gaussian_parts()
            val = GaussRational(*g)
            return a * val + b * val.conjugate()

        return QExpansion(1 + lambert("q", N, w), F(1), "Gamma1(5)")
    raise ValueError(f"unknown theta series {which!r}")


# ---------------------------------------------------------------------------
# Eta quotients


@dataclass(frozen=True)
class EtaQuotientSpec:
    terms: tuple  # ((delta, r_delta), ...)
    sign: int = 1

    @property
    def leading_power(self) -> Fraction:
        return F(sum(d * r for d, r in self.terms), 24)


class EtaError(ValueError):
    pass


def eta_quotient(spec: EtaQuotientSpec, N: int) -> QExpansion:
    """sign * prod eta(delta tau)^{r_delta} as a q-series."""
    lead = spec.leading_power
    if lead.denominator != 1 or lead < 0:
        raise EtaError(f"leading exponent {lead} is not a nonnegative integer")
    L = int(lead)
    order = N - L
    if order < 0:
        raise EtaError("order below the leading power")
    # log prod_m (1 - q^m) = -sum_M sigma_1(M)/M q^M
    log = [F(0)] * (order + 1)
    for delta, r in spec.terms:
        for M in range(1, order // delta + 1):
            s1 = sum(j for j in range(1, M + 1) if M % j == 0)
            log[M * delta] -= r * F(s1, M)
    body = series_exp(Series("q", order, log)) * spec.sign
    weight = F(sum(r for _, r in spec.terms), 2)
    return QExpansion(Series("q", N, [0] * L + list(body.coeffs)), weight)


def _eta(*terms, sign=1) -> EtaQuotientSpec:
    return EtaQuotientSpec(tuple(terms), sign)


def _legendre5_product(N: int) -> Series:
    """prod_m (1 - q^m)^{5 eps(m)} with eps the quadratic character mod 5."""
    eps = chi5() ** 2
    log = [F(0)] * (N + 1)
    for m in range(1, N + 1):
        e = eps(m).to_fraction()
        if not e:
            continue
        for k in range(1, N // m + 1):
            log[m * k] -= 5 * e / k
    return series_exp(Series("q", N, log))


def hauptmodul_P(d, N: int) -> QExpansion:
    case = TransitionCase.parse(d)
    T = TransitionCase
    if case is T.D1:
        E4 = classic_eisenstein("E4", N).series
        E6 = classic_eisenstein("E6", N).series
        s = -(1 - E6 * series_pow(E4, F(-3, 2))) / 864
    elif case is T.D2:
        R = eta_quotient(_eta((2, 24), (1, -24)), N).series
        s = -R * series_inv(1 + 64 * R)
    elif case is T.D3:
        R = eta_quotient(_eta((3, 12), (1, -12)), N).series
        s = -R * series_inv(1 + 27 * R)
    elif case is T.D4:
        s = eta_quotient(_eta((1, 8), (4, 16), (2, -24), sign=-1), N).series
    elif case is T.D5:
        s = Series("q", N, [0] + list((-_legendre5_product(N - 1)).coeffs))
    elif case is T.D6I:
        s = eta_quotient(_eta((1, 3), (6, 9), (2, -3), (3, -9), sign=-1), N).series
    elif case is T.D6II:
        s = eta_quotient(_eta((1, 4), (6, 8), (2, -8), (3, -4), sign=-1), N).series
    elif case is T.D8:
        s = eta_quotient(_eta((2, 4), (8, 8), (4, -12), sign=-1), N).series
    else:
        raise ValueError(f"no Hauptmodul for d = {case.label}")
    return QExpansion(s, F(0), f"Hauptmodul {case.label}")


def theta_object(d, N: int) -> tuple[QExpansion, int]:
    """The modular form matched by f_d(P_d(q))^power, with that power."""
    case = TransitionCase.parse(d)
    T = TransitionCase
    if case is T.D1:
        return classic_eisenstein("E4", N), 4
    if case is T.D2:
        E2 = classic_eisenstein("E2", N).series
        return QExpansion(2 * E2.dilate(2).truncate(N) - E2, F(2)), 2
    if case is T.D3:
        return theta_series("theta3", N), 1
    if case is T.D4:
        return theta_series("theta4", N), 1
    if case is T.D5:
        return theta_series("f5", N), 1
    t3 = theta_series("theta3", N).series
    if case is T.D6I:
        return QExpansion(t3 * F(1, 3) + t3.dilate(2).truncate(N) * F(2, 3), F(1)), 1
    if case is T.D6II:
        return QExpansion(t3 * F(1, 2) + t3.dilate(2).truncate(N) * F(1, 2), F(1)), 1
    if case is T.D8:
        return QExpansion(theta_series("theta4", N).series.dilate(2).truncate(N), F(1)), 1
    raise ValueError(f"no theta object for d = {case.label}")


# ---------------------------------------------------------------------------
# Eisenstein series E_k^{chi, psi, n}


@dataclass(frozen=True)
class EisensteinParams:
    k: int
    chi: DirichletCharacter
    psi: DirichletCharacter
    n: int

    def __post_init__(self):
        if self.chi.parity() * self.psi.parity() != (-1) ** self.k:
            raise ValueError("parity condition chi psi(-1) = (-1)^k violated")

    def __str__(self):
        return f"E_{self.k}^{{{self.chi},{self.psi},{self.n}}}"


def eis_constant_term(p: EisensteinParams) -> Cyclotomic:
    if p.chi.modulus == 1:
        return l_value_negative(1 - p.k, p.psi) / 2
    return Cyclotomic.rational(0)


def eis_general(p: EisensteinParams, N: int) -> QExpansion:
    """1/2 [chi = 1_1] L(1-k, psi) + sum_M q^{M n} sum_{m j = M} psi(m) m^{k-1} chi(j)."""
    cs: list = [Cyclotomic.rational(0)] * (N + 1)
    cs[0] = eis_constant_term(p)
    for M in range(1, N // p.n + 1):
        acc = Cyclotomic.rational(0)
        for m in range(1, M + 1):
            if M % m:
                continue
            a, b = p.psi(m), p.chi(M // m)
            if a and b:
                acc = acc + a * b * (m ** (p.k - 1))
        cs[M * p.n] = acc
    return QExpansion(Series("q", N, cs), F(p.k), str(p))


def eis_numeric_coeffs(p: EisensteinParams, N: int) -> list[complex]:
    """Same expansion in floating point, for large N."""
    out = [0j] * (N + 1)
    out[0] = complex(eis_constant_term(p))
    psi = [p.psi.numeric(m) for m in range(p.psi.modulus)]
    chi = [p.chi.numeric(j) for j in range(p.chi.modulus)]
    top = N // p.n
    for m in range(1, top + 1):
        a = psi[m % p.psi.modulus] * m ** (p.k - 1)
        if a == 0:
            continue
        for j in range(1, top // m + 1):
            b = chi[j % p.chi.modulus]
            if b:
                out[m * j * p.n] += a * b
    return out


EisCombo = list  # [(Cyclotomic coefficient, EisensteinParams)]


def extremal_eisenstein_combo(d) -> EisCombo:
    """The weight-3 Eisenstein combination equal to u f^3 in the modular coordinate."""
    case = TransitionCase.parse(d)
    T = TransitionCase
    one = principal(1)
    c = Cyclotomic.rational
    if case is T.D3:
        return [(c(-9), EisensteinParams(3, one, chi3(), 1))]
    if case is T.D4:
        return [(c(-4), EisensteinParams(3, one, chi4(), 1))]
    if case is T.D5:
        i = Cyclotomic.i()
        return [(-1 + i * F(1, 2), EisensteinParams(3, one, chi5(), 1)),
                (-1 - i * F(1, 2), EisensteinParams(3, one, chi5().conj(), 1))]
    if case in (T.D6I, T.D6II):
        return [(c(-1), EisensteinParams(3, one, chi3(), 1)), (c(-8), EisensteinParams(3, one, chi3(), 2))]
    if case is T.D8:
        return [(c(-4), EisensteinParams(3, one, chi4(), 2))]
    raise ValueError(f"no Eisenstein decomposition for d = {case.label}")


def combo_series(combo: EisCombo, N: int) -> Series:
    out = Series("q", N, [Cyclotomic.rational(0)])
    for coeff, p in combo:
        out = out + eis_general(p, N).series * coeff
    return out


# ---------------------------------------------------------------------------
# Canonical coordinate


def canonical_P_of_q(d, N: int) -> QExpansion:
    """P(q) = -q + ... with q dP/dq / P = (u f^2)(P)."""
    f = f_series(d, N)
    uf2 = u_series(d, N) * f * f
    q_of_P = solve_dlog(series_inv(uf2), -1)
    return QExpansion(series_reverse(q_of_P).with_var("q"), F(0), "canonical")


def Q_of_q(d, N: int) -> Series:
    """Q(q) = -q + ... with q dQ/dq / Q = E_d(q) = (u f^3)(P(q))."""
    P = canonical_P_of_q(d, N).series
    ext = series_compose(extremal_series(d, N), P)
    return solve_dlog(ext, -1)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    ok: bool
    order: int
    first_failure: int | None = None


def _compare(name, a: Series, b: Series) -> IdentityResult:
    bad = a.first_mismatch(b)
    return IdentityResult(name, bad is None, min(a.order, b.order), bad)


def identity_suite(d, N: int) -> list[IdentityResult]:
    case = TransitionCase.parse(d)
    case_constants(case)
    out = []
    P = hauptmodul_P(case, N).series
    out.append(_compare("P = -q + O(q^2)", P.truncate(1), Series("q", 1, [0, -1])))
    out.append(_compare("canonical P equals Hauptmodul", canonical_P_of_q(case, N).series, P))
    theta, power = theta_object(case, N)
    fP = series_compose(f_series(case, N), P)
    out.append(_compare(f"f o P to the power {power} equals theta object", fP**power, theta.series))
    if case not in (TransitionCase.D1, TransitionCase.D2):
        ext = series_compose(extremal_series(case, N), P)
        out.append(_compare("extremal function equals Eisenstein combination", ext,
                            combo_series(extremal_eisenstein_combo(case), N)))
    if case in (TransitionCase.D6I, TransitionCase.D6II):
        out.append(six_level_relation(N))
    return out


def six_level_relation(N: int) -> IdentityResult:
    a = hauptmodul_P("6I", N).series
    b = hauptmodul_P("6II", N).series
    lhs = -72 * a * series_inv(1 + 8 * a)
    rhs = -72 * b * series_inv(1 + 9 * b)
    return _compare("-72 P_6I/(1+8P_6I) = -72 P_6II/(1+9P_6II)", lhs, rhs)

