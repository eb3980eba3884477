"""Mirror maps of the local models.

For each case the function f = 1 + theta g solves

    (1 + k P - m P^2) theta^2 f + (k P - 2 m P^2) theta f + (l P - m P^2) f = 0

with (k, l, m) = (kappa, lambda, mu) and theta = P d/dP.  Everything here
is exact over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalog import TransitionCase, case_constants, case_data
from .qseries import Series, series_exp, series_inv

F = Fraction


def f_series(d, N: int) -> Series:
    """Coefficients f_0..f_N from the three-term recurrence."""
    if N < 1:
        raise ValueError("order must be at least 1")
    kappa, lam, mu = case_constants(d)
    f = [F(1)]
    prev = F(0)
    for m in range(N):
        nxt = (-(kappa * (m * m + m) + lam) * f[m] + mu * m * m * prev) / ((m + 1) ** 2)
        prev = f[m]
        f.append(nxt)
    return Series("P", N, f)


def g_series(d, N: int) -> Series:
    """g with theta g = f - 1 and g(0) = 0."""
    f = f_series(d, N)
    return Series("P", N, [F(0)] + [f[m] / m for m in range(1, N + 1)])


def u_series(d, N: int) -> Series:
    kappa, _, mu = case_constants(d)
    return Series("P", N, [1, kappa, -mu])


def mirror_Q(d, N: int) -> Series:
    """Q = P exp(g(P))."""
    g = g_series(d, N)
    return series_exp(g).shift(1)


def extremal_series(d, N: int) -> Series:
    """u f^3."""
    f = f_series(d, N)
    return u_series(d, N) * f * f * f


def ode_residual(d, f: Series) -> Series:
    kappa, lam, mu = case_constants(d)
    P = Series.gen("P", f.order)
    t1, t2 = f.theta(), f.theta().theta()
    return (1 + kappa * P - mu * P * P) * t2 + (kappa * P - 2 * mu * P * P) * t1 + (lam * P - mu * P * P) * f


def pochhammer_rising(a: Fraction, m: int) -> Fraction:
    out = F(1)
    for j in range(m):
        out *= a + j
    return out


@dataclass(frozen=True)
class HypergeomReport:
    ok: bool
    checked: int
    first_mismatch: int | None = None


def hypergeometric_coefficients(d, N: int) -> list[Fraction]:
    """Closed-form 2F1 coefficients for d in {1, 2, 3, 4, 8}."""
    case = TransitionCase.parse(d)
    if case is TransitionCase.D8:
        # f_8(P) = 2F1(1/2, 1/2; 1; 16 P^2)
        out = [F(0)] * (N + 1)
        for m in range(N // 2 + 1):
            out[2 * m] = pochhammer_rising(F(1, 2), m) ** 2 / F(_fact(m)) ** 2 * 16**m
        return out
    data = case_data(case)
    if data.n_d is None:
        raise ValueError(f"no hypergeometric closed form for d = {case.label}")
    n, kappa = data.n_d, data.kappa
    return [pochhammer_rising(F(1, n), m) * pochhammer_rising(1 - F(1, n), m) / F(_fact(m)) ** 2 * (-kappa) ** m
            for m in range(N + 1)]


def _fact(m: int) -> int:
    out = 1
    for j in range(2, m + 1):
        out *= j
    return out


def hypergeom_check(d, N: int) -> HypergeomReport:
    f = f_series(d, N)
    ref = hypergeometric_coefficients(d, N)
    for m in range(N + 1):
        if f[m] != ref[m]:
            return HypergeomReport(False, N, m)
    return HypergeomReport(True, N)


@dataclass(frozen=True)
class MirrorData:
    case: TransitionCase
    f: Series
    g: Series
    u: Series
    Q_of_P: Series
    extremal: Series
    v: Series

    def check_invariants(self) -> bool:
        f, g = self.f, self.g
        return (f[0] == 1 and g[0] == 0
                and all(f[m] == m * g[m] for m in range(1, f.order + 1))
                and self.Q_of_P[1] == 1 and self.extremal[0] == 1)


def mirror_data(d, N: int) -> MirrorData:
    case = TransitionCase.parse(d)
    f = f_series(case, N)
    return MirrorData(case, f, g_series(case, N), u_series(case, N), mirror_Q(case, N),
                      extremal_series(case, N), f.theta() * series_inv(f))


# ---------------------------------------------------------------------------
# Regular solution near y = 1/P = 0


@dataclass(frozen=True)
class RegularSolution:
    case: TransitionCase
    coeffs: Series  # f^reg = sum_{k>=1} c_k y^k stored as c_0 = 0, c_1 = 1, ...
    v_reg: Series  # theta_P f^reg / f^reg = -theta_y f^reg / f^reg


def f_reg_series(d, N: int) -> RegularSolution:
    """Log-free Frobenius solution at y = 0 with c_1 = 1 (needs mu != 0).

    The y^k coefficient of the equation reads
    -mu (k-1)^2 c_k + (kappa (k-1)^2 - kappa (k-1) + lambda) c_{k-1} + (k-2)^2 c_{k-2} = 0.
    """
    case = TransitionCase.parse(d)
    kappa, lam, mu = case_constants(case)
    if mu == 0:
        raise ValueError("mu = 0: the exponents at y = 0 are not (1, 1)")
    c = [F(0), F(1)]
    for k in range(2, N + 2):
        j = k - 1
        c.append(((kappa * j * j - kappa * j + lam) * c[k - 1] + (k - 2) ** 2 * c[k - 2]) / (mu * j * j))
    coeffs = Series("y", N + 1, c)
    h = Series("y", N, c[1:])  # f^reg / y
    v = -1 - h.theta() * series_inv(h)
    return RegularSolution(case, coeffs, v)


def ode_residual_y(d, f: Series) -> Series:
    """Left side of the equation rewritten in y = 1/P."""
    kappa, lam, mu = case_constants(d)
    y = Series.gen("y", f.order)
    t1 = f.theta()
    return (y * y + kappa * y - mu) * t1.theta() - (kappa * y - 2 * mu) * t1 + (lam * y - mu) * f


# ---------------------------------------------------------------------------
# The two-parameter case d = 7


def _padd(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pscale(a: list, c) -> list:
    return _ptrim([x * c for x in a])


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [F(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim(out)


def _ptrim(a: list) -> list:
    a = [F(x) for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _ptheta(a: list) -> list:
    return _ptrim([i * x for i, x in enumerate(a)])


_ONE_4R = [F(1), F(4)]


@dataclass(frozen=True)
class Algebraic:
    """p(r) * (1 + 4r)^(-e/2) with p in Q[r]."""

    p: tuple
    e: int

    def theta(self) -> "Algebraic":
        """r d/dr, keeping the closed form."""
        p = list(self.p)
        new = _padd(_pmul(_ptheta(p), _ONE_4R), _pscale(_pmul([F(0), F(1)], p), -2 * self.e))
        return Algebraic(tuple(new), self.e + 2)

    def raise_to(self, e: int) -> list:
        """Numerator over the common factor (1 + 4r)^(-e/2), e >= self.e, same parity."""
        k = e - self.e
        if k < 0 or k % 2:
            raise ValueError("cannot raise to a smaller or opposite-parity exponent")
        out = list(self.p)
        for _ in range(k // 2):
            out = _pmul(out, _ONE_4R)
        return out

    def __call__(self, r: float) -> float:
        return sum(float(c) * r**i for i, c in enumerate(self.p)) * (1 + 4 * r) ** (-self.e / 2)


@dataclass(frozen=True)
class F7Data:
    b: tuple  # b_1 .. b_N as Algebraic
    g_series_part: tuple  # -b_k / k, the non-logarithmic part of g_7

    def at_r0(self) -> list[Fraction]:
        return [bk.p[0] if bk.p else F(0) for bk in self.b]


def f7_series(N_y: int) -> F7Data:
    """b_k(r) from k^2 b_{k+1} + k^2 b_k + 3k theta_r b_k + 2 theta_r^2 b_k = 0."""
    if N_y < 1:
        raise ValueError("order must be at least 1")
    b = [Algebraic((F(1),), 1)]
    for k in range(1, N_y):
        bk = b[-1]
        t1 = bk.theta()
        t2 = t1.theta()
        e = bk.e + 4
        num = _padd(_padd(_pscale(bk.raise_to(e), k * k), _pscale(t1.raise_to(e), 3 * k)), _pscale(t2.raise_to(e), 2))
        b.append(Algebraic(tuple(_pscale(num, F(-1, k * k))), e))
    return F7Data(tuple(b), tuple(Algebraic(tuple(_pscale(list(x.p), F(-1, k + 1))), x.e) for k, x in enumerate(b)))


def f7_recurrence_residual(data: F7Data, k: int) -> list:
    """Numerator of k^2 b_{k+1} + (k^2 + 3k theta + 2 theta^2) b_k (zero polynomial when satisfied)."""
    bk, bk1 = data.b[k - 1], data.b[k]
    t1 = bk.theta()
    t2 = t1.theta()
    e = max(bk1.e, t2.e)
    parts = [_pscale(bk1.raise_to(e), k * k), _pscale(bk.raise_to(e), k * k),
             _pscale(t1.raise_to(e), 3 * k), _pscale(t2.raise_to(e), 2)]
    out: list = []
    for p in parts:
        out = _padd(out, p)
    return out


def f7_first_order_residual(data: F7Data, k: int) -> list:
    """y^k coefficient of ((3 + 3y - 4r) theta_y + (7y - 2 - 8r) theta_r - 3) f_7, for k >= 1."""
    bk = data.b[k - 1]
    tk = bk.theta()
    terms = [(bk, [F(3 * k - 3), F(-4 * k)]),  # (3 - 4r) k - 3
             (tk, [F(-2), F(-8)])]
    if k >= 2:
        bprev = data.b[k - 2]
        terms += [(bprev, [F(3 * (k - 1))]), (bprev.theta(), [F(7)])]
    e = max(t.e for t, _ in terms)
    out: list = []
    for t, poly in terms:
        out = _padd(out, _pmul(t.raise_to(e), poly))
    return out
