"""Cohomology rings, I-function coefficients and Picard-Fuchs checks.

Ring elements have exact Laurent-polynomial coefficients in z.  The rings
are finite-dimensional and every class of positive degree is nilpotent, so
an element whose scalar part is a Laurent monomial c z^k is invertible by
a terminating geometric series.  No truncation in z is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .catalog import TransitionCase, case_constants, case_data
from .local_model import f_reg_series, f_series, u_series
from .qseries import Series, series_inv

F = Fraction


# ---------------------------------------------------------------------------
# Laurent polynomials in z


@dataclass(frozen=True)
class LaurentPoly:
    terms: tuple  # sorted ((exponent, Fraction), ...) with nonzero coefficients

    @staticmethod
    def of(d: dict) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((k, F(v)) for k, v in d.items() if v)))

    @staticmethod
    def const(c) -> "LaurentPoly":
        return LaurentPoly.of({0: c})

    @staticmethod
    def z(k: int = 1, c=1) -> "LaurentPoly":
        return LaurentPoly.of({k: c})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coeff(self, k: int) -> Fraction:
        return self.as_dict().get(k, F(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = self.as_dict()
        for k, v in other.terms:
            d[k] = d.get(k, F(0)) + v
        return LaurentPoly.of(d)

    def __neg__(self):
        return LaurentPoly(tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            d: dict = {}
            for a, x in self.terms:
                for b, y in other.terms:
                    d[a + b] = d.get(a + b, F(0)) + x * y
            return LaurentPoly.of(d)
        return LaurentPoly.of({k: v * other for k, v in self.terms})

    __rmul__ = __mul__

    def monomial(self) -> tuple[int, Fraction] | None:
        return self.terms[0] if len(self.terms) == 1 else None

    def __repr__(self):
        return " + ".join(f"{v}*z^{k}" for k, v in self.terms) or "0"


ZERO = LaurentPoly(())
ONE = LaurentPoly.const(1)


# ---------------------------------------------------------------------------
# Rings


@dataclass(frozen=True)
class Ring:
    name: str
    basis: tuple
    degrees: tuple
    table: dict  # (i, j) -> index of the product basis element, absent if zero

    def mul_index(self, i: int, j: int) -> int | None:
        return self.table.get((i, j))


def _x_ring() -> Ring:
    table = {(i, j): i + j for i in range(4) for j in range(4) if i + j <= 3}
    return Ring("X", ("1", "h", "h^2", "h^3"), (0, 1, 2, 3), table)


def _y_ring() -> Ring:
    # basis 1, E, H, E^2, H^2, T with EH = 0 and E^3 = H^3 = T
    basis = ("1", "E", "H", "E^2", "H^2", "T")
    table = {}
    for i in range(6):
        table[(0, i)] = i
        table[(i, 0)] = i
    for a, b, c in [(1, 1, 3), (2, 2, 4), (1, 3, 5), (3, 1, 5), (2, 4, 5), (4, 2, 5)]:
        table[(a, b)] = c
    return Ring("Y", basis, (0, 1, 1, 2, 2, 3), table)


RING_X = _x_ring()
RING_Y = _y_ring()


@dataclass(frozen=True)
class RingElement:
    ring: Ring
    comps: tuple  # LaurentPoly per basis element

    @staticmethod
    def scalar(ring: Ring, c) -> "RingElement":
        lp = c if isinstance(c, LaurentPoly) else LaurentPoly.const(c)
        return RingElement(ring, (lp,) + (ZERO,) * (len(ring.basis) - 1))

    @staticmethod
    def basis_element(ring: Ring, name: str, c=1) -> "RingElement":
        comps = [ZERO] * len(ring.basis)
        comps[ring.basis.index(name)] = c if isinstance(c, LaurentPoly) else LaurentPoly.const(c)
        return RingElement(ring, tuple(comps))

    def _lift(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise ValueError("ring mismatch")
            return other
        return RingElement.scalar(self.ring, other)

    def __add__(self, other):
        o = self._lift(other)
        return RingElement(self.ring, tuple(a + b for a, b in zip(self.comps, o.comps)))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, tuple(-a for a in self.comps))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingElement(self.ring, tuple(a * other for a in self.comps))
        o = self._lift(other)
        out = [ZERO] * len(self.comps)
        for i, a in enumerate(self.comps):
            if a.is_zero():
                continue
            for j, b in enumerate(o.comps):
                if b.is_zero():
                    continue
                k = self.ring.mul_index(i, j)
                if k is not None:
                    out[k] = out[k] + a * b
        return RingElement(self.ring, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RingElement.scalar(self.ring, 1)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "RingElement":
        mono = self.comps[0].monomial()
        if mono is None:
            raise ZeroDivisionError(f"scalar part {self.comps[0]} is not a Laurent monomial")
        k, c = mono
        s_inv = LaurentPoly.z(-k, 1 / c)
        nil = (self - RingElement.scalar(self.ring, self.comps[0])) * RingElement.scalar(self.ring, s_inv)
        out = RingElement.scalar(self.ring, 1)
        term = RingElement.scalar(self.ring, 1)
        for _ in range(max(self.ring.degrees)):
            term = term * (-nil)
            out = out + term
        return out * RingElement.scalar(self.ring, s_inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (F(1) / other)
        return self * self._lift(other).inverse()

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.comps)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring is other.ring and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def coeff(self, name: str, k: int) -> Fraction:
        """Coefficient of basis element ``name`` times z^k."""
        return self.comps[self.ring.basis.index(name)].coeff(k)

    def z_part(self, k: int) -> "RingElement":
        """The z^k slice as an element with constant coefficients."""
        return RingElement(self.ring, tuple(LaurentPoly.const(a.coeff(k)) for a in self.comps))

    def __repr__(self):
        parts = [f"({a})*{b}" for a, b in zip(self.comps, self.ring.basis) if not a.is_zero()]
        return " + ".join(parts) or "0"


Z_X = RingElement.scalar(RING_X, LaurentPoly.z())
Z_Y = RingElement.scalar(RING_Y, LaurentPoly.z())
h = RingElement.basis_element(RING_X, "h")
E = RingElement.basis_element(RING_Y, "E")
H = RingElement.basis_element(RING_Y, "H")
T = RingElement.basis_element(RING_Y, "T")
FF = H - E  # the class F = H - E


def zee(ring: Ring, nu=1) -> RingElement:
    return RingElement.scalar(ring, LaurentPoly.z(1, nu)) if nu else RingElement.scalar(ring, 0)


def pochhammer(D: RingElement, n: int) -> RingElement:
    """(D)^{rising n} = prod_{nu=1}^{n} (D + nu z); negative n gives the reciprocal of prod_{nu=n+1}^{0}."""
    if n >= 0:
        out = RingElement.scalar(D.ring, 1)
        for nu in range(1, n + 1):
            out = out * (D + zee(D.ring, nu))
        return out
    return pochhammer_reciprocal(D, n).inverse()


def pochhammer_reciprocal(D: RingElement, n: int) -> RingElement:
    """1 / (D)^{rising n}; for n < 0 this is the polynomial prod_{nu=n+1}^{0} (D + nu z)."""
    if n >= 0:
        return pochhammer(D, n).inverse()
    out = RingElement.scalar(D.ring, 1)
    for nu in range(n + 1, 1):
        out = out * (D + zee(D.ring, nu))
    return out


# ---------------------------------------------------------------------------
# I-function coefficients


@dataclass(frozen=True)
class ICoeff:
    bidegree: tuple
    value: RingElement


@lru_cache(maxsize=None)
def _ix_table(case: TransitionCase, m_max: int) -> tuple:
    kappa, lam, mu = case_constants(case)
    z = Z_X
    out = [RingElement.scalar(RING_X, 1)]
    prev = RingElement.scalar(RING_X, 0)
    for m in range(m_max):
        hm = h + m * z
        rhs = (kappa * hm * hm + kappa * z * hm + lam * z * z) * out[m] + mu * prev
        nxt = rhs / ((h + (m + 1) * z) ** 4)
        prev = out[m]
        out.append(nxt)
    return tuple(out)


def ix_coeff(d, m: int) -> ICoeff:
    """Coefficient of P^{m gamma-bar} in I^X, from the three-term recursion."""
    case = TransitionCase.parse(d)
    case_constants(case)
    if m < 0:
        return ICoeff((m,), RingElement.scalar(RING_X, 0))
    return ICoeff((m,), _ix_table(case, max(m, 1))[m])


_WEIGHTS = {TransitionCase.D1: (6, (3, 2, 1, 1)), TransitionCase.D2: (4, (2, 1, 1, 1)),
            TransitionCase.D3: (3, (1, 1, 1, 1))}


def ix_product_formula(d, m: int) -> RingElement:
    """Closed product forms for d in {1, 2, 3, 4, 8}."""
    case = TransitionCase.parse(d)
    one = RingElement.scalar(RING_X, 1)
    if case in _WEIGHTS:
        deg, alphas = _WEIGHTS[case]
        num = pochhammer(deg * h, deg * m)
        den = pochhammer(h, m)
        for a in alphas:
            den = den * pochhammer(a * h, a * m)
        return num / den
    if case is TransitionCase.D4:
        return pochhammer(2 * h, 2 * m) ** 2 / pochhammer(h, m) ** 6
    if case is TransitionCase.D8:
        if m % 2:
            return one * 0
        return one / pochhammer(h * F(1, 2), m // 2) ** 4
    raise ValueError(f"no product formula for d = {case.label}")


def x_to_y(x: RingElement) -> RingElement:
    """Pull back along h -> F = H - E."""
    out = RingElement.scalar(RING_Y, 0)
    power = RingElement.scalar(RING_Y, 1)
    for a in x.comps:
        out = out + power * RingElement.scalar(RING_Y, a)
        power = power * FF
    return out


def iy_coeff(d, m: int, n: int) -> ICoeff:
    """Coefficient of P^{m l + n gamma} in I^Y."""
    case = TransitionCase.parse(d)
    if m < 0 or n < 0:
        return ICoeff((m, n), RingElement.scalar(RING_Y, 0))
    ix = x_to_y(ix_coeff(case, m).value)
    val = ix * pochhammer(FF, m) * pochhammer_reciprocal(E, n - m) * pochhammer_reciprocal(H, n)
    return ICoeff((m, n), val)


def x_one_point(d) -> Fraction:
    """z^{-2} coefficient of the unit component of I^X_1, which is <pt>^X / Q."""
    return ix_coeff(d, 1).value.coeff("1", -2)


# ---------------------------------------------------------------------------
# Picard-Fuchs operators


@dataclass(frozen=True)
class PFReport:
    ok: bool
    checked: int
    failure: str | None = None


def box_gamma_bar(d, m: int, coeff=ix_coeff) -> RingElement:
    kappa, lam, mu = case_constants(d)
    z = Z_X
    hm1 = h + (m - 1) * z
    return ((h + m * z) ** 4 * coeff(d, m).value
            - (kappa * hm1 * hm1 + kappa * z * hm1 + lam * z * z) * coeff(d, m - 1).value
            - mu * coeff(d, m - 2).value)


def box_gamma(d, m: int, n: int) -> RingElement:
    z = Z_Y
    return (E + (n - m) * z) * (H + n * z) * iy_coeff(d, m, n).value - iy_coeff(d, m, n - 1).value


def box_ell(d, m: int, n: int) -> RingElement:
    kappa, lam, mu = case_constants(d)
    z = Z_Y
    lhs = (FF + m * z) ** 3 * iy_coeff(d, m, n).value
    a = (kappa * FF * FF + kappa * (2 * m - 1) * z * FF + (kappa * m * m - kappa * m + lam) * z * z)
    rhs = a * (E + (n - m + 1) * z) * iy_coeff(d, m - 1, n).value
    rhs = rhs + mu * (FF + (m - 1) * z) * (E + (n - m + 2) * z) * (E + (n - m + 1) * z) * iy_coeff(d, m - 2, n).value
    return lhs - rhs


def _product_coeff(d, m):
    return ICoeff((m,), ix_product_formula(d, m) if m >= 0 else RingElement.scalar(RING_X, 0))


def pf_verify(d, N: int) -> PFReport:
    case = TransitionCase.parse(d)
    checked = 0
    for m in range(N + 1):
        if not box_gamma_bar(case, m).is_zero():
            return PFReport(False, checked, f"box_gamma_bar at m={m}")
        checked += 1
        if case in _WEIGHTS or case in (TransitionCase.D4, TransitionCase.D8):
            if not box_gamma_bar(case, m, _product_coeff).is_zero():
                return PFReport(False, checked, f"box_gamma_bar on product form at m={m}")
            checked += 1
    for m in range(N + 1):
        for n in range(N + 1):
            if not box_gamma(case, m, n).is_zero():
                return PFReport(False, checked, f"box_gamma at (m,n)=({m},{n})")
            if not box_ell(case, m, n).is_zero():
                return PFReport(False, checked, f"box_ell at (m,n)=({m},{n})")
            checked += 2
    return PFReport(True, checked)


def recursion_matches_product(d, m_max: int) -> int | None:
    """First m where the recursion and the product formula disagree, else None."""
    for m in range(m_max + 1):
        if ix_coeff(d, m).value != ix_product_formula(d, m):
            return m
    return None


def mirror_term(d, m: int) -> RingElement:
    """z^{-1} slice of I^Y_{m l}."""
    return iy_coeff(d, m, 0).value.z_part(-1)


# ---------------------------------------------------------------------------
# Closed-form generating functions


@dataclass(frozen=True)
class GammaGradedSeries:
    """gamma-degree k -> series in P (standing for P^l); Q^{gamma~} is P^gamma P^l."""

    parts: dict

    def __sub__(self, other: "GammaGradedSeries") -> "GammaGradedSeries":
        keys = set(self.parts) | set(other.parts)
        out = {}
        for k in keys:
            a, b = self.parts.get(k), other.parts.get(k)
            if a is None:
                out[k] = -b
            elif b is None:
                out[k] = a
            else:
                out[k] = a - b
        return GammaGradedSeries({k: v for k, v in out.items() if v.valuation() is not None})

    def __eq__(self, other):
        if not isinstance(other, GammaGradedSeries) or set(self.parts) != set(other.parts):
            return False
        return all(self.parts[k] == other.parts[k] for k in self.parts)

    def __hash__(self):
        return hash(tuple(sorted(self.parts)))


def gw_x_closed(d) -> dict:
    """Coefficients in Q^{gamma-bar}: returns {name: {power: value}}."""
    kappa, lam, mu = case_constants(d)
    deg = case_data(d).degree
    return {
        "pt": {1: F(lam)},
        "h2,h2": {1: F(deg * (kappa - 2 * lam))},
        "pt,pt": {2: F(lam * lam + mu, 2 * deg)},
    }


def pullback_x(d, N: int) -> dict:
    """phi^* of the X invariants: Q^{gamma-bar} -> Q^{gamma~} = P^gamma P^l."""
    out = {}
    for name, terms in gw_x_closed(d).items():
        parts = {}
        for k, c in terms.items():
            parts[k] = Series.from_dict("P", N, {k: c})
        out[name] = GammaGradedSeries(parts)
    return out


def gw_y_closed(d, N: int) -> dict:
    kappa, lam, mu = case_constants(d)
    deg = case_data(d).degree
    f = f_series(d, N)
    u = u_series(d, N)
    P = Series.gen("P", N)
    v = f.theta() * series_inv(f)
    A, B = pt_pt_y_parts(d)
    return {
        "pt": GammaGradedSeries({1: 1 + lam * P}),
        "H2,H2": GammaGradedSeries({1: deg * (1 + (kappa - 2 * lam) * P)}),
        "pt,pt": GammaGradedSeries({2: Series("P", N, A) + Series("P", N, B) * v}),
        "H2,E2": GammaGradedSeries({1: -deg * u * (f + f.theta())}),
        "E,E,E": GammaGradedSeries({0: deg * series_inv(u * f * f * f)}),
    }


@dataclass(frozen=True)
class RegularizationReport:
    ok: bool
    series: Series  # coefficient of Q^{2 gamma~} as a series in y
    v_polynomial: tuple  # (coefficient of v^0, coefficient of v^1) before substitution


def pt_pt_y_parts(d) -> tuple[list, list]:
    """<pt,pt>^Y at P^{2 gamma} as A(P) + B(P) v with v = theta f / f; polynomials in P."""
    kappa, lam, mu = case_constants(d)
    deg = case_data(d).degree
    A = [F(0), F(lam, deg), F(lam * lam - mu, 2 * deg)]
    B = [F(1, deg), F(kappa, deg), F(-mu, deg)]  # u / d
    return A, B


def pt_pt_difference_in_y(d, N: int) -> tuple[Series, Series]:
    """<pt,pt>^Y - phi^*<pt,pt>^X at Q^{2 gamma~} = P^{2 gamma} P^{2 l}, as A(y) + B(y) v.

    A polynomial p(P) of degree <= 2 divided by P^2 becomes p_0 y^2 + p_1 y + p_2.
    """
    A, B = pt_pt_y_parts(d)
    x = gw_x_closed(d)["pt,pt"][2]
    A = [A[0], A[1], A[2] - x]

    def to_y(p):
        return Series("y", N, [p[2], p[1], p[0]])

    return to_y(A), to_y(B)


def regularized_limit_check(d, N: int) -> RegularizationReport:
    """Substitute v -> v_reg(y) and test that the constant term vanishes.

    When mu = 0 no substitution is needed; the check is that both
    v-coefficients already lie in y Q[[y]].
    """
    _, _, mu = case_constants(d)
    a, b = pt_pt_difference_in_y(d, N)
    if mu == 0:
        ok = a[0] == 0 and b[0] == 0
        return RegularizationReport(ok, a, (a, b))
    v_reg = f_reg_series(d, N).v_reg
    s = a + b * v_reg
    return RegularizationReport(s[0] == 0, s, (a, b))
