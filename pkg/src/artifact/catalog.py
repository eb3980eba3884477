"""Per-case constants for the nine Type II extremal transitions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class TransitionCase(enum.Enum):
    D1 = "1"
    D2 = "2"
    D3 = "3"
    D4 = "4"
    D5 = "5"
    D6I = "6I"
    D6II = "6II"
    D7 = "7"
    D8 = "8"

    @classmethod
    def parse(cls, text: "str | int | TransitionCase") -> "TransitionCase":
        if isinstance(text, TransitionCase):
            return text
        key = str(text).strip().upper().lstrip("D")
        for case in cls:
            if case.value.upper() == key:
                return case
        raise ValueError(f"unknown transition case {text!r}")

    @property
    def label(self) -> str:
        return self.value


class UnsupportedCase(ValueError):
    """The requested datum does not exist for this case (only d = 7 so far)."""


@dataclass(frozen=True)
class QuadSurd:
    """a + b*sqrt(D) with rational a, b."""

    a: Fraction
    b: Fraction
    D: int

    def __add__(self, other: "QuadSurd | Fraction | int") -> "QuadSurd":
        o = _surd(other, self.D)
        return QuadSurd(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __mul__(self, other: "QuadSurd | Fraction | int") -> "QuadSurd":
        o = _surd(other, self.D)
        return QuadSurd(self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-_surd(other, self.D))

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.D**0.5


def _surd(x, D: int) -> QuadSurd:
    if isinstance(x, QuadSurd):
        if x.D != D:
            raise ValueError("incompatible quadratic fields")
        return x
    return QuadSurd(Fraction(x), Fraction(0), D)


INFINITY = "infinity"
SingPoint = Union[Fraction, QuadSurd, str]


@dataclass(frozen=True)
class Cusp:
    """The cusp class of a/c in the upper half plane compactification."""

    a: int
    c: int

    def __str__(self) -> str:
        return f"{self.a}/{self.c}"


@dataclass(frozen=True)
class Elliptic:
    """An elliptic point, kept symbolically, e.g. 'omega_6' or '(1+i)/2'."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class CaseData:
    case: TransitionCase
    degree: int
    kappa: int | None
    lam: int | None
    mu: int | None
    n_d: int | None
    sing_points: tuple
    level_group: str | None
    special_points: tuple
    transition_point: Cusp | Elliptic | None
    hodge: tuple[int, int]

    @property
    def supported(self) -> bool:
        return self.case is not TransitionCase.D7


def _F(p, q=1) -> Fraction:
    return Fraction(p, q)


_T = TransitionCase
_TABLE: dict[TransitionCase, CaseData] = {
    _T.D1: CaseData(_T.D1, 1, 432, 60, 0, 6, (_F(0), INFINITY, _F(-1, 432)), None,
                    ("i*infinity", Elliptic("omega_6"), Cusp(0, 1)), Elliptic("omega_6"), (1, 21)),
    _T.D2: CaseData(_T.D2, 2, 64, 12, 0, 4, (_F(0), INFINITY, _F(-1, 64)), "Gamma(2)",
                    ("i*infinity", Elliptic("(1+i)/2"), Cusp(0, 1)), Elliptic("(1+i)/2"), (1, 10)),
    _T.D3: CaseData(_T.D3, 3, 27, 6, 0, 3, (_F(0), INFINITY, _F(-1, 27)), "Gamma1(3)",
                    ("i*infinity", Elliptic("(1+omega_6)/3"), Cusp(0, 1)),
                    Elliptic("(1+omega_6)/3"), (1, 5)),
    _T.D4: CaseData(_T.D4, 4, 16, 4, 0, 2, (_F(0), INFINITY, _F(-1, 16)), "Gamma1(4)",
                    ("i*infinity", Cusp(1, 2), Cusp(0, 1)), Cusp(1, 2), (1, 2)),
    _T.D5: CaseData(_T.D5, 5, 11, 3, 1, None,
                    (_F(0), INFINITY, QuadSurd(_F(11, 2), _F(-5, 2), 5), QuadSurd(_F(11, 2), _F(5, 2), 5)),
                    "Gamma1(5)", ("i*infinity", Cusp(2, 5), Cusp(0, 1), Cusp(1, 2)), Cusp(2, 5), (1, 0)),
    _T.D6I: CaseData(_T.D6I, 6, 7, 2, 8, None, (_F(0), INFINITY, _F(-1, 8), _F(1)), "Gamma1(6)",
                     ("i*infinity", Cusp(1, 3), Cusp(0, 1), Cusp(1, 2)), Cusp(1, 3), (2, 0)),
    _T.D6II: CaseData(_T.D6II, 6, 10, 3, -9, None, (_F(0), INFINITY, _F(-1, 9), _F(-1)), "Gamma1(6)",
                      ("i*infinity", Cusp(1, 2), Cusp(0, 1), Cusp(1, 3)), Cusp(1, 2), (3, 0)),
    _T.D7: CaseData(_T.D7, 7, None, None, None, None, (), None, (), None, (2, 0)),
    _T.D8: CaseData(_T.D8, 8, 0, 0, 16, None, (_F(0), INFINITY, _F(-1, 4), _F(1, 4)), "Gamma0(8)",
                    ("i*infinity", Cusp(1, 4), Cusp(0, 1), Cusp(1, 2)), Cusp(1, 4), (1, 0)),
}

# Published topological differences chi(Y) - chi(X), kept separately from the
# Hodge data so that euler_defect is a genuine cross-check.
EULER_DEFECT_TABLE: dict[TransitionCase, int] = {
    _T.D1: 60, _T.D2: 36, _T.D3: 24, _T.D4: 16, _T.D5: 10,
    _T.D6I: 6, _T.D6II: 4, _T.D7: 4, _T.D8: 4,
}

SUPPORTED = tuple(c for c in TransitionCase if c is not TransitionCase.D7)


def case_data(d) -> CaseData:
    return _TABLE[TransitionCase.parse(d)]


def case_constants(d) -> tuple[int, int, int]:
    """(kappa, lambda, mu) of the boxed operator in the l-direction."""
    data = case_data(d)
    if not data.supported:
        raise UnsupportedCase("d = 7 has no single (kappa, lambda, mu); use local_model.f7_series")
    return data.kappa, data.lam, data.mu


class TableMismatch(AssertionError):
    pass


def euler_defect(d) -> int:
    """2 chi(S_d) - chi(X_d) from the Hodge numbers, checked against the table."""
    data = case_data(d)
    h11, h21 = data.hodge
    chi_s = 12 - data.degree  # del Pezzo surface of degree d
    chi_x = 2 + 2 * h11 - 2 * h21
    value = 2 * chi_s - chi_x
    expected = EULER_DEFECT_TABLE[data.case]
    if value != expected:
        raise TableMismatch(f"{data.case.label}: Hodge arithmetic gives {value}, table says {expected}")
    return value


def transition_point(d) -> Cusp | Elliptic:
    data = case_data(d)
    if not data.supported:
        raise UnsupportedCase("transition point of d = 7 is not modelled")
    return data.transition_point


def u_polynomial(d) -> tuple[int, int, int]:
    """Coefficients of u_d = 1 + kappa P - mu P^2, lowest degree first."""
    kappa, _, mu = case_constants(d)
    return (1, kappa, -mu)


def u_vanishes_at(d, point: SingPoint) -> bool:
    """Exact test that u_d(point) = 0."""
    c0, c1, c2 = u_polynomial(d)
    if point == INFINITY:
        return False
    if isinstance(point, QuadSurd):
        return (point * point * c2 + point * c1 + c0).is_zero()
    p = Fraction(point)
    return c0 + c1 * p + c2 * p * p == 0


def local_exponents_at_infinity(d) -> tuple[Fraction, Fraction]:
    """Frobenius exponents of the f-equation at P = infinity, from the indicial polynomial.

    In y = 1/P the equation has leading part (y^2 + kappa y - mu) theta^2 f
    - (kappa y - 2 mu) theta f + (lambda y - mu) f.  When mu != 0 the
    indicial polynomial is -mu (s - 1)^2.  When mu = 0 one divides by y and
    the indicial polynomial is kappa s^2 - kappa s + lambda.
    """
    kappa, lam, mu = case_constants(d)
    if mu:
        return (Fraction(1), Fraction(1))
    # kappa s^2 - kappa s + lambda = 0
    disc = Fraction(kappa * kappa - 4 * kappa * lam, kappa * kappa)
    root = _rational_sqrt(disc)
    return ((1 - root) / 2, (1 + root) / 2)


def _rational_sqrt(x: Fraction) -> Fraction:
    from math import isqrt

    n, m = x.numerator, x.denominator
    rn, rm = isqrt(n), isqrt(m)
    if rn * rn != n or rm * rm != m:
        raise ValueError(f"{x} is not a rational square")
    return Fraction(rn, rm)
