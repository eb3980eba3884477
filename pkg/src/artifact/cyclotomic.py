"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored in the power basis 1, z, ..., z^(phi(M)-1) of
Q[z]/(Phi_M), which makes the representation canonical: two elements of
the same field are equal iff their coefficient vectors agree.  Mixed
operands are first embedded into Q(zeta_lcm).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // lead
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert not any(num[: len(den) - 1]), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def _phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds z^j reduced mod Phi_m, for 0 <= j < m."""
    phi = _phi(m)
    poly = cyclotomic_poly(m)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by z and reduce the overflow coefficient
        top = cur[-1] if phi else 0
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * poly[i]
    return tuple(rows)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class Cyclotomic:
    """An element of Q(zeta_M) with exact rational coordinates."""

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs: Iterable):
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if len(coeffs) != _phi(m):
            raise ValueError("coefficient vector has wrong length")
        self.m = m
        self.coeffs = coeffs
        self._hash = None

    # constructors
    @classmethod
    def rational(cls, x, m: int = 1) -> "Cyclotomic":
        v = [Fraction(0)] * _phi(m)
        v[0] = _as_fraction(x)
        return cls(m, v)

    @classmethod
    def root(cls, m: int, k: int, coeff=1) -> "Cyclotomic":
        """coeff * zeta_m^k."""
        c = _as_fraction(coeff)
        row = _power_table(m)[k % m]
        return cls(m, [c * r for r in row])

    @classmethod
    def from_exponents(cls, m: int, terms: Mapping[int, object]) -> "Cyclotomic":
        """Sum of coeff * zeta_m^k over the mapping k -> coeff."""
        table = _power_table(m)
        acc = [Fraction(0)] * _phi(m)
        for k, c in terms.items():
            c = _as_fraction(c)
            if not c:
                continue
            for i, r in enumerate(table[k % m]):
                if r:
                    acc[i] += c * r
        return cls(m, acc)

    @classmethod
    def i(cls) -> "Cyclotomic":
        return cls.root(4, 1)

    # field embedding
    def embed(self, m: int) -> "Cyclotomic":
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError(f"Q(zeta_{self.m}) does not embed in Q(zeta_{m})")
        step = m // self.m
        return Cyclotomic.from_exponents(
            m, {j * step: c for j, c in enumerate(self.coeffs) if c}
        )

    @staticmethod
    def _coerce_pair(a, b) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(b, Cyclotomic):
            b = Cyclotomic.rational(_as_fraction(b), a.m)
            return a, b
        if a.m == b.m:
            return a, b
        m = math.lcm(a.m, b.m)
        return a.embed(m), b.embed(m)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._coerce_pair(self, other)
        return Cyclotomic(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.m, [x * other for x in self.coeffs])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._coerce_pair(self, other)
        m = a.m
        phi = _phi(m)
        prod = [Fraction(0)] * (2 * phi - 1 if phi else 0)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
        out = list(prod[:phi])
        table = _power_table(m)
        for k in range(phi, len(prod)):
            c = prod[k]
            if c:
                for i, r in enumerate(table[k % m]):
                    if r:
                        out[i] += c * r
        return Cyclotomic(m, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.m, [x / other for x in self.coeffs])
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyclotomic.rational(1, self.m)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "Cyclotomic":
        """Solve x * y = 1 by Gaussian elimination on the multiplication matrix."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m, phi = self.m, _phi(self.m)
        cols = [(self * Cyclotomic.root(m, j)).coeffs for j in range(phi)]
        # rows: equations per coordinate; unknowns: coefficients of y
        mat = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for col in range(phi):
            piv = next(r for r in range(col, phi) if mat[r][col])
            mat[col], mat[piv] = mat[piv], mat[col]
            pv = mat[col][col]
            mat[col] = [v / pv for v in mat[col]]
            for r in range(phi):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
        return Cyclotomic(m, [mat[i][phi] for i in range(phi)])

    def conjugate(self) -> "Cyclotomic":
        return Cyclotomic.from_exponents(
            self.m, {-j: c for j, c in enumerate(self.coeffs) if c}
        )

    # predicates and conversion
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def gaussian_parts(self) -> tuple[Fraction, Fraction] | None:
        """(a, b) with self = a + b i when self lies in Q(i), else None."""
        re2 = self + self.conjugate()
        im2 = (self - self.conjugate()) * Cyclotomic.root(4, 3)  # divide by i
        if re2.is_rational() and im2.is_rational():
            return re2.to_fraction() / 2, im2.to_fraction() / 2
        return None

    def __complex__(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.m)
        return sum((float(c) * w**j for j, c in enumerate(self.coeffs) if c), 0j)

    def to_mpc(self):
        import mpmath

        w = mpmath.expjpi(mpmath.mpf(2) / self.m)
        return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * w**j
                           for j, c in enumerate(self.coeffs) if c) + mpmath.mpc(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._coerce_pair(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            # hash through the minimal field so equal elements hash equally
            self._hash = hash(complex(self).real.__round__(9)) ^ hash(
                complex(self).imag.__round__(9)
            )
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = [f"{c}*z{self.m}^{j}" for j, c in enumerate(self.coeffs) if c]
        return "Cyclotomic(" + (" + ".join(terms) or "0") + ")"

    def __str__(self):
        return str(self.to_fraction()) if self.is_rational() else repr(self)
