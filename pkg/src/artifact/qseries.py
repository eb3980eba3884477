"""Truncated power series in one variable.

Coefficients may be exact (``Fraction``, :class:`GaussRational`,
:class:`~artifact.cyclotomic.Cyclotomic`) or floating (``complex``).  A
series of order ``N`` stores the coefficients of ``t^0 .. t^N``; anything
above ``N`` is unknown.  Binary operations truncate to the smaller order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

MAX_ORDER = 4096
VARIABLES = ("q", "P", "y", "x", "t", "s", "r", "z")


class SeriesError(ValueError):
    """Raised when a series operation's precondition fails."""


# ---------------------------------------------------------------------------
# Gaussian rationals


class GaussRational:
    """Exact element a + b i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x) -> "GaussRational | None":
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRational(x, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conjugate()
        return GaussRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return (1 / self) ** (-n)
        out, base = GaussRational(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"


I = GaussRational(0, 1)


def _is_zero(c) -> bool:
    return not c


def _as_complex(c) -> complex:
    return complex(c)


# ---------------------------------------------------------------------------
# Series


@dataclass(frozen=True, eq=False)
class Series:
    """Coefficients of t^0..t^order of a truncated power series in ``var``."""

    var: str
    order: int
    coeffs: tuple

    def __init__(self, var: str, order: int, coeffs: Iterable = ()):
        if var not in VARIABLES:
            raise SeriesError(f"unknown variable tag {var!r}")
        if order < 0 or order > MAX_ORDER:
            raise SeriesError(f"order {order} outside [0, {MAX_ORDER}]")
        cs = list(coeffs)[: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        cs = [Fraction(c) if isinstance(c, int) else c for c in cs]
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    # construction helpers
    @classmethod
    def from_dict(cls, var: str, order: int, terms: dict) -> "Series":
        cs = [Fraction(0)] * (order + 1)
        for k, v in terms.items():
            if 0 <= k <= order:
                cs[k] = cs[k] + v
        return cls(var, order, cs)

    @classmethod
    def constant(cls, var: str, order: int, c=1) -> "Series":
        return cls(var, order, [c])

    @classmethod
    def gen(cls, var: str, order: int) -> "Series":
        """The variable itself."""
        return cls(var, order, [0, 1])

    def __getitem__(self, n: int):
        if n < 0:
            return Fraction(0)
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond order {self.order}")
        return self.coeffs[n]

    def __len__(self):
        return self.order + 1

    def valuation(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return n
        return None

    def truncate(self, order: int) -> "Series":
        return Series(self.var, min(order, self.order), self.coeffs)

    def with_var(self, var: str) -> "Series":
        return Series(var, self.order, self.coeffs)

    def map(self, fn: Callable) -> "Series":
        return Series(self.var, self.order, [fn(c) for c in self.coeffs])

    def to_complex(self) -> "Series":
        return self.map(_as_complex)

    # arithmetic
    def _check(self, other: "Series") -> int:
        if self.var != other.var:
            raise SeriesError(f"variable mismatch: {self.var} vs {other.var}")
        return min(self.order, other.order)

    def _lift(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series.constant(self.var, self.order, other)

    def __add__(self, other):
        other = self._lift(other)
        n = self._check(other)
        return Series(self.var, n, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return series_mul(self, other)
        return self.map(lambda c: c * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return series_mul(self, series_inv(other))
        return self.map(lambda c: c / other)

    def __rtruediv__(self, other):
        return series_inv(self) * other

    def __pow__(self, n: int):
        if n < 0:
            return series_inv(self) ** (-n)
        out = Series.constant(self.var, self.order, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        if self.var != other.var:
            return False
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    def __hash__(self):
        return hash((self.var, self.order))

    # calculus
    def theta(self) -> "Series":
        """t d/dt."""
        return Series(self.var, self.order, [n * c for n, c in enumerate(self.coeffs)])

    def shift(self, k: int) -> "Series":
        """Multiply by t^k (k >= 0), keeping the order."""
        if k < 0:
            if any(not _is_zero(c) for c in self.coeffs[:-k]):
                raise SeriesError("negative shift would drop nonzero terms")
            return Series(self.var, self.order + k, self.coeffs[-k:])
        return Series(self.var, self.order, [0] * k + list(self.coeffs))

    def dilate(self, k: int) -> "Series":
        """Substitute t -> t^k; the order scales accordingly."""
        order = min(self.order * k + k - 1, MAX_ORDER)
        cs = [Fraction(0)] * (order + 1)
        for n, c in enumerate(self.coeffs):
            if n * k <= order:
                cs[n * k] = c
        return Series(self.var, order, cs)

    def first_mismatch(self, other: "Series") -> int | None:
        n = min(self.order, other.order)
        for i in range(n + 1):
            if self.coeffs[i] != other.coeffs[i]:
                return i
        return None

    def __repr__(self):
        terms = [f"({c})*{self.var}^{n}" for n, c in enumerate(self.coeffs) if not _is_zero(c)]
        body = " + ".join(terms) or "0"
        return f"{body} + O({self.var}^{self.order + 1})"


def series_mul(a: Series, b: Series) -> Series:
    n = a._check(b)
    ac, bc = a.coeffs, b.coeffs
    nzb = [(j, y) for j, y in enumerate(bc[: n + 1]) if not _is_zero(y)]
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        x = ac[i]
        if _is_zero(x):
            continue
        for j, y in nzb:
            if i + j > n:
                break
            out[i + j] = out[i + j] + x * y
    return Series(a.var, n, out)


def series_inv(a: Series) -> Series:
    c0 = a.coeffs[0]
    if _is_zero(c0):
        raise SeriesError("series_inv: constant term is zero")
    inv0 = 1 / c0
    out = [inv0]
    for n in range(1, a.order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if not _is_zero(a.coeffs[k]):
                acc = acc + a.coeffs[k] * out[n - k]
        out.append(-acc * inv0)
    return Series(a.var, a.order, out)


def series_exp(a: Series) -> Series:
    if not _is_zero(a.coeffs[0]):
        raise SeriesError("series_exp: constant term must vanish")
    out = [Fraction(1)]
    for n in range(1, a.order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if not _is_zero(a.coeffs[k]):
                acc = acc + k * a.coeffs[k] * out[n - k]
        out.append(acc / n)
    return Series(a.var, a.order, out)


def series_log(a: Series) -> Series:
    if a.coeffs[0] != 1:
        raise SeriesError("series_log: constant term must be 1")
    b = [Fraction(0)]
    for n in range(1, a.order + 1):
        acc = n * a.coeffs[n]
        for k in range(1, n):
            if not _is_zero(b[k]):
                acc = acc - k * b[k] * a.coeffs[n - k]
        b.append(acc / n)
    return Series(a.var, a.order, b)


def series_pow(a: Series, alpha) -> Series:
    """a^alpha for a(0) = 1 via the J. C. P. Miller recurrence."""
    if a.coeffs[0] != 1:
        raise SeriesError("series_pow: constant term must be 1")
    y = [Fraction(1)]
    for n in range(1, a.order + 1):
        acc = Fraction(0)
        for j in range(1, n + 1):
            if not _is_zero(a.coeffs[j]):
                acc = acc + ((alpha + 1) * j - n) * a.coeffs[j] * y[n - j]
        y.append(acc / n)
    return Series(a.var, a.order, y)


def series_root(a: Series, k: int) -> Series:
    if k < 1:
        raise SeriesError("series_root: k must be a positive integer")
    if a.coeffs[0] != 1:
        raise SeriesError("series_root: constant term must be 1")
    return series_pow(a, Fraction(1, k))


def series_compose(f: Series, p: Series) -> Series:
    """f(p(t)); the result lives in p's variable."""
    if not _is_zero(p.coeffs[0]):
        raise SeriesError("series_compose: inner series has nonzero constant term")
    v = p.valuation()
    if v is None:
        return Series.constant(p.var, p.order, f.coeffs[0])
    order = min(p.order, (f.order + 1) * v - 1)
    p = p.truncate(order)
    # Horner, skipping terms that cannot reach the truncation order
    top = min(f.order, order // v)
    out = Series.constant(p.var, order, f.coeffs[top])
    for i in range(top - 1, -1, -1):
        out = out * p + f.coeffs[i]
    return out


def series_reverse(p: Series) -> Series:
    """Compositional inverse r with p(r(s)) = s, by Lagrange inversion."""
    if not _is_zero(p.coeffs[0]) or _is_zero(p.coeffs[1]):
        raise SeriesError("series_reverse: need p = c1 t + ... with c1 != 0")
    N = p.order
    h = series_inv(p.shift(-1).truncate(N - 1)) if N >= 1 else None  # t / p(t)
    out = [Fraction(0)] * (N + 1)
    power = Series.constant(p.var, N - 1, 1)
    for n in range(1, N + 1):
        power = power * h
        out[n] = power.coeffs[n - 1] / n
    return Series(p.var, N, out)


def solve_dlog(rhs: Series, sign: int = -1) -> Series:
    """The series F = sign*t + O(t^2) with t F'/F = rhs."""
    if sign not in (1, -1):
        raise SeriesError("sign must be +1 or -1")
    if rhs.coeffs[0] != 1:
        raise SeriesError("solve_dlog: rhs must have constant term 1")
    integ = [Fraction(0)] + [rhs.coeffs[n] / n for n in range(1, rhs.order + 1)]
    e = series_exp(Series(rhs.var, rhs.order, integ))
    return (e * sign).shift(1)


# ---------------------------------------------------------------------------
# Numeric evaluation


@dataclass(frozen=True)
class Evaluation:
    value: complex
    tail_bound: float


def series_eval(a: Series, z0, radius: float | None = None,
                tol: float | None = None, window: int = 8) -> Evaluation:
    """Partial sum at z0 plus a geometric tail estimate.

    The growth rate is read off the last ``window`` retained coefficients
    by the root test; the tail is bounded by a geometric series of that
    rate.
    """
    z0 = complex(z0)
    r = abs(z0)
    if radius is not None and r >= radius:
        raise SeriesError(f"|z0| = {r} not inside radius {radius}")
    cs = [complex(c) for c in a.coeffs]
    val = 0j
    for c in reversed(cs):
        val = val * z0 + c
    N = a.order
    lo = max(1, N - window + 1)
    mags = [abs(cs[n]) for n in range(lo, N + 1)]
    if r == 0 or not any(mags):
        tail = 0.0
    else:
        rate = max(m ** (1.0 / n) for n, m in zip(range(lo, N + 1), mags) if m)
        rho = rate * r
        if rho >= 1:
            raise SeriesError("series_eval: coefficients too large for a tail bound")
        big = max(m / rate**n for n, m in zip(range(lo, N + 1), mags) if m)
        tail = big * rho ** (N + 1) / (1 - rho)
    if tol is not None and tail > tol:
        raise SeriesError(f"series_eval: tail bound {tail:.3e} exceeds tolerance {tol:.3e}")
    return Evaluation(val, tail)


# ---------------------------------------------------------------------------
# Laurent series


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    """t^min_exp times a power series body with nonzero constant term."""

    min_exp: int
    body: Series

    def __init__(self, min_exp: int, body: Series):
        v = body.valuation()
        if v is None:
            min_exp, body = 0, Series(body.var, body.order, [])
        elif v:
            body = body.shift(-v)
            min_exp += v
        object.__setattr__(self, "min_exp", min_exp)
        object.__setattr__(self, "body", body)

    @property
    def var(self) -> str:
        return self.body.var

    @property
    def precision(self) -> int:
        """Exponents strictly above this are unknown."""
        return self.min_exp + self.body.order

    def is_zero(self) -> bool:
        return self.body.valuation() is None

    def coeff(self, k: int):
        j = k - self.min_exp
        if j < 0:
            return Fraction(0)
        return self.body[j]

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        lo = min(self.min_exp, other.min_exp)
        hi = min(self.precision, other.precision)
        cs = [self.coeff(k) + other.coeff(k) for k in range(lo, hi + 1)]
        return LaurentSeries(lo, Series(self.var, hi - lo, cs))

    def __neg__(self):
        return LaurentSeries(self.min_exp, -self.body)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            n = min(self.body.order, other.body.order)
            return LaurentSeries(self.min_exp + other.min_exp,
                                 series_mul(self.body.truncate(n), other.body.truncate(n)))
        return LaurentSeries(self.min_exp, self.body * other)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        if self.is_zero():
            raise SeriesError("inverse of zero Laurent series")
        return LaurentSeries(-self.min_exp, series_inv(self.body))

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.min_exp == other.min_exp and self.body == other.body

    def __hash__(self):
        return hash(self.min_exp)


def coefficients_equal(a: Sequence, b: Sequence) -> bool:
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def lambert(var: str, order: int, weight: Callable[[int], object]) -> Series:
    """sum_{m>=1} w(m) q^m/(1-q^m) = sum_M (sum_{d|M} w(d)) q^M."""
    cs = [Fraction(0)] * (order + 1)
    for m in range(1, order + 1):
        w = weight(m)
        if _is_zero(w):
            continue
        for M in range(m, order + 1, m):
            cs[M] = cs[M] + w
    return Series(var, order, cs)


def close_to(a: complex, b: complex, tol: float) -> bool:
    return abs(complex(a) - complex(b)) <= tol


__all__ = [
    "Series", "LaurentSeries", "GaussRational", "I", "SeriesError", "Evaluation",
    "series_mul", "series_inv", "series_exp", "series_log", "series_pow", "series_root",
    "series_compose", "series_reverse", "solve_dlog", "series_eval", "lambert",
    "MAX_ORDER", "close_to", "coefficients_equal",
]
