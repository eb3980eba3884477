"""Dirichlet characters, Gauss sums, generalized Bernoulli numbers and L-values.

Character values are stored as phases: ``phase[a]`` is a fraction ``t`` in
[0, 1) with chi(a) = exp(2 pi i t), or ``None`` when gcd(a, N) > 1.  Exact
values live in :class:`~artifact.cyclotomic.Cyclotomic`; numeric values are
mpmath numbers at :data:`DPS` decimal digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import mpmath

from .cyclotomic import Cyclotomic
from .qseries import Series, series_inv

MAX_MODULUS = 240
DPS = 30


class CharacterError(ValueError):
    pass


class DivergentLimit(ArithmeticError):
    """The requested period limit has a pole."""


def _factor(n: int) -> list[tuple[int, int]]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in _factor(n)]


def euler_phi(n: int) -> int:
    out = n
    for p in prime_divisors(n):
        out = out // p * (p - 1)
    return out


@lru_cache(maxsize=None)
def _component(p: int, e: int) -> tuple[tuple[int, ...], dict[int, tuple[int, ...]]]:
    """Orders of generators of (Z/p^e)^x and the discrete-log table."""
    q = p**e
    if p == 2:
        if e == 1:
            return (), {1: ()}
        if e == 2:
            return (2,), {1: (0,), 3: (1,)}
        orders = (2, 2 ** (e - 2))
        table = {}
        for u in range(2):
            for v in range(orders[1]):
                table[((-1) ** u * pow(5, v, q)) % q] = (u, v)
        return orders, table
    phi = q // p * (p - 1)
    g = next(g for g in range(2, q) if math.gcd(g, p) == 1
             and all(pow(g, phi // r, q) != 1 for r in prime_divisors(phi)))
    table, x = {}, 1
    for k in range(phi):
        table[x] = (k,)
        x = x * g % q
    return (phi,), table


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character modulo ``modulus``."""

    modulus: int
    phase: tuple = field(repr=False)

    def __post_init__(self):
        if len(self.phase) != self.modulus:
            raise CharacterError("phase table has wrong length")

    # values
    def __call__(self, a: int) -> Cyclotomic:
        t = self.phase[a % self.modulus]
        if t is None:
            return Cyclotomic.rational(0)
        return Cyclotomic.root(t.denominator, t.numerator)

    def numeric(self, a: int) -> complex:
        t = self.phase[a % self.modulus]
        if t is None:
            return 0j
        return complex(mpmath.expjpi(2 * mpmath.mpf(t.numerator) / t.denominator))

    def mp(self, a: int):
        t = self.phase[a % self.modulus]
        if t is None:
            return mpmath.mpc(0)
        return mpmath.expjpi(2 * mpmath.mpf(t.numerator) / t.denominator)

    @property
    def order(self) -> int:
        return math.lcm(1, *(t.denominator for t in self.phase if t is not None))

    @property
    def value_field(self) -> int:
        """m such that all values lie in Q(zeta_m)."""
        return self.order

    # structure
    def is_principal(self) -> bool:
        return all(t in (None, 0) for t in self.phase)

    def parity(self) -> int:
        t = self.phase[(self.modulus - 1) % self.modulus]
        if t is None:  # modulus 1
            return 1
        return 1 if t == 0 else -1

    def is_odd(self) -> bool:
        return self.parity() == -1

    @property
    def conductor(self) -> int:
        N = self.modulus
        for f in sorted(d for d in range(1, N + 1) if N % d == 0):
            if all(self.phase[a] in (None, 0) for a in range(1, N, f) if math.gcd(a, N) == 1):
                return f
        return N

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def primitive(self) -> "DirichletCharacter":
        """The primitive character inducing this one."""
        f, N = self.conductor, self.modulus
        phase = [None] * f
        for a in range(f):
            if math.gcd(a, f) != 1:
                continue
            b = a
            while math.gcd(b, N) != 1:
                b += f
            phase[a] = self.phase[b % N]
        if f == 1:
            phase = [Fraction(0)]
        return DirichletCharacter(f, tuple(phase))

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(None if t is None else (-t) % 1 for t in self.phase))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        N = math.lcm(self.modulus, other.modulus)
        phase = []
        for a in range(N):
            x, y = self.phase[a % self.modulus], other.phase[a % other.modulus]
            if math.gcd(a, N) != 1 or x is None or y is None:
                phase.append(None)
            else:
                phase.append((x + y) % 1)
        if N == 1:
            phase = [Fraction(0)]
        return DirichletCharacter(N, tuple(phase))

    def __pow__(self, k: int) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(None if t is None else (k * t) % 1 for t in self.phase))

    def lift(self, M: int) -> "DirichletCharacter":
        """1_M * chi."""
        return self * principal(M)

    def __str__(self) -> str:
        if self.is_principal():
            return f"1_{self.modulus}"
        vals = ",".join("0" if t is None else str(t) for t in self.phase)
        return f"chi_{self.modulus}[{vals}]"


def principal(M: int) -> DirichletCharacter:
    if M == 1:
        return DirichletCharacter(1, (Fraction(0),))
    return DirichletCharacter(M, tuple(Fraction(0) if math.gcd(a, M) == 1 else None for a in range(M)))


def from_generator_exponents(N: int, exps: Iterable[int]) -> DirichletCharacter:
    """Character sending the i-th CRT generator to exp(2 pi i e_i / ord_i)."""
    comps = [(p, e, *_component(p, e)) for p, e in _factor(N)]
    exps = list(exps)
    phase: list = []
    for a in range(N):
        if math.gcd(a, N) != 1:
            phase.append(None)
            continue
        t, k = Fraction(0), 0
        for p, e, orders, table in comps:
            logs = table[a % p**e]
            for o, lg in zip(orders, logs):
                t += Fraction(exps[k] * lg, o)
                k += 1
        phase.append(t % 1)
    if N == 1:
        phase = [Fraction(0)]
    return DirichletCharacter(N, tuple(phase))


def enumerate_characters(m: int) -> list[DirichletCharacter]:
    """All phi(m) characters mod m, principal first, in lexicographic exponent order."""
    if m < 1:
        raise CharacterError("modulus must be positive")
    if m > MAX_MODULUS:
        raise CharacterError(f"modulus {m} above cap {MAX_MODULUS}")
    orders = [o for p, e in _factor(m) for o in _component(p, e)[0]]
    out = []

    def rec(prefix):
        if len(prefix) == len(orders):
            out.append(from_generator_exponents(m, prefix))
            return
        for j in range(orders[len(prefix)]):
            rec(prefix + [j])

    rec([])
    return out


def character_with(N: int, a: int, value_phase: Fraction) -> DirichletCharacter:
    """The unique character mod N (N with cyclic unit group) with chi(a) = e^{2 pi i t}."""
    hits = [c for c in enumerate_characters(N) if c.phase[a % N] == Fraction(value_phase) % 1]
    if len(hits) != 1:
        raise CharacterError(f"{len(hits)} characters mod {N} match chi({a}) = e(2 pi i {value_phase})")
    return hits[0]


def chi3() -> DirichletCharacter:
    """(-3 / .), the nontrivial character mod 3."""
    return character_with(3, 2, Fraction(1, 2))


def chi4() -> DirichletCharacter:
    """(-4 / .), the nontrivial character mod 4."""
    return character_with(4, 3, Fraction(1, 2))


def chi5() -> DirichletCharacter:
    """The quartic character mod 5 with chi(2) = i."""
    return character_with(5, 2, Fraction(1, 4))


def chi5_conj() -> DirichletCharacter:
    """The quartic character mod 5 with chi(2) = -i."""
    return chi5().conj()


# ---------------------------------------------------------------------------
# Gauss sums and Bernoulli numbers


def gauss_sum(chi: DirichletCharacter) -> Cyclotomic:
    """sum_a chi(a) e^{2 pi i a / N}, exactly."""
    N = chi.modulus
    m = math.lcm(N, chi.order)
    terms: dict[int, Fraction] = {}
    for a in range(N):
        t = chi.phase[a]
        if t is None:
            continue
        k = (a * (m // N) + t * m) % m
        terms[int(k)] = terms.get(int(k), Fraction(0)) + 1
    return Cyclotomic.from_exponents(m, terms)


@dataclass(frozen=True)
class BernoulliValue:
    m: int
    value: Cyclotomic

    def gauss(self):
        """(re, im) rationals when the value lies in Q(i), else None."""
        return self.value.gaussian_parts()

    def __complex__(self) -> complex:
        return complex(self.value)


@lru_cache(maxsize=None)
def _bernoulli_table(chi: DirichletCharacter, top: int) -> tuple[Cyclotomic, ...]:
    """B_{k,chi} for k <= top from sum_a chi(a) x e^{a x} / (e^{N x} - 1)."""
    N = chi.modulus
    fact = [math.factorial(k) for k in range(top + 2)]
    num = []
    for k in range(top + 1):
        acc = Cyclotomic.rational(0)
        for a in range(1, N + 1):
            if chi.phase[a % N] is not None:
                acc = acc + chi(a) * Fraction(a**k, fact[k])
        num.append(acc)
    den = Series("x", top, [Fraction(N ** (k + 1), fact[k + 1]) for k in range(top + 1)])
    inv = series_inv(den)
    out = []
    for k in range(top + 1):
        acc = Cyclotomic.rational(0)
        for j in range(k + 1):
            if inv.coeffs[k - j]:
                acc = acc + num[j] * inv.coeffs[k - j]
        out.append(acc * fact[k])
    return tuple(out)


def bernoulli(chi: DirichletCharacter, m: int) -> BernoulliValue:
    if m < 0:
        raise CharacterError("Bernoulli index must be nonnegative")
    return BernoulliValue(m, _bernoulli_table(chi, max(m, 12))[m])


def l_value_negative(s: int, chi: DirichletCharacter) -> Cyclotomic:
    """L(s, chi) for s = 0, -1, -2, ... as -B_{1-s,chi}/(1-s)."""
    if s > 0:
        raise CharacterError("s must be a nonpositive integer")
    k = 1 - s
    return -bernoulli(chi, k).value / k


# ---------------------------------------------------------------------------
# Exact linear combinations of 1, pi*i and L'(-1, psi)


@dataclass(frozen=True)
class Closed:
    """const + pi_i * (pi i) + sum_psi lprime[psi] * L'(-1, psi), psi primitive odd."""

    const: Cyclotomic = field(default_factory=lambda: Cyclotomic.rational(0))
    pi_i: Cyclotomic = field(default_factory=lambda: Cyclotomic.rational(0))
    lprime: tuple = ()  # sorted tuple of (DirichletCharacter, Cyclotomic)

    @staticmethod
    def zero() -> "Closed":
        return Closed()

    @staticmethod
    def of_lprime(psi: DirichletCharacter, coeff) -> "Closed":
        coeff = _cyc(coeff)
        return Closed(lprime=((psi, coeff),) if coeff else ())

    def _lp(self) -> dict:
        return dict(self.lprime)

    def __add__(self, other: "Closed") -> "Closed":
        lp = self._lp()
        for k, v in other.lprime:
            lp[k] = lp.get(k, Cyclotomic.rational(0)) + v
        items = tuple(sorted(((k, v) for k, v in lp.items() if v), key=lambda kv: str(kv[0])))
        return Closed(self.const + other.const, self.pi_i + other.pi_i, items)

    def scale(self, c) -> "Closed":
        c = _cyc(c)
        return Closed(self.const * c, self.pi_i * c,
                      tuple((k, v * c) for k, v in self.lprime if v * c))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return self.const.is_zero() and self.pi_i.is_zero() and not self.lprime

    def evaluate(self):
        with mpmath.workdps(DPS):
            out = self.const.to_mpc() + self.pi_i.to_mpc() * mpmath.pi * 1j
            for psi, c in self.lprime:
                out += c.to_mpc() * l_prime_minus1(psi)
            return out

    def __complex__(self):
        return complex(self.evaluate())

    def lprime_coefficient(self, psi: DirichletCharacter) -> Cyclotomic:
        return self._lp().get(psi.primitive(), Cyclotomic.rational(0))

    def __eq__(self, other):
        if not isinstance(other, Closed):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return 0


def _cyc(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    return Cyclotomic.rational(Fraction(x))


# ---------------------------------------------------------------------------
# L-values at positive integers and derivatives


def l_two(chi: DirichletCharacter):
    """L(2, chi) = N^{-2} sum_a chi(a) psi_1(a/N), via the trigamma function."""
    N = chi.modulus
    with mpmath.workdps(DPS + 5):
        s = mpmath.fsum(chi.mp(a) * mpmath.psi(1, mpmath.mpf(a) / N)
                        for a in range(1, N + 1) if chi.phase[a % N] is not None)
        return s / N**2


def l_three(chi: DirichletCharacter):
    """L(3, chi) through Hurwitz zeta values."""
    N = chi.modulus
    with mpmath.workdps(DPS + 5):
        s = mpmath.fsum(chi.mp(a) * mpmath.zeta(3, mpmath.mpf(a) / N)
                        for a in range(1, N + 1) if chi.phase[a % N] is not None)
        return s / N**3


def euler_factor_lift(chi: DirichletCharacter, s: int) -> Cyclotomic:
    """prod over p | N, p not dividing the conductor, of (1 - chi0(p) p^{-s})."""
    chi0 = chi.primitive()
    out = Cyclotomic.rational(1)
    for p in prime_divisors(chi.modulus):
        if chi0.modulus % p == 0:
            continue
        out = out * (1 - chi0(p) * (Fraction(p) ** (-s)))
    return out


def l_one_odd_closed(chi: DirichletCharacter) -> Closed:
    """L(1, chi) = pi i * c with c exact, for odd chi (imprimitive via Euler factors)."""
    if not chi.is_odd():
        raise CharacterError("L(1, chi) closed form needs an odd character")
    chi0 = chi.primitive()
    cb = chi0.conj()
    c = -bernoulli(cb, 1).value / gauss_sum(cb)
    return Closed(pi_i=c * euler_factor_lift(chi, 1))


def l_one_odd(chi: DirichletCharacter):
    """Numeric L(1, chi) from the closed form."""
    return l_one_odd_closed(chi).evaluate()


@lru_cache(maxsize=None)
def _l_prime_primitive(chi: DirichletCharacter):
    N = chi.modulus
    with mpmath.workdps(DPS + 5):
        g = gauss_sum(chi).to_mpc()
        return N * g / (4 * mpmath.pi * 1j) * l_two(chi.conj())


def l_prime_minus1(chi: DirichletCharacter):
    """L'(-1, chi) for odd chi; imprimitive characters expand through Euler factors."""
    if not chi.is_odd():
        raise CharacterError("L'(-1, chi) closed form needs an odd character")
    chi0 = chi.primitive()
    return euler_factor_lift(chi, -1).to_mpc() * _l_prime_primitive(chi0)


def l_prime_minus1_closed(chi: DirichletCharacter) -> Closed:
    chi0 = chi.primitive()
    return Closed.of_lprime(chi0, euler_factor_lift(chi, -1))


# ---------------------------------------------------------------------------
# Period limits


@dataclass(frozen=True)
class LLimit:
    kind: str  # "finite" or "divergent"
    value: object
    exact: Closed | None


def i_limit(k: int, chi: DirichletCharacter, psi: DirichletCharacter, n: int) -> LLimit:
    """n^{-1} lim_{s->0} L(s+1, chi) L(s+2-k, psi)."""
    if k < 2:
        raise CharacterError("weight must be at least 2")
    if chi.parity() * psi.parity() != (-1) ** k:
        raise CharacterError("parity condition chi psi(-1) = (-1)^k violated")
    L2k = l_value_negative(2 - k, psi)
    inv_n = Fraction(1, n)
    if not chi.is_principal():
        if L2k.is_zero():
            return LLimit("finite", mpmath.mpc(0), Closed.zero())
        if not chi.is_odd():
            raise NotImplementedError("L(1, chi) for even nonprincipal chi is not modelled")
        exact = l_one_odd_closed(chi).scale(L2k * inv_n)
        return LLimit("finite", exact.evaluate(), exact)
    if not L2k.is_zero():
        raise DivergentLimit(f"pole: zeta(1+s) times L({2 - k}, psi) = {complex(L2k)}")
    factor = Fraction(1)
    for p in prime_divisors(chi.modulus):
        factor *= 1 - Fraction(1, p)
    if k != 3:
        with mpmath.workdps(DPS):
            val = factor * inv_n * hurwitz_l_derivative(psi, 2 - k)
        return LLimit("finite", val, None)
    exact = l_prime_minus1_closed(psi).scale(factor * inv_n)
    return LLimit("finite", exact.evaluate(), exact)


def hurwitz_l_derivative(chi: DirichletCharacter, s):
    """d/ds L(s, chi) from Hurwitz zeta derivatives: L = N^{-s} sum chi(a) zeta(s, a/N)."""
    N = chi.modulus
    with mpmath.workdps(DPS + 5):
        s = mpmath.mpf(s)
        terms = [(chi.mp(a), mpmath.mpf(a) / N) for a in range(1, N + 1) if chi.phase[a % N] is not None]
        val = mpmath.fsum(c * mpmath.zeta(s, x) for c, x in terms)
        der = mpmath.fsum(c * mpmath.zeta(s, x, 1) for c, x in terms)
        return N ** (-s) * (der - mpmath.log(N) * val)
