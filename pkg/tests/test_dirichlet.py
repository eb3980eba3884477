from __future__ import annotations

import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from artifact.cyclotomic import Cyclotomic
from artifact.dirichlet import (CharacterError, DivergentLimit, bernoulli, chi3, chi4, chi5, enumerate_characters,
                                euler_phi, gauss_sum, hurwitz_l_derivative, i_limit, l_one_odd, l_prime_minus1,
                                l_prime_minus1_closed, l_two, l_value_negative, principal)

mpmath.mp.dps = 30


def test_enumeration_examples():
    assert [str(c) for c in enumerate_characters(1)] == ["1_1"]
    chars3 = enumerate_characters(3)
    assert len(chars3) == 2 and any(c.is_principal() for c in chars3)
    (nontriv,) = [c for c in chars3 if not c.is_principal()]
    assert nontriv(2) == -1 and nontriv == chi3()
    chars5 = enumerate_characters(5)
    assert len(chars5) == 4
    assert [c for c in chars5 if c(2) == Cyclotomic.i()] == [chi5()]


@pytest.mark.parametrize("m", [7, 8, 12, 15, 16, 24])
def test_enumeration_counts_and_distinct(m):
    chars = enumerate_characters(m)
    assert len(chars) == euler_phi(m) == len(set(chars))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=40), st.data())
def test_character_is_completely_multiplicative(m, data):
    chi = data.draw(st.sampled_from(enumerate_characters(m)))
    a, b = data.draw(st.integers(-50, 50)), data.draw(st.integers(-50, 50))
    assert chi(a * b) == chi(a) * chi(b)
    assert chi(1) == 1
    assert chi(a).is_zero() == (math.gcd(a, m) != 1)


def test_gauss_sum_examples():
    assert gauss_sum(principal(1)) == 1
    g = gauss_sum(chi3())
    assert g * g == -3 and complex(g).imag > 0
    assert abs(abs(complex(gauss_sum(chi5()))) ** 2 - 5) < 1e-12


def _primitive_characters(max_modulus):
    for m in range(1, max_modulus + 1):
        for chi in enumerate_characters(m):
            if chi.is_primitive():
                yield chi


def test_gauss_sum_modulus_squared_equals_conductor():
    count = 0
    for chi in _primitive_characters(60):
        g = complex(gauss_sum(chi))
        assert abs(abs(g) ** 2 - chi.conductor) < 1e-10
        count += 1
    assert count > 500


def test_gauss_sum_matches_direct_numeric_sum():
    for chi in enumerate_characters(20):
        direct = sum(chi.numeric(a) * complex(mpmath.expjpi(F(2 * a, 20))) for a in range(20))
        assert abs(complex(gauss_sum(chi)) - direct) < 1e-12


def test_bernoulli_examples():
    assert bernoulli(principal(5), 2).value == F(-2, 3)
    assert bernoulli(chi5() ** 2, 2).value == F(4, 5)
    assert bernoulli(chi3(), 2).value == 0
    assert bernoulli(principal(1), 1).value == F(1, 2)


def test_l_value_negative_examples():
    assert l_value_negative(-1, principal(5)) == F(1, 3)
    assert l_value_negative(-2, chi3()) == F(-2, 9)
    assert l_value_negative(-1, chi5() ** 2) == F(-2, 5)
    assert l_value_negative(-1, principal(1)) == F(-1, 12)


def test_bernoulli_against_bernoulli_polynomials():
    # B_{m,chi} = N^{m-1} sum_a chi(a) B_m(a/N)
    for chi in [chi3(), chi4(), chi5(), chi5() ** 2, principal(6)] + enumerate_characters(7):
        N = chi.modulus
        for m in range(0, 8):
            ref = N ** (m - 1) * mpmath.fsum(chi.mp(a) * mpmath.bernpoly(m, mpmath.mpf(a) / N) for a in range(1, N + 1))
            assert abs(complex(bernoulli(chi, m)) - complex(ref)) < 1e-15 * (1 + abs(complex(ref)))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=30), st.integers(min_value=0, max_value=12), st.data())
def test_bernoulli_parity_vanishing(m, k, data):
    chi = data.draw(st.sampled_from(enumerate_characters(m)))
    if (m, k) == (1, 1):
        return
    if chi.parity() != (-1) ** k:
        assert bernoulli(chi, k).value.is_zero()


def _l1_digamma(chi):
    # L(1, chi) = -(1/N) sum_a chi(a) digamma(a/N), chi nonprincipal
    N = chi.modulus
    return -mpmath.fsum(chi.mp(a) * mpmath.digamma(mpmath.mpf(a) / N) for a in range(1, N + 1)) / N


def test_l_one_odd_examples():
    c = chi5()
    lhs = complex(gauss_sum(c ** 3).to_mpc() * l_one_odd(c))
    assert abs(lhs - math.pi * (1 + 3j) / 5) < 1e-10
    lhs = complex(gauss_sum(c).to_mpc() * l_one_odd(c ** 3))
    assert abs(lhs - math.pi * (-1 + 3j) / 5) < 1e-10
    leibniz = mpmath.nsum(lambda k: (-1) ** k / (2 * k + 1), [0, mpmath.inf])
    assert abs(complex(l_one_odd(chi4())) - complex(leibniz)) < 1e-12
    assert abs(complex(l_one_odd(chi4())) - math.pi / 4) < 1e-12


@pytest.mark.parametrize("m", [3, 4, 5, 7, 8, 11, 12, 15])
def test_l_one_odd_against_digamma(m):
    for chi in enumerate_characters(m):
        if chi.is_odd():
            assert abs(complex(l_one_odd(chi)) - complex(_l1_digamma(chi))) < 1e-12


def test_l_one_even_raises():
    with pytest.raises(CharacterError):
        l_one_odd(chi5() ** 2)


def _l2_blocks(chi):
    N = chi.modulus
    return mpmath.fsum(chi.mp(a) * mpmath.nsum(lambda k: 1 / (k * N + a) ** 2, [0, mpmath.inf])
                       for a in range(1, N + 1) if not chi(a).is_zero())


@pytest.mark.parametrize("chi", [chi3(), chi4(), chi5(), principal(6)], ids=str)
def test_l_two_against_block_sums(chi):
    assert abs(complex(l_two(chi)) - complex(_l2_blocks(chi))) < 1e-12


def test_l_prime_chi3_value():
    val = complex(l_prime_minus1(chi3()))
    assert abs(val.imag) < 1e-20
    assert abs(val.real - 0.3230659) < 5e-7
    assert abs(val.real - 0.323065947219451) < 1e-14


@pytest.mark.parametrize("chi", [chi3(), chi4(), chi5(), chi5().conj()] + [c for c in enumerate_characters(7) if c.is_odd()],
                         ids=str)
def test_l_prime_against_hurwitz_derivative(chi):
    assert abs(complex(l_prime_minus1(chi)) - complex(hurwitz_l_derivative(chi, -1))) < 1e-6
    assert abs(complex(l_prime_minus1(chi)) - complex(hurwitz_l_derivative(chi, -1))) < 1e-20


def test_l_prime_imprimitive_lift():
    lifted = chi3() * principal(2)
    assert l_prime_minus1_closed(lifted).lprime_coefficient(chi3()) == 3
    ratio = complex(l_prime_minus1(lifted)) / complex(l_prime_minus1(chi3()))
    assert abs(ratio - 3) < 1e-14
    assert abs(complex(hurwitz_l_derivative(lifted, -1)) - 3 * complex(l_prime_minus1(chi3()))) < 1e-15


def test_i_limit_examples():
    one = principal(1)
    lim = i_limit(3, one, chi3(), 1)
    assert lim.exact.lprime_coefficient(chi3()) == 1
    assert abs(complex(lim.value) - complex(l_prime_minus1(chi3()))) < 1e-20
    even = chi5() ** 2
    assert i_limit(3, even, chi5(), 1).exact.is_zero()
    a = i_limit(3, one, chi3(), 3).exact
    b = i_limit(3, principal(3), chi3(), 1).exact
    assert a == b.scale(F(1, 2))


def test_i_limit_exact_part_matches_value():
    for chi, psi, n in [(chi4(), chi5() ** 2 * principal(4), 1), (chi3(), principal(5), 2), (principal(6), chi3(), 1)]:
        lim = i_limit(3, chi, psi, n)
        assert abs(complex(lim.exact.evaluate()) - complex(lim.value)) < 1e-10


def test_i_limit_errors():
    with pytest.raises(DivergentLimit):
        i_limit(2, principal(1), principal(1), 1)  # zeta(1+s) zeta(s) has a pole
    with pytest.raises(CharacterError):
        i_limit(3, principal(1), principal(5), 1)


def test_i_limit_other_weight_numeric():
    # k = 2: L(0, psi) = 0 for even nonprincipal psi, limit is L'(0, psi)
    psi = chi5() ** 2
    lim = i_limit(2, principal(1), psi, 1)
    assert lim.exact is None
    assert abs(complex(lim.value) - complex(hurwitz_l_derivative(psi, 0))) < 1e-20
