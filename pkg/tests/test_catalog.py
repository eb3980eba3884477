from __future__ import annotations

from fractions import Fraction as F

import pytest

from artifact.catalog import (INFINITY, SUPPORTED, Cusp, Elliptic, TransitionCase, UnsupportedCase, case_constants,
                              case_data, euler_defect, local_exponents_at_infinity, transition_point, u_vanishes_at)

KLM = {"1": (432, 60, 0), "2": (64, 12, 0), "3": (27, 6, 0), "4": (16, 4, 0), "5": (11, 3, 1),
       "6I": (7, 2, 8), "6II": (10, 3, -9), "8": (0, 0, 16)}
DEFECT = {"1": 60, "2": 36, "3": 24, "4": 16, "5": 10, "6I": 6, "6II": 4, "7": 4, "8": 4}


def test_enumeration_is_exhaustive():
    assert [c.label for c in TransitionCase] == ["1", "2", "3", "4", "5", "6I", "6II", "7", "8"]
    assert TransitionCase.D7 not in SUPPORTED and len(SUPPORTED) == 8
    assert not case_data("7").supported


@pytest.mark.parametrize("d", list(KLM))
def test_constants(d):
    assert case_constants(d) == KLM[d]


def test_parse_aliases():
    assert TransitionCase.parse("d6ii") is TransitionCase.D6II
    assert TransitionCase.parse(5) is TransitionCase.D5
    with pytest.raises(ValueError):
        TransitionCase.parse("9")


def test_d7_has_no_constants():
    with pytest.raises(UnsupportedCase):
        case_constants("7")
    with pytest.raises(UnsupportedCase):
        transition_point("7")


@pytest.mark.parametrize("d", list(DEFECT))
def test_euler_defect(d):
    assert euler_defect(d) == DEFECT[d]


def test_euler_defect_6II_by_hand():
    h11, h21 = case_data("6II").hodge
    assert 2 * (12 - 6) - (2 + 2 * h11 - 2 * h21) == 4 == euler_defect("6II")


def test_transition_points():
    assert transition_point("6I") == Cusp(1, 3)
    assert transition_point("5") == Cusp(2, 5)
    assert isinstance(transition_point("1"), Elliptic) and str(transition_point("1")) == "omega_6"


@pytest.mark.parametrize("d", [c.label for c in SUPPORTED])
def test_local_exponents_match_table(d):
    data = case_data(d)
    if data.mu == 0:
        assert local_exponents_at_infinity(d) == (F(1, data.n_d), 1 - F(1, data.n_d))
    else:
        assert local_exponents_at_infinity(d) == (1, 1)


@pytest.mark.parametrize("d", [c.label for c in SUPPORTED])
def test_u_vanishes_at_finite_singular_points(d):
    data = case_data(d)
    finite = [p for p in data.sing_points if p != INFINITY and p != 0]
    assert finite and all(u_vanishes_at(d, p) for p in finite)
    assert not u_vanishes_at(d, F(0))
