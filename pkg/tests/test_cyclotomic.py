from __future__ import annotations

import cmath
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from artifact.cyclotomic import Cyclotomic, cyclotomic_poly


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)


def test_roots_of_unity():
    z = Cyclotomic.root(12, 1)
    assert z**12 == 1
    assert z**6 == -1
    assert abs(complex(z) - cmath.exp(2j * cmath.pi / 12)) < 1e-14


def test_gaussian_parts_and_embedding():
    i = Cyclotomic.i()
    assert i * i == -1
    assert (1 + i).embed(20).gaussian_parts() == (1, 1)
    sqrt3i = Cyclotomic.root(3, 1) - Cyclotomic.root(3, 2)
    assert sqrt3i * sqrt3i == -3
    assert sqrt3i.gaussian_parts() is None


elements = st.builds(lambda m, cs: Cyclotomic.from_exponents(m, dict(enumerate(cs))),
                     st.sampled_from([3, 4, 5, 8, 12, 15]),
                     st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=6))


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_field_operations_match_complex(a, b):
    assert abs(complex(a + b) - (complex(a) + complex(b))) < 1e-9
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9
    if not b.is_zero():
        assert (a / b) * b == a
        assert abs(complex(b.inverse()) - 1 / complex(b)) < 1e-6 * (1 + abs(1 / complex(b)))
    assert abs(complex(a.conjugate()) - complex(a).conjugate()) < 1e-9


def test_rational_roundtrip():
    x = Cyclotomic.rational(F(-7, 3), 10)
    assert x.is_rational() and x.to_fraction() == F(-7, 3)
