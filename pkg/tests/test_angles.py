from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordlab.angles import PHI, SQRT2, SQRT3, SQRT5, TRIB, AngleValue, code_orbit, parse_angle
from wordlab.errors import BoundaryAmbiguity


def test_parse_decimal_is_exact():
    assert parse_angle("0.1").as_fraction() == Fraction(1, 10)
    assert parse_angle("1/3 + 1/6") == AngleValue(Fraction(1, 2))


def test_parse_named_constants():
    assert parse_angle("sqrt2 - 1") == SQRT2 - 1
    assert parse_angle("(1 + sqrt5)/2") == PHI
    assert parse_angle("2 - phi") == 2 - PHI


def test_golden_ratio_identity():
    assert PHI * PHI == PHI + 1
    assert PHI.inverse() == PHI - 1


def test_tribonacci_identity():
    t = TRIB
    assert t**3 == t**2 + t + 1
    assert t.inverse() + t**-2 + t**-3 == 1


def test_sign_and_floor_of_surds():
    assert (SQRT2 - Fraction(14142, 10000)).sign() == 1
    assert (SQRT2 - Fraction(14143, 10000)).sign() == -1
    assert (SQRT3 * 1000).floor() == 1732
    assert ((SQRT2 - 1) * 2).frac() == 2 * SQRT2 - 2


def test_cross_field_product_is_rejected():
    with pytest.raises(ValueError):
        SQRT2 * SQRT3


def test_comparisons():
    assert SQRT2 < Fraction(3, 2) < SQRT3
    assert sorted([SQRT3, AngleValue(1), SQRT2]) == [AngleValue(1), SQRT2, SQRT3]


def test_float_input_is_marked_inexact():
    v = AngleValue(0.25)
    assert v.inexact
    assert not parse_angle("0.25").inexact


@given(a=st.integers(-50, 50), b=st.integers(-50, 50), c=st.integers(1, 30))
@settings(max_examples=100, deadline=None)
def test_surd_sign_matches_float(a, b, c):
    v = AngleValue(Fraction(a, c)) + SQRT5 * b
    expected = float(Fraction(a, c)) + b * 5**0.5
    if abs(expected) > 1e-9:
        assert v.sign() == (1 if expected > 0 else -1)


def test_code_orbit_rational_exact_boundary():
    assert "".join(map(str, code_orbit("1/4", 0, ["3/4"], 8))) == "00010001"


def test_code_orbit_matches_exact_floor_for_surd():
    alpha, cut = SQRT2 - 1, 2 - SQRT2
    codes = code_orbit(alpha, 0, [cut], 300)
    for n in range(300):
        point = (alpha * n).frac()
        assert codes[n] == (1 if point >= cut else 0)


def test_code_orbit_far_start_consistent():
    alpha = SQRT3 - 1
    full = code_orbit(alpha, 0, [Fraction(1, 2)], 2000)
    tail = code_orbit(alpha, 0, [Fraction(1, 2)], 500, start=1500)
    assert np.array_equal(full[1500:], tail)


def test_inexact_near_boundary_raises():
    # float 0.25 with a cut at 0.5 lands on the boundary at n = 2
    with pytest.raises(BoundaryAmbiguity):
        code_orbit(AngleValue(0.25), 0, [AngleValue(0.5)], 4)
