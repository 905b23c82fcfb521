import math
import random
from fractions import Fraction

import numpy as np
import pytest

from wordlab import (
    CircleRotation,
    DecoloringSpec,
    FiniteWord,
    FrequencyVector,
    TorusRotation,
    angle_from_frequencies,
    catalog_spec,
    decolor,
    empirical_frequencies,
    equidistribution_check,
    find_conflict,
    merge_and_detect,
    orbit_point,
)
from wordlab.angles import SQRT2, SQRT3, SQRT5, AngleValue
from wordlab.errors import DegenerateBox, LengthMismatch, NotBinary
from wordlab.frequency import exact_frequencies
from wordlab.words import RotationBinary, WordGeneratorSpec, generate

F = Fraction


def test_angle_from_frequencies():
    alpha = SQRT2 - 1
    assert angle_from_frequencies(FrequencyVector((1 - alpha, alpha), "exact")) == alpha
    assert angle_from_frequencies(FrequencyVector((F(1, 2), F(1, 2)), "exact")) == F(1, 2)
    with pytest.raises(NotBinary):
        angle_from_frequencies(FrequencyVector((F(1, 3),) * 3, "exact"))


def test_decolored_angles_are_letter_frequencies(words):
    w = words("rotation-ternary", 50_000)
    f = empirical_frequencies(w)
    for i, keep in ((1, "2"), (2, "3")):
        b = decolor(w, DecoloringSpec(keep))
        assert angle_from_frequencies(empirical_frequencies(b)) == f.values[i]
    exact = exact_frequencies(catalog_spec("rotation-ternary", 10))
    assert exact.values[1] == SQRT3 - SQRT2


def test_orbit_point_examples():
    assert orbit_point(CircleRotation(F(1, 4)), 3) == F(3, 4)
    assert orbit_point(TorusRotation(F(1, 2), F(1, 3)), 6) == (0, 0)
    p = orbit_point(CircleRotation(SQRT2 - 1), 2)
    assert p == 2 * SQRT2 - 2
    assert abs(float(p) - 0.8284271247) < 1e-9


def test_orbit_group_action():
    rng = random.Random(3)
    angles = [SQRT2 - 1, SQRT3 - 1, (SQRT5 - 1) / 2, AngleValue(F(3, 7)), AngleValue(F(5, 13))]
    for _ in range(500):
        alpha = rng.choice(angles)
        x = AngleValue(F(rng.randint(0, 99), 100))
        m, n = rng.randint(0, 10_000), rng.randint(0, 10_000)
        r = CircleRotation(alpha, x)
        moved = CircleRotation(alpha, orbit_point(r, m))
        assert orbit_point(moved, n) == orbit_point(r, m + n)


def test_find_conflict_examples():
    assert find_conflict(TorusRotation("0.2", "0.1", "0.9", "0.95"), 10) == 0
    assert find_conflict(TorusRotation(F(1, 2), F(1, 2), 0, F(1, 2)), 10**9) is None
    with pytest.raises(DegenerateBox):
        find_conflict(TorusRotation(0, F(1, 2)), 10)


def test_find_conflict_minimality():
    rng = random.Random(11)
    for _ in range(40):
        t = TorusRotation(
            (SQRT2 - 1) * F(rng.randint(1, 5), 7),
            (SQRT3 - 1) * F(rng.randint(1, 5), 7),
            F(rng.randint(0, 99), 100),
            F(rng.randint(0, 99), 100),
        )
        n = find_conflict(t, 5000)
        stop = 5001 if n is None else n
        for k in range(stop):
            a, b = orbit_point(t, k)
            assert not (a >= 1 - t.alpha and b >= 1 - t.beta)
        if n is not None:
            a, b = orbit_point(t, n)
            assert a >= 1 - t.alpha and b >= 1 - t.beta


def test_rational_conflict_decided_within_period():
    for p, q, p2, q2 in [(1, 3, 1, 4), (2, 5, 3, 7), (1, 2, 1, 2)]:
        t = TorusRotation(F(p, q), F(p2, q2), F(1, 10), F(1, 10))
        period = math.lcm(q, q2)
        assert find_conflict(t, 10**8) == find_conflict(t, period - 1)


def test_equidistribution_examples():
    out = equidistribution_check(TorusRotation(F(1, 2), F(1, 2), 0, F(1, 2)), 10_000)
    assert out.hits == 0 and out.limit == 0
    same = equidistribution_check(TorusRotation(F(1, 2), F(1, 2), F(1, 2), F(1, 2)), 10_000)
    assert same.fraction == F(1, 2) and same.limit == F(1, 2)
    t = TorusRotation(SQRT2 - 1, SQRT3 - 1)
    assert equidistribution_check(t, 200_000).gap <= 0.01


def test_merge_examples():
    res = merge_and_detect(FiniteWord.from_string("020"), FiniteWord.from_string("300"))
    assert str(res.merged) == "321" and res.conflicts == ()
    res = merge_and_detect(FiniteWord.from_string("200"), FiniteWord.from_string("300"))
    assert res.merged is None and res.conflicts == (0,)
    with pytest.raises(LengthMismatch):
        merge_and_detect(FiniteWord.from_string("02"), FiniteWord.from_string("300"))


def test_merge_inverts_decoloring(words):
    w = words("tribonacci", 5000)
    res = merge_and_detect(decolor(w, DecoloringSpec("2")), decolor(w, DecoloringSpec("3")))
    assert res.conflicts == () and res.merged == w


def test_merge_conflicts_match_direct_scan():
    n = 100_000
    w2 = generate(WordGeneratorSpec(RotationBinary(SQRT2 - 1, 0, symbols="02"), n))
    w3 = generate(WordGeneratorSpec(RotationBinary(SQRT3 - 1, 0, symbols="03"), n))
    res = merge_and_detect(w2, w3)
    s2, s3 = str(w2), str(w3)
    assert list(res.conflicts) == [i for i in range(n) if s2[i] == "2" and s3[i] == "3"]
    assert res.conflicts[0] == find_conflict(TorusRotation(SQRT2 - 1, SQRT3 - 1), n)
