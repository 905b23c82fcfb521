import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import naive_abelian, naive_deviation, naive_subword

from wordlab import (
    FiniteWord,
    ParikhVector,
    abelian_complexity,
    abelian_counts,
    balance_profile,
    check_balance_abelian_inequality,
    classify_parikh_set,
    complexity_profile,
    parikh_set,
    subword_complexity,
    subword_counts,
    tijdeman_flag,
)
from wordlab.complexity import ComplexityProfile
from wordlab.errors import LengthOutOfRange, MixedLengths

ternary = st.text(alphabet="123", min_size=1, max_size=60)


@given(s=ternary)
@settings(max_examples=150, deadline=None)
def test_abelian_and_subword_match_naive(s):
    w = FiniteWord.from_string(s, "123")
    n_max = len(s)
    ab = abelian_counts(w, n_max)
    sub = subword_counts(w, n_max)
    for n in range(1, n_max + 1):
        assert ab[n - 1] == naive_abelian(s, n, "123")
        assert sub[n - 1] == naive_subword(s, n)


@given(s=ternary)
@settings(max_examples=100, deadline=None)
def test_balance_matches_naive(s):
    w = FiniteWord.from_string(s, "123")
    prof = balance_profile(w, len(s))
    for n in range(1, len(s) + 1):
        for i, a in enumerate("123"):
            assert prof.deviations[n - 1, i] == naive_deviation(s, n, a)


@given(s=ternary)
@settings(max_examples=100, deadline=None)
def test_lower_inequality_always_holds(s):
    w = FiniteWord.from_string(s, "123")
    prof = complexity_profile(w, len(s))
    assert not [v for v in check_balance_abelian_inequality(prof) if not v.advisory]


def test_fibonacci_sturmian_profile(words):
    w = words("fibonacci", 5000)
    assert (abelian_counts(w, 200) == 2).all()
    assert (subword_counts(w, 200) == np.arange(2, 202)).all()
    assert balance_profile(w, 200).max_deviation() == 1


def test_periodic_12_parity():
    w = FiniteWord.from_string("12" * 60)
    ab = abelian_counts(w, 100)
    assert list(ab[:4]) == [2, 1, 2, 1]


def test_thue_morse_abelian_values(words):
    # Thue-Morse has abelian complexity 2 at odd n and 3 at even n
    ab = abelian_counts(words("thue-morse", 4096), 40)
    assert list(ab[:6]) == [2, 3, 2, 3, 2, 3]


def test_length_out_of_range():
    w = FiniteWord.from_string("1212")
    with pytest.raises(LengthOutOfRange):
        abelian_complexity(w, 5)
    with pytest.raises(LengthOutOfRange):
        subword_complexity(w, 0)


def test_parikh_set_contents():
    w = FiniteWord.from_string("121312", "123")
    assert parikh_set(w, 2) == {ParikhVector((1, 1, 0)), ParikhVector((1, 0, 1))}


def test_profile_csv_roundtrip(words):
    prof = complexity_profile(words("tribonacci", 2000), 30, "trib")
    text = prof.to_csv()
    assert text.splitlines()[0] == "n,subword,abelian,dev_1,dev_2,dev_3"
    back = ComplexityProfile.from_csv(text, "trib")
    assert back.rows == prof.rows


def test_tribonacci_subword_complexity_is_2n_plus_1(words):
    sub = subword_counts(words("tribonacci", 20000), 100)
    assert (sub == 2 * np.arange(1, 101) + 1).all()


def test_tijdeman_flag():
    periodic = complexity_profile(FiniteWord.from_string("123" * 50), 20)
    assert tijdeman_flag(periodic) == 2


def test_upper_bound_is_advisory_only():
    # a random binary word: rho = C + 1 at every n, the upper bound is never exceeded
    prof = complexity_profile(FiniteWord.from_string("0010111010001101"), 10)
    assert all(v.advisory for v in check_balance_abelian_inequality(prof))


@pytest.mark.parametrize(
    "vectors, kind",
    [
        ([(3, 1, 0)], "Singleton"),
        ([(2, 1, 1), (3, 0, 1)], "Pair"),
        ([(2, 2, 0), (3, 1, 0), (4, 0, 0)], "Chain"),
        ([(1, 2, 1), (2, 1, 1), (3, 1, 0)], "LShape"),
        ([(1, 0, 0), (0, 1, 0), (0, 0, 1)], "Other"),
    ],
)
def test_classify_shapes(vectors, kind):
    assert classify_parikh_set(vectors).kind == kind


def test_lshape_middle_vector():
    shape = classify_parikh_set([(1, 2, 1), (2, 1, 1), (3, 1, 0)])
    assert shape.middle == ParikhVector((2, 1, 1))


def test_classify_mixed_lengths():
    with pytest.raises(MixedLengths):
        classify_parikh_set([(1, 0), (1, 1)])
