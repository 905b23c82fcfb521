import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordlab import (
    Alphabet,
    FiniteWord,
    ParikhVector,
    Periodic,
    RotationBinary,
    RotationTernary,
    Substitution,
    WordGeneratorSpec,
    catalog_spec,
    factor,
    generate,
    parikh,
)
from wordlab.angles import PHI, SQRT2
from wordlab.errors import (
    IndexOutOfRange,
    InvalidParameter,
    LetterNotInAlphabet,
    NonProlongableMorphism,
)
from wordlab.words import apply_morphism

FIB34 = "0100101001001010010100100101001001"


def test_alphabet_rejects_duplicates_and_multichar():
    with pytest.raises(InvalidParameter):
        Alphabet("11")
    with pytest.raises(InvalidParameter):
        Alphabet(["ab"])


def test_from_string_default_alphabet_is_sorted():
    w = FiniteWord.from_string("3121")
    assert str(w.alphabet) == "123"
    assert str(w) == "3121"


def test_from_string_unknown_letter():
    with pytest.raises(LetterNotInAlphabet):
        FiniteWord.from_string("124", "12")


def test_parikh_and_factor():
    w = FiniteWord.from_string("0101100")
    assert parikh(w) == ParikhVector((4, 3))
    assert str(factor(w, 2, 4)) == "011"
    with pytest.raises(IndexOutOfRange):
        factor(w, 5, 9)


def test_parikh_vector_arithmetic():
    a, b = ParikhVector((2, 1, 0)), ParikhVector((1, 1, 1))
    assert (a + b).counts == (3, 2, 1)
    assert (a - b).counts == (1, 0, -1)
    assert a.total == 3


def test_periodic_generator():
    assert str(generate(WordGeneratorSpec(Periodic("12"), 7))) == "1212121"


def test_fibonacci_substitution_prefix():
    assert str(generate(catalog_spec("fibonacci", 34))) == FIB34


def test_tribonacci_prefix():
    assert str(generate(catalog_spec("tribonacci", 20))) == "12131211213121213121"


def test_non_prolongable_morphism():
    with pytest.raises(NonProlongableMorphism):
        Substitution({"0": "1", "1": "01"}, "0")
    with pytest.raises(NonProlongableMorphism):
        Substitution({"0": "0", "1": "10"}, "0")


def test_rotation_binary_rational():
    w = generate(WordGeneratorSpec(RotationBinary("1/4", 0), 8))
    assert str(w) == "00010001"


def test_rotation_binary_matches_fibonacci():
    rot = generate(WordGeneratorSpec(RotationBinary(2 - PHI, 2 - PHI), 1000))
    sub = generate(catalog_spec("fibonacci", 1000))
    assert str(rot) == str(sub)


def test_partition_b_differs_only_on_boundary_hits():
    # alpha = 1/4 from x = 0 hits the cut 3/4 exactly at n = 3
    a = str(generate(WordGeneratorSpec(RotationBinary("1/4", 0, "A"), 8)))
    b = str(generate(WordGeneratorSpec(RotationBinary("1/4", 0, "B"), 8)))
    assert a == "00010001"
    assert b == "10001000"


def test_rotation_ternary_validation():
    with pytest.raises(InvalidParameter):
        RotationTernary(SQRT2 - 1, 0, "1/2", "1/3")
    with pytest.raises(InvalidParameter):
        RotationBinary("5/4", 0)


@given(p=st.integers(1, 12), q=st.integers(2, 40), x=st.integers(0, 39))
@settings(max_examples=60, deadline=None)
def test_rational_rotation_period_divides_q(p, q, x):
    from math import gcd

    if gcd(p, q) != 1 or p >= q or x >= q:
        return
    w = generate(WordGeneratorSpec(RotationBinary(f"{p}/{q}", f"{x}/{q}"), 3 * q))
    assert np.array_equal(w.data[q:], w.data[:-q])


def test_generation_is_deterministic():
    spec = catalog_spec("rotation-ternary", 500)
    assert generate(spec) == generate(spec)


def test_apply_morphism():
    sub = Substitution({"0": "01", "1": "0"}, "0")
    assert str(apply_morphism(sub.rules, FiniteWord.from_string("010"))) == "01001"
