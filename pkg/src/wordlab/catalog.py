"""Named generator specs used by the lemma suite, the CLI and the demos."""

from __future__ import annotations

from .angles import PHI, SQRT2, SQRT3
from .errors import InvalidParameter
from .words import (
    Periodic,
    RotationBinary,
    RotationTernary,
    Substitution,
    WordGeneratorSpec,
)

FIBONACCI = Substitution((("0", "01"), ("1", "0")), "0")
TRIBONACCI = Substitution((("1", "12"), ("2", "13"), ("3", "1")), "1")
THUE_MORSE = Substitution((("0", "01"), ("1", "10")), "0")

# cut1 = sqrt2 - 1, cut2 = sqrt3 - 1: interval lengths sqrt2-1, sqrt3-sqrt2, 2-sqrt3
ROTATION_TERNARY = RotationTernary(SQRT2 - 1, 0, SQRT2 - 1, SQRT3 - 1)
FIBONACCI_ROTATION = RotationBinary(2 - PHI, 2 - PHI)


def _build():
    return {
        "fibonacci": FIBONACCI,
        "tribonacci": TRIBONACCI,
        "thue-morse": THUE_MORSE,
        "periodic12": Periodic("12"),
        "periodic123": Periodic("123"),
        "periodic112": Periodic("112"),
        "periodic1213": Periodic("1213"),
        "rotation-ternary": ROTATION_TERNARY,
        "fibonacci-rotation": FIBONACCI_ROTATION,
    }


CATALOG = _build()

# words checked by the default lemma suite
DEFAULT_CORPUS = ("fibonacci", "tribonacci", "periodic12", "periodic123", "rotation-ternary")


def catalog_spec(name: str, length: int = 10_000) -> WordGeneratorSpec:
    try:
        variant = CATALOG[name]
    except KeyError:
        known = ", ".join(sorted(CATALOG))
        raise InvalidParameter(f"unknown catalog word {name!r} (known: {known})") from None
    return WordGeneratorSpec(variant, length, name)


def default_corpus(length: int = 10_000) -> list[WordGeneratorSpec]:
    return [catalog_spec(name, length) for name in DEFAULT_CORPUS]
