"""Word files and key=value generator specs.

A word file is UTF-8 text: an optional first line ``#alphabet:<symbols>``
followed by one line of symbols with no separators.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Union

from .angles import parse_angle
from .catalog import catalog_spec
from .errors import EmptyWord, InvalidParameter
from .words import (
    Alphabet,
    FiniteWord,
    Periodic,
    RotationBinary,
    RotationTernary,
    Substitution,
    WordGeneratorSpec,
)

ALPHABET_TAG = "#alphabet:"


def parse_word_text(text: str) -> FiniteWord:
    lines = text.splitlines()
    alphabet = None
    if lines and lines[0].startswith(ALPHABET_TAG):
        alphabet = Alphabet(lines[0][len(ALPHABET_TAG):].strip())
        lines = lines[1:]
    body = [ln.strip() for ln in lines if ln.strip()]
    if len(body) > 1:
        raise InvalidParameter("a word file holds exactly one line of symbols")
    if not body:
        raise EmptyWord("word file contains no symbols")
    return FiniteWord.from_string(body[0], alphabet)


def format_word(w: FiniteWord, include_alphabet: bool = True) -> str:
    head = f"{ALPHABET_TAG}{w.alphabet}\n" if include_alphabet else ""
    return f"{head}{w}\n"


def read_word_file(path: Union[str, Path]) -> FiniteWord:
    return parse_word_text(Path(path).read_text(encoding="utf-8"))


def atomic_write(path: Union[str, Path], text: str) -> None:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_word_file(path: Union[str, Path], w: FiniteWord, include_alphabet: bool = True) -> None:
    atomic_write(path, format_word(w, include_alphabet))


def parse_morphism(text: str) -> tuple[tuple[str, str], ...]:
    """``"0:01,1:0"`` -> ``(("0", "01"), ("1", "0"))``."""
    rules = []
    for part in text.split(","):
        letter, sep, image = part.strip().partition(":")
        if not sep or len(letter) != 1 or not image:
            raise InvalidParameter(f"bad morphism rule {part!r}; expected letter:image")
        rules.append((letter, image))
    return tuple(rules)


def parse_spec_text(text: str) -> WordGeneratorSpec:
    """Parse a key=value block such as::

        type = rotation-binary
        alpha = 2 - phi
        x = 2 - phi
        length = 1000

    ``type`` is one of periodic, substitution, rotation-binary,
    rotation-ternary or catalog.  Blank lines and ``#`` comments are ignored.
    """
    fields = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InvalidParameter(f"expected key=value, got {raw!r}")
        fields[key.strip().lower()] = value.strip()
    try:
        kind = fields.pop("type")
        length = int(fields.pop("length"))
    except KeyError as exc:
        raise InvalidParameter(f"spec is missing {exc.args[0]!r}") from None
    name = fields.pop("name", "")
    try:
        if kind == "catalog":
            return catalog_spec(name, length)
        if kind == "periodic":
            variant = Periodic(fields.pop("pattern"))
        elif kind == "substitution":
            variant = Substitution(parse_morphism(fields.pop("morphism")), fields.pop("seed"))
        elif kind == "rotation-binary":
            variant = RotationBinary(
                parse_angle(fields.pop("alpha")),
                parse_angle(fields.pop("x", "0")),
                fields.pop("partition", "A"),
                fields.pop("symbols", "01"),
            )
        elif kind == "rotation-ternary":
            variant = RotationTernary(
                parse_angle(fields.pop("alpha")),
                parse_angle(fields.pop("x", "0")),
                parse_angle(fields.pop("cut1")),
                parse_angle(fields.pop("cut2")),
                fields.pop("symbols", "123"),
            )
        else:
            raise InvalidParameter(f"unknown spec type {kind!r}")
    except KeyError as exc:
        raise InvalidParameter(f"{kind} spec is missing {exc.args[0]!r}") from None
    if fields:
        raise InvalidParameter(f"unused spec keys: {sorted(fields)}")
    return WordGeneratorSpec(variant, length, name)
