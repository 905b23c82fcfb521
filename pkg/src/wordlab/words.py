"""Alphabets, finite words, Parikh vectors and word generators.

Infinite words are handled through materialized prefixes: a generator spec
describes an infinite word and ``prefix_length`` says how much of it to
build.  Everything computed downstream is "as observed on this prefix".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .angles import AngleValue, as_angle, code_orbit
from .errors import (
    IndexOutOfRange,
    InvalidParameter,
    LetterNotInAlphabet,
    NonProlongableMorphism,
)


class Alphabet:
    """Ordered set of distinct single-character symbols.

    The order fixes Parikh-vector indexing.
    """

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if not symbols:
            raise InvalidParameter("an alphabet needs at least one symbol")
        for s in symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise InvalidParameter(f"symbols must be single characters, got {s!r}")
        if len(set(symbols)) != len(symbols):
            raise InvalidParameter(f"repeated symbol in alphabet {''.join(symbols)!r}")
        self.symbols = symbols
        self._index = {s: i for i, s in enumerate(symbols)}

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise LetterNotInAlphabet(f"{symbol!r} is not in alphabet {str(self)!r}") from None

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __str__(self):
        return "".join(self.symbols)

    def __repr__(self):
        return f"Alphabet({str(self)!r})"


class FiniteWord:
    """A finite word stored as a read-only array of alphabet indices."""

    __slots__ = ("alphabet", "data")

    def __init__(self, alphabet: Alphabet, data):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        arr = np.array(data, dtype=np.int16 if len(alphabet) > 127 else np.int8).reshape(-1)
        if arr.size and (arr.min() < 0 or arr.max() >= len(alphabet)):
            raise InvalidParameter("letter index outside the alphabet")
        arr.flags.writeable = False
        self.alphabet = alphabet
        self.data = arr

    @classmethod
    def from_string(cls, text: str, alphabet: Union[Alphabet, str, None] = None) -> FiniteWord:
        """Build a word from its symbols; the alphabet defaults to the sorted distinct symbols."""
        if alphabet is None:
            alphabet = Alphabet(sorted(set(text))) if text else Alphabet("0")
        elif not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        if not text:
            return cls(alphabet, [])
        codes = np.frombuffer(text.encode("utf-32-le"), dtype=np.uint32)
        lookup = {ord(s): i for i, s in enumerate(alphabet.symbols)}
        uniq = np.unique(codes)
        missing = [chr(int(u)) for u in uniq if int(u) not in lookup]
        if missing:
            raise LetterNotInAlphabet(f"symbols {missing} not in alphabet {str(alphabet)!r}")
        table = np.zeros(int(uniq.max()) + 1, dtype=np.int16)
        for u in uniq:
            table[int(u)] = lookup[int(u)]
        return cls(alphabet, table[codes])

    @property
    def length(self) -> int:
        return int(self.data.size)

    def __len__(self):
        return int(self.data.size)

    def __str__(self):
        syms = np.array(self.alphabet.symbols)
        return "".join(syms[self.data]) if self.data.size else ""

    def __repr__(self):
        text = str(self)
        if len(text) > 40:
            text = text[:37] + "..."
        return f"FiniteWord({text!r}, alphabet={str(self.alphabet)!r})"

    def __getitem__(self, key):
        if isinstance(key, slice):
            return FiniteWord(self.alphabet, self.data[key])
        return self.alphabet.symbols[int(self.data[key])]

    def __iter__(self):
        syms = self.alphabet.symbols
        return (syms[i] for i in self.data)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteWord)
            and self.alphabet == other.alphabet
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.alphabet, self.data.tobytes()))

    def prefix(self, n: int) -> FiniteWord:
        return FiniteWord(self.alphabet, self.data[:n])

    def counts(self) -> np.ndarray:
        return np.bincount(self.data, minlength=len(self.alphabet)).astype(np.int64)

    def prefix_sums(self) -> np.ndarray:
        """``(len + 1, d)`` array; row ``i`` is the Parikh vector of the length-``i`` prefix."""
        d = len(self.alphabet)
        out = np.zeros((self.length + 1, d), dtype=np.int64)
        if self.length:
            onehot = np.zeros((self.length, d), dtype=np.int64)
            onehot[np.arange(self.length), self.data] = 1
            np.cumsum(onehot, axis=0, out=out[1:])
        return out


@dataclass(frozen=True, order=True)
class ParikhVector:
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def __add__(self, other):
        return ParikhVector(tuple(a + b for a, b in zip(self.counts, _counts(other))))

    def __sub__(self, other):
        return ParikhVector(tuple(a - b for a, b in zip(self.counts, _counts(other))))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __str__(self):
        return "(" + ",".join(map(str, self.counts)) + ")"


def _counts(v):
    return v.counts if isinstance(v, ParikhVector) else tuple(v)


def parikh(u: FiniteWord) -> ParikhVector:
    """Occurrence count of every alphabet symbol, in alphabet order."""
    return ParikhVector(tuple(u.counts().tolist()))


def factor(u: FiniteWord, start: int, end: int) -> FiniteWord:
    """Inclusive slice ``u[start:end]`` in the both-ends-included convention."""
    if not (0 <= start <= end < u.length):
        raise IndexOutOfRange(f"factor [{start}:{end}] outside a word of length {u.length}")
    return FiniteWord(u.alphabet, u.data[start : end + 1])


# --------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class Periodic:
    pattern: str

    def __post_init__(self):
        if not self.pattern:
            raise InvalidParameter("periodic pattern must be nonempty")


@dataclass(frozen=True)
class Substitution:
    """Letter-to-word morphism iterated from ``seed``.

    ``morphism`` is a tuple of ``(letter, image)`` pairs; its order is the
    alphabet order.
    """

    morphism: tuple[tuple[str, str], ...]
    seed: str

    def __post_init__(self):
        rules = self.morphism
        if isinstance(rules, dict):
            rules = tuple(rules.items())
        object.__setattr__(self, "morphism", tuple((str(a), str(b)) for a, b in rules))
        letters = [a for a, _ in self.morphism]
        if len(set(letters)) != len(letters):
            raise InvalidParameter("morphism defines a letter twice")
        for _, image in self.morphism:
            for s in image:
                if s not in letters:
                    raise InvalidParameter(f"image symbol {s!r} has no rule")
        if self.seed not in letters:
            raise InvalidParameter(f"seed {self.seed!r} has no rule")
        image = dict(self.morphism)[self.seed]
        if len(image) < 2 or image[0] != self.seed:
            raise NonProlongableMorphism(
                f"image of seed {self.seed!r} is {image!r}; it must start with the seed "
                "and have length >= 2"
            )

    @property
    def rules(self) -> dict[str, str]:
        return dict(self.morphism)

    @property
    def letters(self) -> str:
        return "".join(a for a, _ in self.morphism)


def _check_unit(value, name):
    v = as_angle(value)
    if v.sign() < 0 or v >= 1:
        raise InvalidParameter(f"{name}={v} must lie in [0, 1)")
    return v


@dataclass(frozen=True)
class RotationBinary:
    """Coding of ``x + n*alpha`` with ``[0, 1-alpha) | [1-alpha, 1)``.

    Partition ``"B"`` uses ``(0, 1-alpha] | (1-alpha, 1]`` instead.  The first
    symbol codes the long interval, the second the interval of length alpha.
    """

    alpha: AngleValue
    x: AngleValue = AngleValue(0)
    partition: str = "A"
    symbols: str = "01"

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_unit(self.alpha, "alpha"))
        object.__setattr__(self, "x", _check_unit(self.x, "x"))
        if self.partition not in ("A", "B"):
            raise InvalidParameter(f"partition must be 'A' or 'B', got {self.partition!r}")
        if len(self.symbols) != 2:
            raise InvalidParameter("binary rotation coding needs two symbols")


@dataclass(frozen=True)
class RotationTernary:
    """Coding of ``x + n*alpha`` with ``[0, cut1) | [cut1, cut2) | [cut2, 1)``."""

    alpha: AngleValue
    x: AngleValue
    cut1: AngleValue
    cut2: AngleValue
    symbols: str = "123"

    def __post_init__(self):
        for name in ("alpha", "x", "cut1", "cut2"):
            object.__setattr__(self, name, _check_unit(getattr(self, name), name))
        if not (0 < self.cut1 < self.cut2):
            raise InvalidParameter("rotation-ternary needs 0 < cut1 < cut2 < 1")
        if len(self.symbols) != 3:
            raise InvalidParameter("ternary rotation coding needs three symbols")


Variant = Union[Periodic, Substitution, RotationBinary, RotationTernary]


@dataclass(frozen=True)
class WordGeneratorSpec:
    variant: Variant
    prefix_length: int
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if int(self.prefix_length) < 1:
            raise InvalidParameter("prefix_length must be positive")
        object.__setattr__(self, "prefix_length", int(self.prefix_length))

    def with_length(self, n: int) -> WordGeneratorSpec:
        return WordGeneratorSpec(self.variant, n, self.name)

    @property
    def alphabet(self) -> Alphabet:
        v = self.variant
        if isinstance(v, Periodic):
            return Alphabet(sorted(set(v.pattern)))
        if isinstance(v, Substitution):
            return Alphabet(v.letters)
        return Alphabet(v.symbols)


def generate(spec: WordGeneratorSpec) -> FiniteWord:
    """Length-``prefix_length`` prefix of the infinite word described by ``spec``."""
    v, n = spec.variant, spec.prefix_length
    alphabet = spec.alphabet
    if isinstance(v, Periodic):
        reps = -(-n // len(v.pattern))
        return FiniteWord.from_string((v.pattern * reps)[:n], alphabet)
    if isinstance(v, Substitution):
        table = str.maketrans(v.rules)
        w = v.seed
        while len(w) < n:
            nxt = w.translate(table)
            if len(nxt) <= len(w):
                raise InvalidParameter("morphism does not grow the seed word")
            w = nxt
        return FiniteWord.from_string(w[:n], alphabet)
    if isinstance(v, RotationBinary):
        cut = 1 - v.alpha
        if v.alpha.sign() == 0:
            codes = code_orbit(0, v.x, [], n, right_closed=v.partition == "B")
        else:
            codes = code_orbit(v.alpha, v.x, [cut], n, right_closed=v.partition == "B")
        return FiniteWord(alphabet, codes)
    if isinstance(v, RotationTernary):
        return FiniteWord(alphabet, code_orbit(v.alpha, v.x, [v.cut1, v.cut2], n))
    raise InvalidParameter(f"unknown generator variant {v!r}")


def apply_morphism(rules: dict[str, str], word: FiniteWord) -> FiniteWord:
    return FiniteWord.from_string(str(word).translate(str.maketrans(rules)), word.alphabet)


def random_word(rng: np.random.Generator, length: int, alphabet: Union[Alphabet, str]) -> FiniteWord:
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    return FiniteWord(alphabet, rng.integers(0, len(alphabet), size=length))


def concat(words: Sequence[FiniteWord]) -> FiniteWord:
    alphabet = words[0].alphabet
    return FiniteWord(alphabet, np.concatenate([w.data for w in words]))
