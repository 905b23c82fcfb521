"""Decoloring: keep one letter, send every other letter to a neutral symbol."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complexity import abelian_counts, balance_profile
from .errors import InvalidParameter, LetterNotInAlphabet, NotBinary
from .words import Alphabet, FiniteWord


@dataclass(frozen=True)
class DecoloringSpec:
    kept_letter: str
    zero_symbol: str = "0"

    def __post_init__(self):
        if self.kept_letter == self.zero_symbol:
            raise InvalidParameter("zero symbol must differ from the kept letter")
        if len(self.kept_letter) != 1 or len(self.zero_symbol) != 1:
            raise InvalidParameter("symbols must be single characters")


def decolor(w: FiniteWord, spec: DecoloringSpec) -> FiniteWord:
    """Binary word over ``(zero_symbol, kept_letter)`` marking the kept letter's positions."""
    if spec.kept_letter not in w.alphabet:
        raise LetterNotInAlphabet(f"{spec.kept_letter!r} is not in alphabet {w.alphabet}")
    kept = w.alphabet.index(spec.kept_letter)
    return FiniteWord(Alphabet(spec.zero_symbol + spec.kept_letter), (w.data == kept).astype(np.int8))


def verify_decolored_counts(w: FiniteWord, spec: DecoloringSpec, n: int) -> bool:
    """Zeros in ``pref_n(decolor(w))`` equal the other letters' total count in ``pref_n(w)``."""
    if not 0 <= n <= w.length:
        raise InvalidParameter(f"n={n} outside [0, {w.length}]")
    kept = w.alphabet.index(spec.kept_letter)
    b = decolor(w, spec)
    zeros = int(n - b.data[:n].sum())
    counts = w.prefix(n).counts() if n else np.zeros(len(w.alphabet), dtype=np.int64)
    others = int(counts.sum() - counts[kept])
    return zeros == others


def least_period(data: np.ndarray) -> int:
    """Smallest ``p`` with ``data[i] == data[i + p]`` for all valid ``i`` (KMP failure function)."""
    seq = data.tolist()
    n = len(seq)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = fail[k - 1]
        if seq[i] == seq[k]:
            k += 1
        fail[i] = k
    return n - fail[-1] if n else 0


@dataclass(frozen=True)
class SturmianReport:
    n_max: int
    max_deviation: int
    rho_constant_two: bool
    first_rho_mismatch: Optional[int]
    period: Optional[int]  # least period of the prefix when at most half its length
    sturmian_consistent: bool

    @property
    def verdict(self) -> str:
        if self.sturmian_consistent:
            return "Sturmian-consistent over tested range"
        return "not Sturmian-consistent"

    def as_dict(self):
        return {
            "n_max": self.n_max,
            "max_deviation": self.max_deviation,
            "rho_constant_two": self.rho_constant_two,
            "first_rho_mismatch": self.first_rho_mismatch,
            "period": self.period if self.period is not None else "aperiodic over prefix",
            "verdict": self.verdict,
        }


def sturmian_diagnostic(b: FiniteWord, n_max: int) -> SturmianReport:
    if len(b.alphabet) != 2:
        raise NotBinary(f"alphabet {b.alphabet} is not binary")
    n_top = min(n_max, b.length)
    dev = balance_profile(b, n_top).max_deviation()
    rho = abelian_counts(b, n_top)
    bad = np.flatnonzero(rho != 2)
    mismatch = int(bad[0]) + 1 if bad.size else None
    p = least_period(b.data)
    period = p if p <= b.length // 2 else None
    ok = dev <= 1 and mismatch is None and period is None
    return SturmianReport(n_top, dev, mismatch is None, mismatch, period, ok)
