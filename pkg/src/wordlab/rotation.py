"""Circle and torus rotations with exact parameters, and the conflict finder.

A torus rotation ``(z, t) -> (z + alpha, t + beta)`` drives two binary
codings at once.  A *conflict* is a step where both coordinates fall in their
kept-letter interval ``[1 - alpha, 1) x [1 - beta, 1)``: merging the two
codings into one ternary word then demands two letters at the same position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .angles import DEFAULT_GUARD, AngleValue, as_angle, code_orbit
from .errors import DegenerateBox, InvalidParameter, LengthMismatch, NotBinary
from .frequency import FrequencyVector
from .words import Alphabet, FiniteWord, RotationBinary

_CHUNK = 1 << 18


def _unit(value) -> AngleValue:
    return as_angle(value).frac()


@dataclass(frozen=True)
class CircleRotation:
    alpha: AngleValue
    x: AngleValue = AngleValue(0)
    partition: str = "A"

    def __post_init__(self):
        object.__setattr__(self, "alpha", _unit(self.alpha))
        object.__setattr__(self, "x", _unit(self.x))
        if self.partition not in ("A", "B"):
            raise InvalidParameter(f"partition must be 'A' or 'B', got {self.partition!r}")

    def coding(self, symbols: str = "01") -> RotationBinary:
        return RotationBinary(self.alpha, self.x, self.partition, symbols)


@dataclass(frozen=True)
class TorusRotation:
    alpha: AngleValue
    beta: AngleValue
    x: AngleValue = AngleValue(0)
    y: AngleValue = AngleValue(0)

    def __post_init__(self):
        for name in ("alpha", "beta", "x", "y"):
            object.__setattr__(self, name, _unit(getattr(self, name)))

    @property
    def circles(self) -> tuple[CircleRotation, CircleRotation]:
        return CircleRotation(self.alpha, self.x), CircleRotation(self.beta, self.y)

    def period(self) -> Optional[int]:
        """Exact orbit period when both angles are rational, else ``None``."""
        if not (self.alpha.is_rational and self.beta.is_rational):
            return None
        return math.lcm(self.alpha.as_fraction().denominator, self.beta.as_fraction().denominator)


def angle_from_frequencies(f: FrequencyVector) -> AngleValue:
    """The kept-letter frequency of a binary coding, read as its rotation angle."""
    if f.d != 2:
        raise NotBinary(f"expected two frequencies, got {f.d}")
    a, b = (as_angle(v) for v in f.values)
    total = a + b
    if not total.inexact and total != 1:
        raise InvalidParameter(f"frequencies sum to {total}, not 1")
    return b


def orbit_point(r: Union[CircleRotation, TorusRotation], n: int):
    """``{x + n alpha}`` exactly (a pair for a torus rotation)."""
    if n < 0:
        raise InvalidParameter("step must be >= 0")
    if isinstance(r, TorusRotation):
        return (r.x + r.alpha * n).frac(), (r.y + r.beta * n).frac()
    return (r.x + r.alpha * n).frac()


def _check_box(t: TorusRotation):
    if t.alpha == 0 or t.beta == 0:
        raise DegenerateBox("the kept-letter box is empty when an angle is 0")


def _box_hits(t: TorusRotation, start: int, count: int, guard) -> np.ndarray:
    a = code_orbit(t.alpha, t.x, [1 - t.alpha], count, start, guard=guard)
    b = code_orbit(t.beta, t.y, [1 - t.beta], count, start, guard=guard)
    return (a == 1) & (b == 1)


def find_conflict(t: TorusRotation, n_max: int, *, guard=DEFAULT_GUARD) -> Optional[int]:
    """Least ``n`` in ``[0, n_max]`` whose orbit point lies in the kept-letter box.

    For rational angles the scan stops after one full period, so ``None``
    then means no conflict ever occurs.
    """
    if n_max < 0:
        raise InvalidParameter("n_max must be >= 0")
    _check_box(t)
    stop = n_max + 1
    period = t.period()
    if period is not None:
        stop = min(stop, period)
    for start in range(0, stop, _CHUNK):
        hits = np.flatnonzero(_box_hits(t, start, min(_CHUNK, stop - start), guard))
        if hits.size:
            return start + int(hits[0])
    return None


@dataclass(frozen=True)
class HitStatistics:
    iterations: int
    hits: int
    box_area: Union[AngleValue, float]  # float when the product leaves the exact basis
    limit: Optional[Fraction]  # exact limiting hit fraction for rational angles

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.hits, self.iterations)

    @property
    def gap(self) -> float:
        return abs(float(self.fraction) - float(self.box_area))

    def as_dict(self):
        return {
            "iterations": self.iterations,
            "hits": self.hits,
            "hit_fraction": float(self.fraction),
            "box_area": float(self.box_area),
            "gap": self.gap,
            "limit": None if self.limit is None else str(self.limit),
        }


def _count_hits(t, n, guard):
    return sum(
        int(_box_hits(t, s, min(_CHUNK, n - s), guard).sum()) for s in range(0, n, _CHUNK)
    )


def equidistribution_check(t: TorusRotation, iterations: int, *, guard=DEFAULT_GUARD) -> HitStatistics:
    """Fraction of ``n < N`` with the orbit in the kept-letter box, against its area."""
    if iterations < 1:
        raise InvalidParameter("iterations must be >= 1")
    _check_box(t)
    hits = _count_hits(t, iterations, guard)
    limit = None
    period = t.period()
    if period is not None and period <= 1 << 24:
        limit = Fraction(_count_hits(t, period, guard), period)
    try:
        area = t.alpha * t.beta
    except ValueError:
        area = float(t.alpha) * float(t.beta)
    return HitStatistics(iterations, hits, area, limit)


@dataclass(frozen=True)
class MergeResult:
    merged: Optional[FiniteWord]
    conflicts: tuple[int, ...]


def _flags(w: FiniteWord, name: str) -> np.ndarray:
    if len(w.alphabet) > 2:
        raise NotBinary(f"{name} has alphabet {w.alphabet}")
    flagged = [i for i, s in enumerate(w.alphabet.symbols) if s != "0"]
    if len(flagged) > 1:
        raise NotBinary(f"{name} must use '0' as its neutral symbol")
    if not flagged:
        return np.zeros(w.length, dtype=bool)
    return w.data == flagged[0]


def merge_and_detect(w2: FiniteWord, w3: FiniteWord) -> MergeResult:
    """Rebuild a ternary word from two decolored codings.

    Position ``n`` gets ``2`` when only ``w2`` flags it, ``3`` when only
    ``w3`` does, and ``1`` when neither does.  Positions flagged by both are
    conflicts; the merged word is only produced when there are none.
    """
    if w2.length != w3.length:
        raise LengthMismatch(f"lengths {w2.length} and {w3.length} differ")
    f2, f3 = _flags(w2, "w2"), _flags(w3, "w3")
    both = np.flatnonzero(f2 & f3)
    if both.size:
        return MergeResult(None, tuple(int(i) for i in both))
    data = np.zeros(w2.length, dtype=np.int8)
    data[f2] = 1
    data[f3] = 2
    return MergeResult(FiniteWord(Alphabet("123"), data), ())
