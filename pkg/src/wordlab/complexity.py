"""Subword complexity, abelian complexity and balance of finite words.

All quantities are computed on the given finite word: only windows that
fit entirely inside it are counted, so for a prefix of an infinite word the
results are lower bounds of the infinite word's complexities.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import asdict, dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import InvalidParameter, LengthOutOfRange, MixedLengths
from .words import FiniteWord, ParikhVector


def _check_length(w: FiniteWord, n: int, name="n"):
    if not (1 <= n <= w.length):
        raise LengthOutOfRange(f"{name}={n} outside [1, {w.length}]")


def window_parikh(w: FiniteWord, n: int, prefix_sums=None) -> np.ndarray:
    """Parikh vectors of all ``len(w) - n + 1`` windows of length ``n``, one per row.

    Each row is obtained from the previous one by adding the entering letter
    and removing the leaving one, i.e. as a difference of prefix sums.
    """
    ps = w.prefix_sums() if prefix_sums is None else prefix_sums
    return ps[n:] - ps[:-n]


def _distinct_rows(rows: np.ndarray, n: int) -> int:
    d = rows.shape[1]
    if d == 1:
        return 1 if rows.shape[0] else 0
    # the last coordinate is n minus the others
    if (n + 1) ** (d - 1) < 2**62:
        weights = (n + 1) ** np.arange(d - 1, dtype=np.int64)
        return int(np.unique(rows[:, : d - 1] @ weights).size)
    return int(np.unique(rows, axis=0).shape[0])


def abelian_complexity(w: FiniteWord, n: int) -> int:
    """Number of distinct Parikh vectors among the length-``n`` factors of ``w``."""
    _check_length(w, n)
    return _distinct_rows(window_parikh(w, n), n)


def abelian_counts(w: FiniteWord, n_max: int) -> np.ndarray:
    """``out[n - 1] = abelian_complexity(w, n)`` for ``n = 1 .. n_max``."""
    _check_length(w, n_max, "n_max")
    ps = w.prefix_sums()
    return np.array([_distinct_rows(ps[n:] - ps[:-n], n) for n in range(1, n_max + 1)], dtype=np.int64)


def parikh_set(w: FiniteWord, n: int) -> frozenset[ParikhVector]:
    """``ab(L_n(w))``: the set of Parikh vectors of length-``n`` factors."""
    _check_length(w, n)
    rows = window_parikh(w, n)
    d = rows.shape[1]
    if 1 < d and (n + 1) ** (d - 1) < 2**62:
        keys = rows[:, : d - 1] @ ((n + 1) ** np.arange(d - 1, dtype=np.int64))
        _, first = np.unique(keys, return_index=True)
        rows = rows[first]
    else:
        rows = np.unique(rows, axis=0)
    return frozenset(ParikhVector(tuple(r)) for r in rows.tolist())


# --------------------------------------------------------------------------
# subword complexity via a suffix automaton


def _suffix_automaton(seq):
    """Return ``(length, link)`` lists of the suffix automaton of ``seq``."""
    nxt = [{}]
    link = [-1]
    length = [0]
    last = 0
    for c in seq:
        cur = len(length)
        nxt.append({})
        link.append(0)
        length.append(length[last] + 1)
        p = last
        while p != -1 and c not in nxt[p]:
            nxt[p][c] = cur
            p = link[p]
        if p != -1:
            q = nxt[p][c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = len(length)
                nxt.append(dict(nxt[q]))
                link.append(link[q])
                length.append(length[p] + 1)
                while p != -1 and nxt[p].get(c) == q:
                    nxt[p][c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
    return length, link


def subword_counts(w: FiniteWord, n_max: int) -> np.ndarray:
    """``out[n - 1]`` = number of distinct length-``n`` factors, ``n = 1 .. n_max``.

    Each automaton state stands for the factors whose lengths lie in
    ``(len(link), len]``; counting states per length is exact, no hashing.
    """
    _check_length(w, n_max, "n_max")
    length, link = _suffix_automaton(w.data.tolist())
    length = np.asarray(length, dtype=np.int64)
    link = np.asarray(link, dtype=np.int64)
    lo = length[link[1:]] + 1
    hi = length[1:]
    diff = np.zeros(w.length + 2, dtype=np.int64)
    np.add.at(diff, lo, 1)
    np.add.at(diff, hi + 1, -1)
    return np.cumsum(diff)[1 : n_max + 1]


def subword_complexity(w: FiniteWord, n: int) -> int:
    _check_length(w, n)
    return int(subword_counts(w, n)[n - 1])


# --------------------------------------------------------------------------
# balance


@dataclass(frozen=True)
class BalanceProfile:
    """``deviations[n - 1, i]`` = max minus min count of letter ``i`` over length-``n`` windows."""

    symbols: tuple[str, ...]
    deviations: np.ndarray

    @property
    def n_max(self) -> int:
        return int(self.deviations.shape[0])

    def max_deviation(self, letter: Optional[int] = None) -> int:
        if letter is None:
            return int(self.deviations.max())
        return int(self.deviations[:, letter].max())

    def per_letter_max(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.deviations.max(axis=0))

    def is_balanced(self, c: int, letter: Optional[int] = None) -> bool:
        """C-balanced over the tested range (on one letter, or on all letters)."""
        return self.max_deviation(letter) <= c


def balance_profile(w: FiniteWord, n_max: int) -> BalanceProfile:
    _check_length(w, n_max, "n_max")
    ps = w.prefix_sums()
    devs = np.empty((n_max, len(w.alphabet)), dtype=np.int64)
    for n in range(1, n_max + 1):
        win = ps[n:] - ps[:-n]
        devs[n - 1] = win.max(axis=0) - win.min(axis=0)
    devs.flags.writeable = False
    return BalanceProfile(w.alphabet.symbols, devs)


# --------------------------------------------------------------------------
# profiles


@dataclass(frozen=True)
class ProfileRow:
    n: int
    subword: int
    abelian: int
    balance_dev: tuple[int, ...]


@dataclass(frozen=True)
class ComplexityProfile:
    word_id: str
    n_max: int
    symbols: tuple[str, ...]
    rows: tuple[ProfileRow, ...]

    @property
    def d(self) -> int:
        return len(self.symbols)

    def column(self, name: str) -> list[int]:
        return [getattr(r, name) for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "subword", "abelian", *(f"dev_{s}" for s in self.symbols)])
        for r in self.rows:
            writer.writerow([r.n, r.subword, r.abelian, *r.balance_dev])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = []
        for r in self.rows:
            row = {"n": r.n, "subword": r.subword, "abelian": r.abelian}
            row.update({f"dev_{s}": v for s, v in zip(self.symbols, r.balance_dev)})
            rows.append(row)
        doc = {"word_id": self.word_id, "n_max": self.n_max, "symbols": "".join(self.symbols), "rows": rows}
        return json.dumps(doc, indent=1)

    @classmethod
    def from_csv(cls, text: str, word_id: str = "") -> ComplexityProfile:
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header[:3] != ["n", "subword", "abelian"] or not all(h.startswith("dev_") for h in header[3:]):
            raise InvalidParameter(f"not a profile CSV header: {header}")
        symbols = tuple(h[4:] for h in header[3:])
        rows = tuple(
            ProfileRow(int(rec[0]), int(rec[1]), int(rec[2]), tuple(int(v) for v in rec[3:]))
            for rec in reader
            if rec
        )
        return cls(word_id, len(rows), symbols, rows)


def complexity_profile(w: FiniteWord, n_max: int, word_id: str = "") -> ComplexityProfile:
    sub = subword_counts(w, n_max)
    ab = abelian_counts(w, n_max)
    bal = balance_profile(w, n_max).deviations
    rows = tuple(
        ProfileRow(n, int(sub[n - 1]), int(ab[n - 1]), tuple(int(v) for v in bal[n - 1]))
        for n in range(1, n_max + 1)
    )
    return ComplexityProfile(word_id, n_max, w.alphabet.symbols, rows)


@dataclass(frozen=True)
class Violation:
    n: int
    kind: str  # "lower" or "upper"
    deviation: int
    abelian: int
    bound: int
    advisory: bool


def check_balance_abelian_inequality(profile: ComplexityProfile) -> list[Violation]:
    """Compare abelian counts with ``C + 1 <= rho(n) <= (C + 1)**(d - 1)``.

    The lower bound uses the deviation at the same ``n`` and holds exactly on
    any finite word, because window counts move by at most one per shift.
    The upper bound uses the largest deviation seen over the whole profile;
    its violations are flagged ``advisory``.
    """
    if not profile.rows:
        return []
    c_all = max(max(r.balance_dev) for r in profile.rows)
    upper = (c_all + 1) ** (profile.d - 1)
    out = []
    for r in profile.rows:
        dev = max(r.balance_dev)
        if dev + 1 > r.abelian:
            out.append(Violation(r.n, "lower", dev, r.abelian, dev + 1, False))
        if r.abelian > upper:
            out.append(Violation(r.n, "upper", c_all, r.abelian, upper, True))
    return out


def tijdeman_flag(profile: ComplexityProfile, d: Optional[int] = None) -> Optional[int]:
    """Least ``n`` with ``subword(n) <= (d - 1) * n``, or ``None``.

    A hit means the infinite word is expected to have rationally dependent
    letter frequencies.
    """
    d = profile.d if d is None else d
    for r in profile.rows:
        if r.subword <= (d - 1) * r.n:
            return r.n
    return None


# --------------------------------------------------------------------------
# shapes of three-element Parikh sets

SHAPES = ("Singleton", "Pair", "Chain", "LShape", "Other")


@dataclass(frozen=True)
class ParikhSetShape:
    """Result of :func:`classify_parikh_set`.

    ``permutation`` starts with the letters ``i, j[, k]`` of the matched
    template and continues with the remaining letters in increasing order.
    The templates, with ``v = base`` and unit vectors ``e``:

    - Pair:   ``{v, v + e_i - e_j}``
    - Chain:  ``{v, v + e_i - e_j, v + 2e_i - 2e_j}``
    - LShape: ``{v, v + e_i - e_j, v + 2e_i - e_j - e_k}``
    """

    kind: str
    base: Optional[ParikhVector]
    permutation: tuple[int, ...]

    @property
    def middle(self) -> Optional[ParikhVector]:
        """``v + e_i - e_j``; for an LShape this is the vector ``(r+1, s-1, t)``."""
        if self.kind not in ("Pair", "Chain", "LShape"):
            return None
        return self.base + _unit(len(self.base), self.permutation[0], self.permutation[1])

    def as_dict(self):
        return {
            "kind": self.kind,
            "base": None if self.base is None else list(self.base),
            "permutation": list(self.permutation),
        }


def _unit(d, plus, minus, scale=1):
    v = [0] * d
    v[plus] += scale
    v[minus] -= scale
    return ParikhVector(tuple(v))


def _complete(d, head):
    return tuple(head) + tuple(i for i in range(d) if i not in head)


def classify_parikh_set(vectors: Iterable) -> ParikhSetShape:
    """Match a set of equal-length Parikh vectors against the templates above.

    Letter permutations are tried in lexicographic order and base vectors in
    increasing order; the first match of the first matching template (in the
    order Singleton, Pair, Chain, LShape) wins.
    """
    s = frozenset(v if isinstance(v, ParikhVector) else ParikhVector(tuple(v)) for v in vectors)
    if not s:
        raise InvalidParameter("cannot classify an empty set")
    dims = {len(v) for v in s}
    if len(dims) != 1:
        raise InvalidParameter("vectors have different dimensions")
    d = dims.pop()
    if len({v.total for v in s}) != 1:
        raise MixedLengths("vectors come from factors of different lengths")
    ordered = sorted(s)
    if len(s) == 1:
        return ParikhSetShape("Singleton", ordered[0], tuple(range(d)))
    if len(s) == 2:
        for i, j in itertools.permutations(range(d), 2):
            for v in ordered:
                if v + _unit(d, i, j) in s:
                    return ParikhSetShape("Pair", v, _complete(d, (i, j)))
    if len(s) == 3:
        for i, j in itertools.permutations(range(d), 2):
            for v in ordered:
                if v + _unit(d, i, j) in s and v + _unit(d, i, j, 2) in s:
                    return ParikhSetShape("Chain", v, _complete(d, (i, j)))
        for i, j, k in itertools.permutations(range(d), 3):
            for v in ordered:
                corner = list(v.counts)
                corner[i] += 2
                corner[j] -= 1
                corner[k] -= 1
                if v + _unit(d, i, j) in s and ParikhVector(tuple(corner)) in s:
                    return ParikhSetShape("LShape", v, _complete(d, (i, j, k)))
    return ParikhSetShape("Other", None, tuple(range(d)))
