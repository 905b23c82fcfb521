"""Abelian induction: recoding a word by the abelian classes of aligned blocks.

``induce(w, l)`` cuts ``w`` into consecutive blocks ``w[n*l : (n+1)*l - 1]``
and replaces each block by its Parikh vector, seen as a letter of a new
alphabet.  The induced alphabet contains exactly the classes realized by
these aligned blocks, named ``a, b, c, ...`` in lexicographic order of the
vectors.  The induction matrix has those vectors as columns, so that
``ab(u) = M . ab(I_l(u))`` for every aligned block sequence ``u``.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .angles import AngleValue
from .complexity import (
    BalanceProfile,
    _distinct_rows,
    ParikhSetShape,
    abelian_counts,
    balance_profile,
    classify_parikh_set,
    parikh_set,
    window_parikh,
)
from .errors import (
    BlockTooLong,
    DimensionMismatch,
    InvalidParameter,
    NoDeviationTwo,
    NotSquare,
    NotTernary,
    NotThreeClasses,
    SingularMatrix,
)
from .frequency import FrequencyVector
from .words import Alphabet, FiniteWord, ParikhVector

# ascii names first; rich class sets (random words, long blocks) spill into
# the Latin-1 and Latin Extended letters
_NAMES = (
    string.ascii_lowercase
    + string.ascii_uppercase
    + string.digits
    + "".join(chr(c) for c in range(0xC0, 0x250) if chr(c).isalpha() and c not in (0xD7, 0xF7))
)


@dataclass(frozen=True)
class InducedAlphabet:
    classes: tuple[ParikhVector, ...]
    block_length: int

    @property
    def symbols(self) -> str:
        return _NAMES[: len(self.classes)]

    def as_alphabet(self) -> Alphabet:
        return Alphabet(self.symbols)

    def __len__(self):
        return len(self.classes)


@dataclass(frozen=True)
class InductionMatrix:
    columns: tuple[ParikhVector, ...]
    block_length: int

    @property
    def array(self) -> np.ndarray:
        return np.array([c.counts for c in self.columns], dtype=np.int64).T

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.columns[0]), len(self.columns))

    def apply(self, counts) -> np.ndarray:
        return self.array @ np.asarray(counts, dtype=np.int64)

    def as_lists(self) -> list[list[int]]:
        return self.array.tolist()


class Induction(NamedTuple):
    word: FiniteWord
    alphabet: InducedAlphabet
    matrix: InductionMatrix


def induce(w: FiniteWord, ell: int) -> Induction:
    """Aligned-block abelian induction ``I_l(w)``; the trailing remainder is dropped."""
    if ell < 1:
        raise InvalidParameter("block length must be >= 1")
    if w.length < ell:
        raise BlockTooLong(f"block length {ell} exceeds word length {w.length}")
    n = w.length // ell
    ps = w.prefix_sums()[: n * ell + 1 : ell]
    blocks = np.diff(ps, axis=0)
    classes, inverse = np.unique(blocks, axis=0, return_inverse=True)
    if len(classes) > len(_NAMES):
        raise InvalidParameter(f"{len(classes)} induced classes exceed the {len(_NAMES)} available names")
    vectors = tuple(ParikhVector(tuple(c)) for c in classes.tolist())
    alphabet = InducedAlphabet(vectors, ell)
    word = FiniteWord(alphabet.as_alphabet(), inverse.reshape(-1))
    return Induction(word, alphabet, InductionMatrix(vectors, ell))


def stride_reduce(w: FiniteWord, k: int) -> FiniteWord:
    """The induced word ``I_k(w)`` alone."""
    return induce(w, k).word


@dataclass(frozen=True)
class BlockIdentityReport:
    holds: bool
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    difference: tuple[int, ...]


def verify_block_identity(w: FiniteWord, ell: int, n: int) -> BlockIdentityReport:
    """Check ``ab(pref_{n l}(w)) == M_l . ab(pref_n(I_l(w)))`` in exact integers."""
    if n * ell > w.length:
        raise BlockTooLong(f"{n} blocks of length {ell} exceed word length {w.length}")
    ind = induce(w, ell)
    lhs = w.prefix(n * ell).counts()
    rhs = ind.matrix.apply(ind.word.prefix(n).counts())
    diff = lhs - rhs
    return BlockIdentityReport(
        not diff.any(), tuple(lhs.tolist()), tuple(rhs.tolist()), tuple(diff.tolist())
    )


# --------------------------------------------------------------------------
# exact linear algebra


def _rref(rows):
    m = [[Fraction(v) for v in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def _kernel_vector(rows) -> Optional[tuple[int, ...]]:
    """One primitive integer vector ``x`` with ``rows . x = 0``, or ``None``."""
    ncols = len(rows[0])
    m, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    f = free[0]
    x = [Fraction(0)] * ncols
    x[f] = Fraction(1)
    for r, c in enumerate(pivots):
        x[c] = -m[r][f]
    den = math.lcm(*(v.denominator for v in x))
    ints = [int(v * den) for v in x]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def _det(rows) -> Fraction:
    m = [[Fraction(v) for v in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                factor = m[i][c] / m[c][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
    return det


@dataclass(frozen=True)
class RankReport:
    square: bool
    rank: int
    invertible: bool
    det: Optional[Fraction]
    left_kernel: Optional[tuple[int, ...]]
    right_kernel: Optional[tuple[int, ...]]

    @property
    def injective(self) -> bool:
        """Full column rank: distinct induced Parikh vectors map to distinct ones."""
        return self.right_kernel is None


def matrix_rank_check(m: InductionMatrix, allow_non_square: bool = False) -> RankReport:
    """Exact rank of ``M`` and, when singular, integer kernel vectors.

    ``left_kernel`` solves ``tM . q = 0``: a vector ``q`` with ``<q|f> = 0``
    for the base frequencies whenever they are ``(1/l) M f'``.
    ``right_kernel`` solves ``M . x = 0``.
    """
    arr = m.array.tolist()
    rows, cols = m.shape
    square = rows == cols
    if not square and not allow_non_square:
        raise NotSquare(f"induction matrix is {rows}x{cols}")
    _, pivots = _rref(arr)
    rank = len(pivots)
    det = _det(arr) if square else None
    transpose = [list(col) for col in zip(*arr)]
    return RankReport(
        square=square,
        rank=rank,
        invertible=square and rank == rows,
        det=det,
        left_kernel=_kernel_vector(transpose),
        right_kernel=_kernel_vector(arr),
    )


def induced_frequency_relation(f_induced: FrequencyVector, m: InductionMatrix, ell: int) -> FrequencyVector:
    """Base-word frequencies ``(1/l) M . f'`` from the induced word's frequencies."""
    arr = m.array
    if f_induced.d != arr.shape[1]:
        raise DimensionMismatch(f"{f_induced.d} induced frequencies for a matrix with {arr.shape[1]} columns")
    use_angles = any(isinstance(v, AngleValue) for v in f_induced.values)
    zero = AngleValue(0) if use_angles else Fraction(0)
    out = []
    for i in range(arr.shape[0]):
        acc = zero
        for j in range(arr.shape[1]):
            if arr[i, j]:
                acc = acc + f_induced.values[j] * int(arr[i, j])
        out.append(acc / ell if use_angles else Fraction(acc) / ell)
    err = f_induced.error * Fraction(int(arr.sum(axis=1).max()), ell)
    return FrequencyVector(tuple(out), f_induced.source, error=err)


@dataclass(frozen=True)
class PreservationReport:
    block_length: int
    rows: tuple[tuple[int, int, int], ...]  # (n, rho of induced word at n, rho of w at n*l)
    holds: bool

    @property
    def equal(self) -> bool:
        return all(a == b for _, a, b in self.rows)


def verify_complexity_preservation(w: FiniteWord, ell: int, n_max: int) -> PreservationReport:
    """Check ``rho_{I_l(w)}(n) <= rho_w(n l)`` for ``n <= n_max`` on the prefix.

    Requires ``M_l`` to have full column rank: then distinct induced classes
    come from distinct base classes.
    """
    ind = induce(w, ell)
    rank = matrix_rank_check(ind.matrix, allow_non_square=True)
    if not rank.injective:
        raise SingularMatrix(f"M_{ell} has rank {rank.rank} < {len(ind.alphabet)} columns")
    n_top = min(n_max, ind.word.length, w.length // ell)
    if n_top < 1:
        raise BlockTooLong("word too short for a single induced letter")
    induced = abelian_counts(ind.word, n_top)
    rows = []
    ps = w.prefix_sums()
    for n in range(1, n_top + 1):
        base = _distinct_rows(window_parikh(w, n * ell, ps), n * ell)
        rows.append((n, int(induced[n - 1]), base))
    return PreservationReport(ell, tuple(rows), all(a <= b for _, a, b in rows))


# --------------------------------------------------------------------------
# search for a balanced induced word


@dataclass(frozen=True)
class BalancedInduction:
    """Outcome of :func:`induce_to_balanced`; balance verdicts hold over the tested range only."""

    block_length: int
    letter: int  # base letter with deviation 2 at block_length
    shape: ParikhSetShape
    induction: Induction
    alpha_symbol: Optional[str]  # induced letter whose class is the middle vector
    balance: BalanceProfile
    balanced_symbols: tuple[str, ...]

    def as_dict(self):
        return {
            "block_length": self.block_length,
            "letter": self.letter,
            "shape": self.shape.as_dict(),
            "classes": [list(c) for c in self.induction.alphabet.classes],
            "alpha": self.alpha_symbol,
            "per_letter_max_deviation": dict(
                zip(self.balance.symbols, self.balance.per_letter_max())
            ),
            "balanced_over_tested_range": list(self.balanced_symbols),
            "n_max": self.balance.n_max,
        }


def find_deviation_two(w: FiniteWord, ell_max: int) -> Optional[tuple[int, int]]:
    """Least ``(l, i)`` with factors ``u, v`` of length ``l`` and ``|u|_i - |v|_i = 2``."""
    ps = w.prefix_sums()
    for ell in range(1, min(ell_max, w.length) + 1):
        win = window_parikh(w, ell, ps)
        dev = win.max(axis=0) - win.min(axis=0)
        hits = np.flatnonzero(dev >= 2)
        if hits.size:
            return ell, int(hits[0])
    return None


def induce_to_balanced(w: FiniteWord, ell_max: int, n_max: int) -> BalancedInduction:
    """Induce at the first length where some letter is 2- but not 1-balanced.

    At that length the three abelian classes are classified; the induced
    letter carrying the middle class ``v + e_i - e_j`` is the one expected to
    be the only unbalanced letter of the induced word.
    """
    if len(w.alphabet) != 3:
        raise NotTernary(f"alphabet {w.alphabet} is not ternary")
    found = find_deviation_two(w, ell_max)
    if found is None:
        raise NoDeviationTwo(f"no letter reaches deviation 2 for lengths <= {ell_max}")
    ell, letter = found
    classes = parikh_set(w, ell)
    if len(classes) != 3:
        raise NotThreeClasses(f"rho({ell}) = {len(classes)}, not 3")
    shape = classify_parikh_set(classes)
    ind = induce(w, ell)
    alpha = None
    middle = shape.middle
    if middle is not None and middle in ind.alphabet.classes:
        alpha = ind.alphabet.symbols[ind.alphabet.classes.index(middle)]
    n_top = min(n_max, ind.word.length)
    bal = balance_profile(ind.word, n_top)
    balanced = tuple(s for i, s in enumerate(bal.symbols) if bal.max_deviation(i) <= 1)
    return BalancedInduction(ell, letter, shape, ind, alpha, bal, balanced)
