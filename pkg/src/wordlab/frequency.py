"""Letter frequencies and integer relations between them.

Finite data can never decide whether frequencies are rationally
independent.  What this module offers is either a certificate (an exact
integer relation with zero residual on exact input) or bounded evidence (no
relation with coefficients up to ``B``).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

import numpy as np

from .angles import AngleValue, as_angle, code_orbit
from .complexity import balance_profile
from .errors import (
    EmptyWord,
    InconsistentSet,
    InvalidParameter,
    NonPrimitiveSubstitution,
    NotLowComplexity,
)
from .words import (
    FiniteWord,
    ParikhVector,
    Periodic,
    RotationBinary,
    RotationTernary,
    Substitution,
    WordGeneratorSpec,
)

Number = Union[Fraction, AngleValue]

PERRON_TARGET = Fraction(1, 10**8)


@dataclass(frozen=True)
class FrequencyVector:
    """One frequency per letter, in alphabet order.

    ``values`` are exact (``Fraction`` or :class:`AngleValue`).  For Perron
    eigenvectors they are rational approximations and ``error`` bounds the
    componentwise distance to the true frequencies; ``error == 0`` means exact.
    """

    values: tuple
    source: str
    symbols: tuple[str, ...] = ()
    prefix_length: Optional[int] = None
    error: Fraction = Fraction(0)

    @property
    def d(self) -> int:
        return len(self.values)

    @property
    def is_exact(self) -> bool:
        return self.error == 0

    def floats(self) -> np.ndarray:
        return np.array([float(v) for v in self.values])

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


def empirical_frequencies(w: FiniteWord) -> FrequencyVector:
    """Letter counts divided by the length, as exact rationals."""
    if w.length == 0:
        raise EmptyWord("frequencies of the empty word are undefined")
    n = w.length
    values = tuple(Fraction(int(c), n) for c in w.counts())
    return FrequencyVector(values, "empirical", w.alphabet.symbols, prefix_length=n)


def incidence_matrix(sub: Substitution) -> np.ndarray:
    """``M[i, j] = |sigma(letter_j)|_{letter_i}`` so that ``ab(sigma(u)) = M ab(u)``."""
    letters = sub.letters
    m = np.zeros((len(letters), len(letters)), dtype=object)
    for j, (_, image) in enumerate(sub.morphism):
        for s in image:
            m[letters.index(s), j] += 1
    return m


def _matmul(a, b):
    return np.array(a.dot(b), dtype=object)


def primitive_power(m: np.ndarray) -> Optional[int]:
    """Least ``p`` with ``m**p`` entrywise positive, or ``None`` if not primitive."""
    d = m.shape[0]
    pattern = (m > 0).astype(np.int64)
    power = pattern.copy()
    for p in range(1, (d - 1) ** 2 + 2):
        if power.all():
            return p
        power = ((power @ pattern) > 0).astype(np.int64)
    return None


def _sqrt_upper(q: Fraction, bits=64) -> Fraction:
    # rational upper bound of sqrt(q)
    scale = 1 << bits
    num = q.numerator * q.denominator * scale * scale
    r = math.isqrt(num)
    if r * r < num:
        r += 1
    return Fraction(r, q.denominator * scale)


def perron_frequencies(m: np.ndarray, target: Fraction = PERRON_TARGET):
    """Normalized Perron eigenvector of a primitive nonnegative integer matrix.

    Exact integer power iteration with ``B = m**p`` positive.  The error bound
    comes from Birkhoff's contraction of the Hilbert projective metric:
    ``kappa/(1-kappa) = (sqrt(theta) - 1)/2`` with ``theta`` the largest cross
    ratio of ``B``, and the sup-norm error of sum-normalized vectors is at most
    ``R**s - 1`` where ``R`` is the ratio spread between successive iterates.

    Returns ``(values, error)`` with ``values`` Fractions summing to one.
    """
    p = primitive_power(m)
    if p is None:
        raise NonPrimitiveSubstitution("incidence matrix is not primitive")
    b = np.identity(m.shape[0], dtype=object)
    for _ in range(p):
        b = _matmul(b, m)
    d = b.shape[0]
    theta = max(
        Fraction(int(b[i, k] * b[j, l]), int(b[j, k] * b[i, l]))
        for i in range(d)
        for j in range(d)
        for k in range(d)
        for l in range(d)
    )
    s = (_sqrt_upper(theta) - 1) / 2
    x = np.ones(d, dtype=object)
    for _ in range(10_000):
        y = _matmul(b, x)
        ratios = [Fraction(int(y[i]), int(x[i])) for i in range(d)]
        spread = max(ratios) / min(ratios)
        if s <= 1:
            err = s * (spread - 1)
        else:
            err = spread ** math.ceil(s) - 1
        x = y
        if err <= target:
            total = sum(int(v) for v in x)
            return tuple(Fraction(int(v), total) for v in x), err
    raise InvalidParameter("power iteration did not reach the requested precision")


def exact_frequencies(spec: WordGeneratorSpec) -> FrequencyVector:
    """Closed-form letter frequencies of the infinite word behind ``spec``."""
    v = spec.variant
    symbols = spec.alphabet.symbols
    if isinstance(v, Periodic):
        n = len(v.pattern)
        values = tuple(Fraction(v.pattern.count(s), n) for s in symbols)
        return FrequencyVector(values, "exact", symbols)
    if isinstance(v, (RotationBinary, RotationTernary)):
        if v.alpha.is_rational:
            # periodic orbit: count one full period exactly
            period = v.alpha.as_fraction().denominator
            if isinstance(v, RotationBinary):
                cuts = [] if v.alpha.sign() == 0 else [1 - v.alpha]
                codes = code_orbit(v.alpha, v.x, cuts, period, right_closed=v.partition == "B")
            else:
                codes = code_orbit(v.alpha, v.x, [v.cut1, v.cut2], period)
            counts = np.bincount(codes, minlength=len(symbols))
            values = tuple(AngleValue(Fraction(int(c), period)) for c in counts)
            return FrequencyVector(values, "exact", symbols)
        if isinstance(v, RotationBinary):
            return FrequencyVector((1 - v.alpha, v.alpha), "exact", symbols)
        values = (v.cut1, v.cut2 - v.cut1, 1 - v.cut2)
        return FrequencyVector(values, "exact", symbols)
    if isinstance(v, Substitution):
        values, err = perron_frequencies(incidence_matrix(v))
        return FrequencyVector(values, "perron", symbols, error=err)
    raise InvalidParameter(f"no exact frequencies for {v!r}")


# --------------------------------------------------------------------------
# integer relations


def _coords(value) -> tuple[Fraction, ...]:
    if isinstance(value, AngleValue):
        return value.coords
    return (Fraction(value), *([Fraction(0)] * 5))


def dot(q: Iterable[int], f: FrequencyVector) -> AngleValue:
    """Exact ``sum(q_i * f_i)``."""
    total = AngleValue(0)
    for c, v in zip(q, f.values):
        if c:
            total = total + as_angle(v) * c
    return total


@dataclass(frozen=True)
class IntegerRelation:
    coefficients: tuple[int, ...]
    residual: Union[Fraction, float, None]
    bound: Optional[int] = None
    tolerance: Optional[Fraction] = None
    certificate: bool = False

    def as_dict(self):
        res = self.residual
        return {
            "coefficients": list(self.coefficients),
            "residual": str(res) if isinstance(res, Fraction) else res,
            "bound": self.bound,
            "tolerance": None if self.tolerance is None else str(self.tolerance),
            "certificate": self.certificate,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def _canonical_mask(rows):
    nz = rows != 0
    any_nz = nz.any(axis=1)
    first = nz.argmax(axis=1)
    lead = rows[np.arange(rows.shape[0]), first]
    return any_nz & (lead > 0)


def _candidate_chunks(d, bound, max_rows=1 << 20):
    """Yield int64 arrays covering every nonzero q in [-B, B]^d with first nonzero > 0."""
    side = 2 * bound + 1
    free = d
    while free > 1 and side**free > max_rows:
        free -= 1
    rest = np.indices((side,) * free).reshape(free, -1).T.astype(np.int64) - bound
    lead_dims = d - free
    for lead in itertools.product(range(-bound, bound + 1), repeat=lead_dims):
        nonzero = [c for c in lead if c]
        if nonzero and nonzero[0] < 0:
            continue
        if lead:
            block = np.hstack([np.broadcast_to(np.array(lead, dtype=np.int64), (rest.shape[0], lead_dims)), rest])
        else:
            block = rest
        if not nonzero:
            block = block[_canonical_mask(block)]
        yield block


def _order_key(q):
    q = tuple(int(c) for c in q)
    first = next(i for i, c in enumerate(q) if c)
    return (max(abs(c) for c in q), first, q)


def _best_of(rows):
    # smallest (max-norm, first-nonzero position, lexicographic)
    return min((tuple(int(c) for c in r) for r in rows), key=_order_key)


def integer_relation_search(f: FrequencyVector, bound: int = 50, tolerance=0) -> Optional[IntegerRelation]:
    """Exhaustive search for ``q`` with ``max|q_i| <= bound`` minimizing ``|q . f|``.

    Vectors are taken up to sign (first nonzero entry positive).  Ties are
    broken by smaller max-norm, then by an earlier first nonzero position,
    then lexicographically.  Returns ``None`` if the minimum exceeds
    ``tolerance``.  On exact input, a returned relation with zero residual
    has ``certificate=True``.
    """
    if bound < 1:
        raise InvalidParameter("bound must be >= 1")
    tolerance = Fraction(tolerance)
    if tolerance < 0:
        raise InvalidParameter("tolerance must be >= 0")
    d = f.d

    if f.is_exact:
        coords = [_coords(v) for v in f.values]
        den = math.lcm(*(c.denominator for row in coords for c in row))
        cmat = np.array([[int(c * den) for c in row] for row in coords], dtype=object)
        cmat = cmat[:, [k for k in range(cmat.shape[1]) if any(cmat[:, k])]]
        big = max((abs(int(v)) for v in cmat.flat), default=0) * bound * d >= 2**62
        cint = cmat if big else cmat.astype(np.int64)
        zeros = []
        for block in _candidate_chunks(d, bound):
            if cint.shape[1] == 0:
                zeros.append(block)
                continue
            prod = block.astype(object).dot(cint) if big else block @ cint
            hit = (prod == 0).all(axis=1)
            if hit.any():
                zeros.append(block[hit])
        if zeros:
            q = _best_of(np.vstack(zeros))
            return IntegerRelation(q, Fraction(0), bound, tolerance, certificate=True)
        if tolerance == 0:
            return None

    fl = f.floats()
    per_chunk = []
    for block in _candidate_chunks(d, bound):
        res = np.abs(block @ fl)
        m = float(res.min())
        per_chunk.append((m, block[res <= m + 1e-15]))
    if not per_chunk:
        return None
    best_res = min(m for m, _ in per_chunk)
    best = _best_of(np.vstack([rows for m, rows in per_chunk if m <= best_res + 1e-15]))
    if f.is_exact:
        exact = dot(best, f)
        residual = abs(exact.as_fraction()) if exact.is_rational else abs(float(exact))
    else:
        residual = float(best_res)
    if residual > tolerance:
        return None
    return IntegerRelation(best, residual, bound, tolerance, certificate=residual == 0 and f.is_exact)


def relation_from_low_abelian(parikh_set: Iterable, ell: int) -> Union[FrequencyVector, IntegerRelation]:
    """Turn a Parikh set of at most two vectors into frequency information.

    One vector ``(i, j, k)``: the frequencies are ``(i/l, j/l, k/l)``.
    Two vectors differing by ``e_a - e_b``: every other letter ``c`` has a
    fixed count ``k`` in all length-``l`` factors, so ``f_c = k/l``.  If
    ``k = 0`` the relation is ``e_c``; otherwise ``f_a + f_b + (1 - l/k) f_c = 0``
    (for more letters, every letter except ``c`` gets coefficient 1), cleared
    to integers.
    """
    vectors = sorted({v if isinstance(v, ParikhVector) else ParikhVector(tuple(v)) for v in parikh_set})
    if not vectors:
        raise InconsistentSet("empty Parikh set")
    if len(vectors) >= 3:
        raise NotLowComplexity(f"{len(vectors)} abelian classes; need at most 2")
    if any(v.total != ell for v in vectors):
        raise InconsistentSet(f"vectors must sum to {ell}")
    d = len(vectors[0])
    if len(vectors) == 1:
        values = tuple(Fraction(c, ell) for c in vectors[0])
        return FrequencyVector(values, "exact")
    diff = (vectors[1] - vectors[0]).counts
    moved = [i for i, c in enumerate(diff) if c]
    if len(moved) != 2 or sorted(diff[i] for i in moved) != [-1, 1]:
        raise InconsistentSet("the two vectors must differ by e_a - e_b")
    fixed = [i for i in range(d) if i not in moved]
    if not fixed:
        raise InconsistentSet("a binary two-class set carries no relation")
    c = fixed[0]
    k = vectors[0][c]
    q = [0] * d
    if k == 0:
        q[c] = 1
    else:
        q = [k] * d
        q[c] = k - ell
        g = math.gcd(*q)
        q = [v // g for v in q]
    # derived from the set alone; no frequencies to evaluate a residual against
    return IntegerRelation(tuple(q), None)


@dataclass(frozen=True)
class HubertReport:
    status: str  # skipped | not_applicable | consistent | inconclusive
    max_deviation: Optional[int]
    relation: Optional[IntegerRelation]
    n_max: int


def hubert_consistency_check(w: FiniteWord, f: FrequencyVector, n_max: int, bound: int = 100) -> HubertReport:
    """A word that is 1-balanced over the tested range should have dependent frequencies.

    Only meaningful for three or more letters.  Finding no relation up to
    ``bound`` is reported as ``inconclusive``: a prefix cannot certify that
    the infinite word is 1-balanced.
    """
    if len(w.alphabet) < 3:
        return HubertReport("skipped", None, None, n_max)
    dev = balance_profile(w, n_max).max_deviation()
    if dev > 1:
        return HubertReport("not_applicable", dev, None, n_max)
    rel = integer_relation_search(f, bound, 0)
    return HubertReport("consistent" if rel is not None else "inconclusive", dev, rel, n_max)
