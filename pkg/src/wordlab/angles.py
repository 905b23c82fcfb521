"""Exactly represented reals for rotation parameters.

An :class:`AngleValue` is a rational linear combination of the basis

    1, sqrt(2), sqrt(3), sqrt(5), tau, tau**2

where tau ~ 1.8393 is the real root of ``x**3 = x**2 + x + 1``.  These six
numbers are linearly independent over the rationals (the multiquadratic field
Q(sqrt2, sqrt3, sqrt5) has degree 8, Q(tau) has degree 3, so they meet only in
Q).  Consequently a value is zero iff all of its coefficients are zero, and
the sign of a nonzero value can always be decided by refining a rational
enclosure until it excludes zero.  Floors, fractional parts and comparisons
are therefore exact and deterministic.

Products are supported inside a single quadratic field or inside Q(tau);
that covers the golden ratio, 1/tau and friends.  Anything that would leave
the basis raises ``ValueError``.

The second half of the module codes circle-rotation orbits in bulk with
64-bit fixed point arithmetic, resolving every point that lies near a
partition boundary with the exact representation.
"""

from __future__ import annotations

import ast
import math
import os
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

from .errors import BoundaryAmbiguity, InvalidParameter

BASIS = ("1", "sqrt2", "sqrt3", "sqrt5", "trib", "trib2")
_RADICANDS = {1: 2, 2: 3, 3: 5}
_TRIB = (4, 5)

DEFAULT_GUARD = Fraction(1, 10**12)


def _precision_digits():
    return max(16, int(os.environ.get("WORDLAB_PRECISION", "64")))


def _start_bits():
    return math.ceil(_precision_digits() * math.log2(10))


@lru_cache(maxsize=64)
def _sqrt_floor(n, bits):
    return math.isqrt(n << (2 * bits))


@lru_cache(maxsize=64)
def _trib_floor(bits):
    # largest t with t / 2**bits <= tau; x**3 - x**2 - x - 1 is increasing on [1.8, 1.9]
    one = 1 << bits
    lo, hi = (18 * one) // 10, (19 * one) // 10 + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**3 - mid * mid * one - mid * one * one - one**3 <= 0:
            lo = mid
        else:
            hi = mid
    return lo


def _basis_enclosure(index, bits):
    scale = 1 << bits
    if index in _RADICANDS:
        s = _sqrt_floor(_RADICANDS[index], bits)
        return Fraction(s, scale), Fraction(s + 1, scale)
    t = _trib_floor(bits)
    if index == 4:
        return Fraction(t, scale), Fraction(t + 1, scale)
    return Fraction(t * t, scale * scale), Fraction((t + 1) ** 2, scale * scale)


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


class AngleValue:
    """Exact real number from the catalog span (see module docstring).

    ``inexact`` marks values that came from floating point input.  They are
    still stored exactly (as the binary value of the float) but orbit coding
    refuses to decide memberships that fall within the guard distance of a
    partition boundary.
    """

    __slots__ = ("_c", "inexact")

    def __init__(self, value=0, *, inexact=False):
        if isinstance(value, AngleValue):
            self._c = value._c
            self.inexact = value.inexact or inexact
            return
        if isinstance(value, str):
            parsed = parse_angle(value)
            self._c = parsed._c
            self.inexact = parsed.inexact or inexact
            return
        if isinstance(value, float):
            value = Fraction(value)
            inexact = True
        self._c = (_as_fraction(value), *([Fraction(0)] * 5))
        self.inexact = inexact

    @classmethod
    def _make(cls, coords, inexact=False):
        obj = cls.__new__(cls)
        obj._c = tuple(Fraction(c) for c in coords)
        obj.inexact = inexact
        return obj

    @classmethod
    def approximate(cls, value: float) -> AngleValue:
        return cls(Fraction(value), inexact=True)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def is_rational(self) -> bool:
        return not any(self._c[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self._c[0]

    def _field(self):
        used = {i for i in range(1, 6) if self._c[i]}
        if not used:
            return None
        if used <= set(_TRIB):
            return "trib"
        if len(used) == 1:
            return used.pop()
        return "mixed"

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, AngleValue):
            return other
        if isinstance(other, float):
            return AngleValue(other)
        if isinstance(other, (int, Rational)):
            return AngleValue(Fraction(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AngleValue._make(
            [a + b for a, b in zip(self._c, other._c)], self.inexact or other.inexact
        )

    __radd__ = __add__

    def __neg__(self):
        return AngleValue._make([-a for a in self._c], self.inexact)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        inexact = self.inexact or other.inexact
        if other.is_rational:
            k = other._c[0]
            return AngleValue._make([a * k for a in self._c], inexact)
        if self.is_rational:
            return other * self
        f1, f2 = self._field(), other._field()
        if f1 != f2 or f1 == "mixed":
            raise ValueError(f"product of {self} and {other} leaves the catalog basis")
        if f1 == "trib":
            c0, c1, c2 = _trib_mul(self._trib(), other._trib())
            return AngleValue._make([c0, 0, 0, 0, c1, c2], inexact)
        i = f1
        a, b = self._c[0], self._c[i]
        c, d = other._c[0], other._c[i]
        out = [Fraction(0)] * 6
        out[0] = a * c + b * d * _RADICANDS[i]
        out[i] = a * d + b * c
        return AngleValue._make(out, inexact)

    __rmul__ = __mul__

    def _trib(self):
        return (self._c[0], self._c[4], self._c[5])

    def inverse(self) -> AngleValue:
        if not any(self._c):
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational:
            return AngleValue._make([1 / self._c[0], 0, 0, 0, 0, 0], self.inexact)
        f = self._field()
        if f == "mixed":
            raise ValueError(f"inverse of {self} leaves the catalog basis")
        if f == "trib":
            inv = _trib_inverse(self._trib())
            return AngleValue._make([inv[0], 0, 0, 0, inv[1], inv[2]], self.inexact)
        a, b, k = self._c[0], self._c[f], _RADICANDS[f]
        norm = a * a - k * b * b
        out = [Fraction(0)] * 6
        out[0] = a / norm
        out[f] = -b / norm
        return AngleValue._make(out, self.inexact)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = AngleValue(1)
        for _ in range(exponent):
            result = result * self
        return result

    # ordering -------------------------------------------------------------

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational bounds ``lo <= self <= hi`` of width about ``2**-bits``."""
        lo = hi = self._c[0]
        for i in range(1, 6):
            c = self._c[i]
            if not c:
                continue
            blo, bhi = _basis_enclosure(i, bits)
            if c > 0:
                lo += c * blo
                hi += c * bhi
            else:
                lo += c * bhi
                hi += c * blo
        return lo, hi

    def sign(self) -> int:
        if self.is_rational:
            c = self._c[0]
            return (c > 0) - (c < 0)
        bits = _start_bits()
        while True:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def floor(self) -> int:
        if self.is_rational:
            return math.floor(self._c[0])
        bits = _start_bits()
        while True:
            lo, hi = self.enclosure(bits)
            fl = math.floor(lo)
            if math.floor(hi) == fl:
                return fl
            bits *= 2

    def frac(self) -> AngleValue:
        return self - self.floor()

    def scaled_floor(self, bits: int) -> int:
        """``floor(self * 2**bits)``, exactly."""
        return (self * (1 << bits)).floor()

    def __float__(self):
        lo, hi = self.enclosure(64)
        return float((lo + hi) / 2)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self.is_rational:
            return hash(self._c[0])
        return hash(self._c)

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() >= 0

    def __str__(self):
        names = ("", "sqrt2", "sqrt3", "sqrt5", "trib", "trib**2")
        parts = []
        for c, name in zip(self._c, names):
            if not c:
                continue
            if not name:
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        text = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return text

    def __repr__(self):
        flag = ", inexact" if self.inexact else ""
        return f"AngleValue({str(self)!r}{flag})"


def _trib_mul(p, q):
    # polynomials in tau of degree <= 2, reduced with tau**3 = tau**2 + tau + 1
    prod = [Fraction(0)] * 5
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            prod[i + j] += a * b
    # tau**4 = 2 tau**2 + 2 tau + 1
    c0 = prod[0] + prod[3] + prod[4]
    c1 = prod[1] + prod[3] + 2 * prod[4]
    c2 = prod[2] + prod[3] + 2 * prod[4]
    return (c0, c1, c2)


def _trib_inverse(p):
    # columns: p * 1, p * tau, p * tau**2
    cols = [_trib_mul(p, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    m = [[cols[j][i] for j in range(3)] + [Fraction(int(i == 0))] for i in range(3)]
    for col in range(3):
        pivot = next(r for r in range(col, 3) if m[r][col])
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(3):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return tuple(m[i][3] for i in range(3))


SQRT2 = AngleValue._make([0, 1, 0, 0, 0, 0])
SQRT3 = AngleValue._make([0, 0, 1, 0, 0, 0])
SQRT5 = AngleValue._make([0, 0, 0, 1, 0, 0])
PHI = AngleValue._make([Fraction(1, 2), 0, 0, Fraction(1, 2), 0, 0])
TRIB = AngleValue._make([0, 0, 0, 0, 1, 0])

_NAMES = {
    "sqrt2": SQRT2,
    "sqrt3": SQRT3,
    "sqrt5": SQRT5,
    "phi": PHI,
    "trib": TRIB,
    "tau": TRIB,
}


def parse_angle(text: str) -> AngleValue:
    """Parse expressions like ``"1/4"``, ``"0.25"``, ``"sqrt(2)-1"``, ``"2-phi"``.

    Decimal literals are read as exact rationals.  Recognised names: sqrt2,
    sqrt3, sqrt5, phi, trib (alias tau); ``sqrt(n)`` accepts 2, 3, 5 and
    perfect squares.
    """
    if isinstance(text, AngleValue):
        return text
    source = text.strip()
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise InvalidParameter(f"cannot parse angle {text!r}") from exc
    return _eval_node(tree.body, source)


def _eval_node(node, source):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        literal = ast.get_source_segment(source, node)
        return AngleValue(Fraction(literal))
    if isinstance(node, ast.Name):
        if node.id not in _NAMES:
            raise InvalidParameter(f"unknown constant {node.id!r}")
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        value = _eval_node(node.operand, source)
        return -value if isinstance(node.op, ast.USub) else value
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, source)
        if isinstance(node.op, ast.Pow):
            exp = _eval_node(node.right, source)
            if not exp.is_rational or exp.as_fraction().denominator != 1:
                raise InvalidParameter("exponents must be integers")
            return left ** int(exp.as_fraction())
        right = _eval_node(node.right, source)
        ops = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__", ast.Div: "__truediv__"}
        name = ops.get(type(node.op))
        if name is None:
            raise InvalidParameter(f"unsupported operator in {source!r}")
        try:
            return getattr(left, name)(right)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParameter(str(exc)) from exc
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id == "sqrt"
        and len(node.args) == 1
    ):
        arg = _eval_node(node.args[0], source)
        if arg.is_rational:
            q = arg.as_fraction()
            if q.denominator == 1 and q.numerator in (2, 3, 5):
                return _NAMES[f"sqrt{q.numerator}"]
            num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
            if q >= 0 and num * num == q.numerator and den * den == q.denominator:
                return AngleValue(Fraction(num, den))
        raise InvalidParameter(f"sqrt of {arg} is outside the catalog")
    raise InvalidParameter(f"unsupported expression in {source!r}")


def as_angle(value) -> AngleValue:
    if isinstance(value, AngleValue):
        return value
    if isinstance(value, str):
        return parse_angle(value)
    return AngleValue(value)


# --------------------------------------------------------------------------
# bulk orbit coding

_FIXED_BITS = 64
_SCALE = 1 << _FIXED_BITS


def code_orbit(alpha, x, cuts, count, start=0, *, right_closed=False, guard=DEFAULT_GUARD):
    """Interval index of ``{x + n*alpha}`` for ``n = start .. start+count-1``.

    ``cuts`` is a strictly increasing sequence in (0, 1) splitting the circle
    into ``len(cuts) + 1`` intervals.  With ``right_closed=False`` these are
    ``[0, c1), [c1, c2), ..., [ck, 1)``; with ``right_closed=True`` they are
    ``(0, c1], ..., (ck, 1]`` and the point 0 belongs to the last interval.

    Returns an ``int8`` array.  Raises :class:`BoundaryAmbiguity` when an
    inexact parameter puts an orbit point within ``guard`` of a boundary.
    """
    alpha, x = as_angle(alpha), as_angle(x)
    cuts = [as_angle(c) for c in cuts]
    inexact = alpha.inexact or x.inexact or any(c.inexact for c in cuts)
    if count <= 0:
        return np.zeros(0, dtype=np.int8)
    stop = start + count
    params = [alpha, x, *cuts]
    if all(p.is_rational for p in params):
        den = math.lcm(*(p.as_fraction().denominator for p in params))
        if den * stop < (1 << 62):
            return _code_rational(alpha, x, cuts, start, stop, den, right_closed, inexact, guard)
    return _code_fixed(alpha, x, cuts, start, stop, right_closed, inexact, guard)


def _code_rational(alpha, x, cuts, start, stop, den, right_closed, inexact, guard):
    a = int(alpha.as_fraction() * den) % den
    x0 = int(x.as_fraction() * den) % den
    c = np.array([int(cut.as_fraction() * den) for cut in cuts], dtype=np.int64)
    n = np.arange(start, stop, dtype=np.int64)
    pos = (x0 + (n % den) * a) % den
    if inexact:
        units = guard * den
        bounds = np.concatenate(([0], c))
        for b in bounds:
            dist = np.minimum((pos - b) % den, (b - pos) % den)
            bad = np.flatnonzero(dist < units)
            if bad.size:
                step = int(n[bad[0]])
                raise BoundaryAmbiguity(
                    f"orbit point at step {step} lies within {guard} of a partition boundary",
                    step=step,
                )
    if right_closed:
        idx = np.searchsorted(c, pos, side="left")
        idx[pos == 0] = len(c)
    else:
        idx = np.searchsorted(c, pos, side="right")
    return idx.astype(np.int8)


def _code_fixed(alpha, x, cuts, start, stop, right_closed, inexact, guard):
    a = np.uint64(alpha.frac().scaled_floor(_FIXED_BITS))
    x0 = np.uint64(x.frac().scaled_floor(_FIXED_BITS))
    c = np.array([cut.scaled_floor(_FIXED_BITS) for cut in cuts], dtype=np.uint64)
    n = np.arange(start, stop, dtype=np.uint64)
    with np.errstate(over="ignore"):
        pos = n * a + x0
    # true scaled point lies in [pos, pos + stop + 1) modulo 2**64
    reach = stop + 2
    if inexact:
        reach = max(reach, math.ceil(guard * _SCALE) + 2)
    reach = np.uint64(min(reach, _SCALE - 1))
    ambiguous = np.zeros(pos.shape, dtype=bool)
    with np.errstate(over="ignore"):
        for b in np.concatenate((np.zeros(1, dtype=np.uint64), c)):
            ambiguous |= (b - pos) <= reach
            ambiguous |= (pos - b) <= reach
    idx = np.searchsorted(c, pos, side="right").astype(np.int8)
    for k in np.flatnonzero(ambiguous):
        step = start + int(k)
        point = (x + step * alpha).frac()
        if inexact:
            for b in [AngleValue(0), AngleValue(1), *cuts]:
                if abs(float(point - b)) < guard or point == b:
                    raise BoundaryAmbiguity(
                        f"orbit point at step {step} lies within {guard} of a partition boundary",
                        step=step,
                    )
        idx[k] = _exact_index(point, cuts, right_closed)
    return idx


def _exact_index(point, cuts, right_closed):
    if right_closed:
        if point.sign() == 0:
            return len(cuts)
        return sum(1 for cut in cuts if cut < point)
    return sum(1 for cut in cuts if cut <= point)
