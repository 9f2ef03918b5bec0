"""Exact arithmetic in the Gaussian rationals Q(i).

A :class:`GaussianRational` is a pair of reduced fractions ``re + im*i``.
The fractions are stored as ``gmpy2.mpq`` values, which are always kept in
lowest terms with a positive denominator, so two equal scalars always have
identical representations.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpq

from .errors import NotASquare, ParseError, ZeroDenominator

__all__ = [
    "GaussianRational",
    "canonicalize",
    "sqrt_in_field",
    "rational_sqrt",
    "parse_fraction",
    "format_fraction",
    "ZERO",
    "ONE",
    "I",
]

_MPQ_ZERO = mpq(0)
_MPQ_ONE = mpq(1)


def _to_mpq(x) -> mpq:
    if type(x) is type(_MPQ_ZERO):
        return x
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return parse_fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """An element ``re + im*i`` of Q(i).

    Instances are immutable; arithmetic returns new objects.  Mixed arithmetic
    with ``int``, ``Fraction`` and ``mpq`` is supported.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im != 0:
                raise TypeError("cannot combine a GaussianRational real part with im")
            self._re, self._im = re._re, re._im
            return
        self._re = _to_mpq(re)
        self._im = _to_mpq(im)

    @classmethod
    def _make(cls, re: mpq, im: mpq) -> "GaussianRational":
        # trusted constructor: both parts already mpq
        self = object.__new__(cls)
        self._re = re
        self._im = im
        return self

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating point complex values are not exact")
        return cls(x)

    # -- component views -------------------------------------------------
    @property
    def re(self) -> mpq:
        return self._re

    @property
    def im(self) -> mpq:
        return self._im

    @property
    def re_num(self) -> int:
        return int(self._re.numerator)

    @property
    def re_den(self) -> int:
        return int(self._re.denominator)

    @property
    def im_num(self) -> int:
        return int(self._im.numerator)

    @property
    def im_den(self) -> int:
        return int(self._im.denominator)

    def parts(self) -> tuple[int, int, int, int]:
        return self.re_num, self.re_den, self.im_num, self.im_den

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self._re, self._im, other._re, other._im
        if not b and not d:
            return GaussianRational._make(a * c, _MPQ_ZERO)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational._make(-self._re, -self._im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self._re, -self._im)

    def norm(self) -> mpq:
        """Field norm ``re**2 + im**2``."""
        return self._re * self._re + self._im * self._im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational._make(self._re / n, -self._im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        if not other._im:
            if not other._re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational._make(self._re / other._re, self._im / other._re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Rational)) or type(other) is type(_MPQ_ZERO):
            return not self._im and self._re == other
        return NotImplemented

    def __hash__(self):
        if not self._im:
            return hash(Fraction(int(self._re.numerator), int(self._re.denominator)))
        return hash((int(self._re.numerator), int(self._re.denominator),
                     int(self._im.numerator), int(self._im.denominator)))

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def is_real(self) -> bool:
        return not self._im

    # -- text ------------------------------------------------------------
    def __repr__(self):
        return f"GaussianRational({format_fraction(self._re)!r}, {format_fraction(self._im)!r})"

    def __str__(self):
        if not self._im:
            return _short(self._re)
        if not self._re:
            return f"{_short(self._im)}i"
        sign = "-" if self._im < 0 else "+"
        return f"{_short(self._re)}{sign}{_short(abs(self._im))}i"

    def to_json(self) -> dict:
        return {"re": format_fraction(self._re), "im": format_fraction(self._im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
            raise ParseError(f"scalar must be an object with keys 're' and 'im', got {obj!r}")
        return cls._make(parse_fraction(obj["re"]), parse_fraction(obj["im"]))


def _short(q: mpq) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_fraction(q) -> str:
    """Render a rational as ``"p/q"``; the denominator is always written."""
    q = _to_mpq(q)
    return f"{q.numerator}/{q.denominator}"


_FRACTION = re.compile(r"([+-]?\d+)(?:/([+-]?\d+))?")


def parse_fraction(text: str) -> mpq:
    """Parse ``"p/q"`` or ``"p"`` into a reduced rational."""
    if not isinstance(text, str):
        raise ParseError(f"fraction must be a string, got {text!r}")
    m = _FRACTION.fullmatch(text.strip())
    if m is None:
        raise ParseError(f"malformed fraction {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDenominator(f"zero denominator in {text!r}")
    return mpq(num, den)


def canonicalize(re_num: int, re_den: int, im_num: int, im_den: int) -> GaussianRational:
    """Build a scalar from raw numerator/denominator integers.

    >>> canonicalize(3, -6, 1, 1).parts()
    (-1, 2, 1, 1)
    """
    if re_den == 0 or im_den == 0:
        raise ZeroDenominator("denominator must be nonzero")
    return GaussianRational._make(mpq(int(re_num), int(re_den)), mpq(int(im_num), int(im_den)))


def rational_sqrt(q: mpq) -> mpq:
    """Nonnegative rational square root of ``q``; raises NotASquare otherwise."""
    q = _to_mpq(q)
    if q < 0:
        raise NotASquare(f"{format_fraction(q)} is negative")
    num, den = q.numerator, q.denominator
    if not (gmpy2.is_square(num) and gmpy2.is_square(den)):
        raise NotASquare(f"{format_fraction(q)} is not a rational square")
    return mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))


def sqrt_in_field(x) -> GaussianRational:
    """Square root of ``x`` inside Q(i).

    Solves ``a**2 - b**2 = p``, ``2ab = q`` for ``x = p + q*i``.  The returned
    root has ``re > 0``, or ``re == 0`` and ``im >= 0``.  Raises
    :class:`NotASquare` when the root would need a quadratic extension.
    """
    x = GaussianRational.coerce(x)
    p, q = x.re, x.im
    if not q:
        if p >= 0:
            return GaussianRational._make(rational_sqrt(p), _MPQ_ZERO)
        return GaussianRational._make(_MPQ_ZERO, rational_sqrt(-p))
    modulus = rational_sqrt(p * p + q * q)
    # q != 0 forces modulus > |p|, so a**2 > 0
    a = rational_sqrt((p + modulus) / 2)
    b = q / (2 * a)
    return GaussianRational._make(a, b)


ZERO = GaussianRational._make(_MPQ_ZERO, _MPQ_ZERO)
ONE = GaussianRational._make(_MPQ_ONE, _MPQ_ZERO)
I = GaussianRational._make(_MPQ_ZERO, _MPQ_ONE)
