"""2x2 matrices over Q(i), n-tuples of them, and the group actions on tuples.

Slot indices in the public API are 1-based (``A[0]`` is still Python
indexing, but labels, words and index triples count from 1).
"""
from __future__ import annotations

import random
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import NotInSL2, NotTraceZero, SingularMatrix, SizeMismatch
from .scalar import ONE, ZERO, GaussianRational

__all__ = [
    "Mat2",
    "MatTuple",
    "identity",
    "zero_matrix",
    "E11",
    "E12",
    "E21",
    "E22",
    "H",
    "W",
    "tracezero",
    "coords",
    "is_trace_zero",
    "require_trace_zero",
    "conj_act",
    "leftright_act",
    "star_act",
    "elementary",
    "permutation",
    "tracefree_part",
    "random_scalar",
    "random_sl2",
    "require_sl2",
    "sl2_from_params",
]

_GR = GaussianRational
_make = GaussianRational._make
_Q0 = mpq(0)


def _mul_add(a, b, c, d) -> GaussianRational:
    """Return ``a*b + c*d`` for GaussianRationals without intermediate objects."""
    ar, ai, br, bi = a._re, a._im, b._re, b._im
    cr, ci, dr, di = c._re, c._im, d._re, d._im
    if not (ai or bi or ci or di):
        return _make(ar * br + cr * dr, _Q0)
    return _make(ar * br - ai * bi + cr * dr - ci * di, ar * bi + ai * br + cr * di + ci * dr)


def _mul_sub(a, b, c, d) -> GaussianRational:
    """Return ``a*b - c*d``."""
    ar, ai, br, bi = a._re, a._im, b._re, b._im
    cr, ci, dr, di = c._re, c._im, d._re, d._im
    if not (ai or bi or ci or di):
        return _make(ar * br - cr * dr, _Q0)
    return _make(ar * br - ai * bi - cr * dr + ci * di, ar * bi + ai * br - cr * di - ci * dr)


class Mat2:
    """An immutable 2x2 matrix ``[[e11, e12], [e21, e22]]`` over Q(i)."""

    __slots__ = ("e11", "e12", "e21", "e22")

    def __init__(self, e11=0, e12=0, e21=0, e22=0):
        c = _GR.coerce
        self.e11 = c(e11)
        self.e12 = c(e12)
        self.e21 = c(e21)
        self.e22 = c(e22)

    @classmethod
    def _make(cls, e11, e12, e21, e22) -> "Mat2":
        m = object.__new__(cls)
        m.e11, m.e12, m.e21, m.e22 = e11, e12, e21, e22
        return m

    @classmethod
    def from_rows(cls, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self) -> tuple[tuple[GaussianRational, GaussianRational], ...]:
        return ((self.e11, self.e12), (self.e21, self.e22))

    def entries(self) -> tuple[GaussianRational, ...]:
        return (self.e11, self.e12, self.e21, self.e22)

    def trace(self) -> GaussianRational:
        return self.e11 + self.e22

    def det(self) -> GaussianRational:
        return _mul_sub(self.e11, self.e22, self.e12, self.e21)

    def trace_mul(self, other: "Mat2") -> GaussianRational:
        """``Tr(self @ other)`` without forming the product."""
        a, b = self, other
        return _mul_add(a.e11, b.e11, a.e12, b.e21) + _mul_add(a.e21, b.e12, a.e22, b.e22)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        a, b = self, other
        return Mat2._make(
            _mul_add(a.e11, b.e11, a.e12, b.e21),
            _mul_add(a.e11, b.e12, a.e12, b.e22),
            _mul_add(a.e21, b.e11, a.e22, b.e21),
            _mul_add(a.e21, b.e12, a.e22, b.e22),
        )

    __mul__ = __matmul__

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2._make(self.e11 + other.e11, self.e12 + other.e12,
                          self.e21 + other.e21, self.e22 + other.e22)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2._make(self.e11 - other.e11, self.e12 - other.e12,
                          self.e21 - other.e21, self.e22 - other.e22)

    def __neg__(self) -> "Mat2":
        return Mat2._make(-self.e11, -self.e12, -self.e21, -self.e22)

    def scale(self, s) -> "Mat2":
        s = _GR.coerce(s)
        return Mat2._make(s * self.e11, s * self.e12, s * self.e21, s * self.e22)

    def adjugate(self) -> "Mat2":
        return Mat2._make(self.e22, -self.e12, -self.e21, self.e11)

    def inverse(self) -> "Mat2":
        d = self.det()
        if not d:
            raise SingularMatrix("matrix is not invertible")
        return self.adjugate().scale(d.inverse())

    def transpose(self) -> "Mat2":
        return Mat2._make(self.e11, self.e21, self.e12, self.e22)

    def is_zero(self) -> bool:
        return not (self.e11 or self.e12 or self.e21 or self.e22)

    def is_upper_triangular(self) -> bool:
        return not self.e21

    def is_lower_triangular(self) -> bool:
        return not self.e12

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return (self.e11 == other.e11 and self.e12 == other.e12
                and self.e21 == other.e21 and self.e22 == other.e22)

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"Mat2([[{self.e11}, {self.e12}], [{self.e21}, {self.e22}]])"

    def to_json(self) -> list:
        return [[self.e11.to_json(), self.e12.to_json()],
                [self.e21.to_json(), self.e22.to_json()]]


def identity() -> Mat2:
    return Mat2._make(ONE, ZERO, ZERO, ONE)


def zero_matrix() -> Mat2:
    return Mat2._make(ZERO, ZERO, ZERO, ZERO)


E11 = Mat2(1, 0, 0, 0)
E12 = Mat2(0, 1, 0, 0)
E21 = Mat2(0, 0, 1, 0)
E22 = Mat2(0, 0, 0, 1)
H = Mat2(1, 0, 0, -1)   # diag(1, -1)
W = Mat2(0, 1, -1, 0)   # swaps upper and lower triangular forms


class MatTuple(tuple):
    """An n-matrix: a nonempty tuple of :class:`Mat2`."""

    def __new__(cls, mats: Iterable = ()):
        items = []
        for m in mats:
            if not isinstance(m, Mat2):
                m = Mat2.from_rows(m)
            items.append(m)
        if not items:
            raise ValueError("an n-matrix needs at least one slot")
        return super().__new__(cls, items)

    @classmethod
    def _make(cls, mats) -> "MatTuple":
        return tuple.__new__(cls, mats)

    @property
    def n(self) -> int:
        return len(self)

    def slot(self, i: int) -> Mat2:
        """1-based slot access."""
        return self[i - 1]

    def traces(self) -> list[GaussianRational]:
        return [m.trace() for m in self]

    def dets(self) -> list[GaussianRational]:
        return [m.det() for m in self]

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self)

    def is_upper_triangular(self) -> bool:
        return all(m.is_upper_triangular() for m in self)

    def __neg__(self) -> "MatTuple":
        return MatTuple._make(-m for m in self)

    def append(self, m: Mat2) -> "MatTuple":
        return MatTuple._make(tuple(self) + (m,))

    def __repr__(self):
        return f"MatTuple({list(self)!r})"

    def to_json(self) -> dict:
        return {"n": len(self), "matrices": [m.to_json() for m in self]}


# -- trace-zero coordinates --------------------------------------------------

def tracezero(b, c, a=0) -> Mat2:
    """The trace-zero matrix ``[[b, c], [a, -b]]``."""
    b = _GR.coerce(b)
    return Mat2._make(b, _GR.coerce(c), _GR.coerce(a), -b)


def is_trace_zero(A: Sequence[Mat2]) -> bool:
    return all(not m.trace() for m in A)


def require_trace_zero(A: Sequence[Mat2]) -> None:
    for i, m in enumerate(A, 1):
        if m.trace():
            raise NotTraceZero(f"slot {i} has trace {m.trace()}")


def coords(A: Sequence[Mat2]):
    """Coordinate rows ``(a, b, c)`` of a trace-zero tuple: a = e21, b = e11, c = e12."""
    require_trace_zero(A)
    return [m.e21 for m in A], [m.e11 for m in A], [m.e12 for m in A]


# -- group actions -----------------------------------------------------------

def require_sl2(g: Mat2) -> Mat2:
    if g.det() != 1:
        raise NotInSL2(f"det(g) = {g.det()} != 1")
    return g


def conj_act(g: Mat2, A: Sequence[Mat2]) -> MatTuple:
    """Simultaneous conjugation ``(g A_1 g^-1, ..., g A_n g^-1)`` for g in SL2."""
    require_sl2(g)
    ginv = g.adjugate()
    return MatTuple._make((g @ m) @ ginv for m in A)


def leftright_act(h1: Mat2, h2: Mat2, A: Sequence[Mat2]) -> MatTuple:
    """The SL2 x SL2 action ``A_i -> h1 A_i h2^-1``."""
    require_sl2(h1)
    require_sl2(h2)
    h2inv = h2.adjugate()
    return MatTuple._make((h1 @ m) @ h2inv for m in A)


def star_act(h, A: Sequence[Mat2]) -> MatTuple:
    """Commuting GL_n action: slot ``k`` of the result is ``sum_l h[k][l] A_l``."""
    from .linalg import det  # local import keeps matrix free of linalg at import time

    n = len(A)
    rows = [[_GR.coerce(x) for x in row] for row in h]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise SizeMismatch(f"h must be {n}x{n}")
    if not det(rows):
        raise SingularMatrix("h is not invertible")
    out = []
    for row in rows:
        acc = [ZERO, ZERO, ZERO, ZERO]
        for coeff, m in zip(row, A):
            if coeff:
                acc = [x + coeff * y for x, y in zip(acc, m.entries())]
        out.append(Mat2._make(*acc))
    return MatTuple._make(out)


def elementary(n: int, i: int, j: int, lam) -> list[list[GaussianRational]]:
    """``I + lam * E_ij`` (1-based): under star_act, slot i becomes A_i + lam*A_j."""
    h = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    h[i - 1][j - 1] = h[i - 1][j - 1] + _GR.coerce(lam)
    return h


def permutation(n: int, perm: Sequence[int]) -> list[list[GaussianRational]]:
    """Matrix whose star action puts old slot ``perm[k]`` into slot ``k+1`` (1-based)."""
    h = [[ZERO] * n for _ in range(n)]
    for k, src in enumerate(perm):
        h[k][src - 1] = ONE
    return h


def tracefree_part(A: Sequence[Mat2]) -> tuple[MatTuple, list[GaussianRational]]:
    """Split each slot as ``A_i = X_i + (Tr(A_i)/2) I`` with X_i trace-zero."""
    half = _GR(mpq(1, 2))
    X, traces = [], []
    for m in A:
        t = m.trace()
        s = t * half
        X.append(Mat2._make(m.e11 - s, m.e12, m.e21, m.e22 - s))
        traces.append(t)
    return MatTuple._make(X), traces


# -- random sampling ---------------------------------------------------------

def random_scalar(rng: random.Random, bound: int = 10, *, gaussian: bool = True,
                  nonzero: bool = False) -> GaussianRational:
    """Random element of Q(i) with numerators in [-bound, bound] and denominators in [1, bound]."""
    while True:
        re = mpq(rng.randint(-bound, bound), rng.randint(1, bound))
        im = mpq(rng.randint(-bound, bound), rng.randint(1, bound)) if gaussian else _Q0
        x = _make(re, im)
        if x or not nonzero:
            return x


def random_sl2(rng: random.Random, bound: int = 10, *, gaussian: bool = True) -> Mat2:
    """Random SL2 element ``E12(u) E21(v) E12(w)``; det is exactly 1 by construction."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    u = random_scalar(rng, bound, gaussian=gaussian)
    v = random_scalar(rng, bound, gaussian=gaussian)
    w = random_scalar(rng, bound, gaussian=gaussian)
    return sl2_from_params(u, v, w)


def sl2_from_params(u, v, w) -> Mat2:
    u, v, w = _GR.coerce(u), _GR.coerce(v), _GR.coerce(w)
    upper = lambda x: Mat2._make(ONE, x, ZERO, ONE)  # noqa: E731
    lower = Mat2._make(ONE, ZERO, v, ONE)
    return upper(u) @ lower @ upper(w)
