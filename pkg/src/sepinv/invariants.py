"""Trace invariants of 2x2 matrix tuples under simultaneous conjugation."""
from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from gmpy2 import lcm, mpq, mpz

from .errors import EmptyWord, IndexOutOfRange
from .linalg import det3
from .matrix import E12, E21, H, Mat2, MatTuple, coords, require_trace_zero
from .scalar import GaussianRational

_mk = GaussianRational._make
_Q0 = mpq(0)

__all__ = [
    "Family",
    "InvariantProfile",
    "MINOR_SIGN",
    "GRAM_CONSTANT",
    "word_trace",
    "triple_trace",
    "triple_traces",
    "pair_trace_items",
    "full_generator_items",
    "eval_full_generators",
    "tracezero_generator_items",
    "eval_tracezero_generators",
    "triple_trace_minor",
    "gram_relation_check",
    "calibrate_constants",
    "cardinality_and_dimension",
    "first_difference",
]


class Family(str, enum.Enum):
    FULL = "FullSn"
    TRACE_ZERO = "TraceZeroEn"
    REDUCED = "ReducedSPrime"
    SEMI_INVARIANT = "SemiInvariantH"


@dataclass(frozen=True)
class InvariantProfile:
    """Values of an invariant family on one tuple, in canonical label order.

    Two tuples are inseparable by the family exactly when their profiles are
    equal.
    """

    family: Family
    items: tuple[tuple[str, GaussianRational], ...]

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.items]

    @property
    def values(self) -> list[GaussianRational]:
        return [value for _, value in self.items]

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, label: str) -> GaussianRational:
        for lab, value in self.items:
            if lab == label:
                return value
        raise KeyError(label)

    def as_dict(self) -> dict[str, GaussianRational]:
        return dict(self.items)

    def to_json(self) -> list[dict]:
        return [{"label": label, "value": value.to_json()} for label, value in self.items]


def first_difference(left: Iterator, right: Iterator) -> str | None:
    """Compare two label/value streams slot by slot; return the first differing label."""
    for (label, x), (_, y) in zip(left, right):
        if x != y:
            return label
    return None


def _label(prefix: str, idx: Sequence[int]) -> str:
    return f"{prefix}({','.join(str(i) for i in idx)})"


def _check_index(n: int, *idx: int) -> None:
    for i in idx:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"index {i} outside 1..{n}")


# -- word traces ---------------------------------------------------------------

def word_trace(A: Sequence[Mat2], word: Sequence[int]) -> GaussianRational:
    """``Tr(A_w1 A_w2 ... A_wk)`` for a nonempty word of 1-based slot indices."""
    if not word:
        raise EmptyWord("word must be nonempty")
    _check_index(len(A), *word)
    if len(word) == 1:
        return A[word[0] - 1].trace()
    prod = A[word[0] - 1]
    for w in word[1:-1]:
        prod = prod @ A[w - 1]
    return prod.trace_mul(A[word[-1] - 1])


def triple_trace(A: Sequence[Mat2], i: int, j: int, k: int) -> GaussianRational:
    return (A[i - 1] @ A[j - 1]).trace_mul(A[k - 1])


# -- generating sets -------------------------------------------------------------

@lru_cache(maxsize=None)
def _labels(kind: str, n: int) -> tuple[str, ...]:
    if kind == "tr" or kind == "det":
        return tuple(_label(kind, (i,)) for i in range(1, n + 1))
    if kind == "pairs":   # i < j
        return tuple(_label("t", ij) for ij in combinations(range(1, n + 1), 2))
    if kind == "pairs_diag":   # i <= j
        return tuple(_label("t", (i, j)) for i in range(1, n + 1) for j in range(i, n + 1))
    if kind == "triples":
        return tuple(_label("t", ijk) for ijk in combinations(range(1, n + 1), 3))
    raise ValueError(kind)


def full_generator_items(A: Sequence[Mat2]) -> Iterator[tuple[str, GaussianRational]]:
    """Lazily yield the full generating set: traces, dets, pair traces, triple traces."""
    n = len(A)
    yield from zip(_labels("tr", n), (m.trace() for m in A))
    yield from zip(_labels("det", n), (m.det() for m in A))
    real, comps, D = _components(A)
    tm, den = (_trace_mul_real if real else _trace_mul_complex), D * D
    yield from zip(_labels("pairs", n),
                   (tm(comps[i], comps[j], den) for i, j in combinations(range(n), 2)))
    yield from zip(_labels("triples", n), _triple_values(real, comps, D))


def eval_full_generators(A: Sequence[Mat2]) -> InvariantProfile:
    """Evaluate the minimal generating set of the conjugation invariants.

    Size is ``(n**3 + 11n) / 6``.
    """
    return InvariantProfile(Family.FULL, tuple(full_generator_items(A)))


def pair_trace_items(A: Sequence[Mat2]) -> Iterator[tuple[str, GaussianRational]]:
    """``t(i,j)`` for i <= j."""
    n = len(A)
    real, comps, D = _components(A)
    tm, den = (_trace_mul_real if real else _trace_mul_complex), D * D
    values = (tm(comps[i], comps[j], den) for i in range(n) for j in range(i, n))
    return zip(_labels("pairs_diag", n), values)


def tracezero_generator_items(A: Sequence[Mat2]) -> Iterator[tuple[str, GaussianRational]]:
    yield from pair_trace_items(A)
    real, comps, D = _components(A)
    yield from zip(_labels("triples", len(A)), _triple_values(real, comps, D))


def triple_traces(A: Sequence[Mat2]) -> Iterator[tuple[tuple[int, int, int], GaussianRational]]:
    """``((i, j, k), Tr(A_i A_j A_k))`` for all i < j < k, in lex order."""
    real, comps, D = _components(A)
    return zip(combinations(range(1, len(A) + 1), 3), _triple_values(real, comps, D))


def _triple_values(real, comps, D):
    n = len(comps)
    mul = _mul_real if real else _mul_complex
    tm, den = (_trace_mul_real if real else _trace_mul_complex), D * D * D
    for i in range(n - 2):
        x = comps[i]
        for j in range(i + 1, n - 1):
            p = mul(x, comps[j])
            for k in range(j + 1, n):
                yield tm(p, comps[k], den)


def eval_tracezero_generators(A: Sequence[Mat2]) -> InvariantProfile:
    """Generators for trace-zero tuples: ``t(i,j)`` for i <= j and ``t(i,j,k)`` for i < j < k."""
    require_trace_zero(A)
    return InvariantProfile(Family.TRACE_ZERO, tuple(tracezero_generator_items(A)))


# Hot loops are fraction-free: every component of the tuple is multiplied by the
# lcm D of all denominators, the products are formed in mpz, and each output is
# divided by D**2 or D**3 once.  Components are (e11, e12, e21, e22) when the
# whole tuple is real, else (re11, im11, re12, im12, ...).  word_trace stays on
# the Mat2 path and serves as the oracle for these loops.

def _components(A: Sequence[Mat2]):
    entries = [e for m in A for e in (m.e11, m.e12, m.e21, m.e22)]
    real = not any(e._im for e in entries)
    parts = [e._re for e in entries] if real else [p for e in entries for p in (e._re, e._im)]
    D = mpz(1)
    for q in parts:
        den = q.denominator
        if den != 1:
            D = lcm(D, den)
    ints = [(q * D).numerator for q in parts] if D != 1 else [q.numerator for q in parts]
    w = 4 if real else 8
    comps = [tuple(ints[p:p + w]) for p in range(0, len(ints), w)]
    return real, comps, D


def _mul_real(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _trace_mul_real(x, y, den):
    return _mk(mpq(x[0] * y[0] + x[1] * y[2] + x[2] * y[1] + x[3] * y[3], den), _Q0)


def _mul_complex(x, y):
    ar, ai, br, bi, cr, ci, dr, di = x
    er, ei, fr, fi, gr, gi, hr, hi = y
    return (ar * er - ai * ei + br * gr - bi * gi, ar * ei + ai * er + br * gi + bi * gr,
            ar * fr - ai * fi + br * hr - bi * hi, ar * fi + ai * fr + br * hi + bi * hr,
            cr * er - ci * ei + dr * gr - di * gi, cr * ei + ci * er + dr * gi + di * gr,
            cr * fr - ci * fi + dr * hr - di * hi, cr * fi + ci * fr + dr * hi + di * hr)


def _trace_mul_complex(x, y, den):
    # Tr(XY) = x11 y11 + x12 y21 + x21 y12 + x22 y22
    ar, ai, br, bi, cr, ci, dr, di = x
    er, ei, fr, fi, gr, gi, hr, hi = y
    return _mk(mpq(ar * er - ai * ei + br * gr - bi * gi + cr * fr - ci * fi + dr * hr - di * hi, den),
               mpq(ar * ei + ai * er + br * gi + bi * gr + cr * fi + ci * fr + dr * hi + di * hr, den))


# -- minor identity and quadratic relation ----------------------------------------

# Sign s with Tr(A_i A_j A_k) = s * det[c; b; a] on columns i, j, k.  Fixed by the
# word_trace oracle in calibrate_constants(); the test suite re-derives it.
MINOR_SIGN = -1

# Constant c with t_ijk * t_pqr = c * det[t_xy] (x in ijk, y in pqr).
GRAM_CONSTANT = GaussianRational(mpq(-1, 2))


def _signed_minor(a, b, c, i, j, k) -> GaussianRational:
    d = det3(((c[i], c[j], c[k]), (b[i], b[j], b[k]), (a[i], a[j], a[k])))
    return d if MINOR_SIGN > 0 else -d


def triple_trace_minor(A: Sequence[Mat2], i: int, j: int, k: int) -> GaussianRational:
    """Triple trace of a trace-zero tuple computed as a signed 3x3 coordinate minor.

    Any index order is accepted; permuting ``(i, j, k)`` scales the result by
    the sign of the permutation and repeated indices give 0.
    """
    _check_index(len(A), i, j, k)
    a, b, c = coords(A)
    return _signed_minor(a, b, c, i - 1, j - 1, k - 1)


def gram_relation_check(A: Sequence[Mat2], ijk: Sequence[int], pqr: Sequence[int]):
    """Return ``(t_ijk * t_pqr, det of pair traces, GRAM_CONSTANT)``.

    Raises AssertionError if ``lhs != GRAM_CONSTANT * det``.
    """
    require_trace_zero(A)
    n = len(A)
    _check_index(n, *ijk, *pqr)
    lhs = triple_trace(A, *ijk) * triple_trace(A, *pqr)
    gram = [[A[x - 1].trace_mul(A[y - 1]) for y in pqr] for x in ijk]
    rhs = det3(gram)
    if lhs != GRAM_CONSTANT * rhs:
        raise AssertionError(f"relation fails: {lhs} != {GRAM_CONSTANT} * {rhs}")
    return lhs, rhs, GRAM_CONSTANT


def calibrate_constants() -> tuple[int, GaussianRational]:
    """Re-derive ``(MINOR_SIGN, GRAM_CONSTANT)`` from word traces on a reference tuple."""
    ref = MatTuple([H, E12, E21])
    a, b, c = coords(ref)
    minor = det3(((c[0], c[1], c[2]), (b[0], b[1], b[2]), (a[0], a[1], a[2])))
    t = word_trace(ref, (1, 2, 3))
    if not minor or not t:
        raise AssertionError("reference tuple is degenerate")
    sign = 1 if t == minor else -1
    if t != sign * minor:
        raise AssertionError("triple trace is not a signed minor")
    gram = det3([[ref[x].trace_mul(ref[y]) for y in range(3)] for x in range(3)])
    return sign, (t * t) / gram


# -- counts ----------------------------------------------------------------------

def cardinality_and_dimension(n: int) -> dict[str, int]:
    """Generating-set sizes and invariant-ring dimensions for n-tuples.

    ``S_prime`` is the size of the reduced separating set; for n <= 2 the full
    set is used, so it equals ``S_n``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    s_n = (n ** 3 + 11 * n) // 6
    s_prime = (n * n + 9 * n - 16) // 2 if n >= 3 else s_n
    dim_conj = 4 * n - 3 if n >= 2 else 1
    dim_tracezero = 3 * n - 3 if n >= 2 else 1
    h_set = n + comb(n, 2) + comb(n, 4)
    dim_h = 4 * n - 6 if n >= 3 else (3 if n == 2 else 1)
    return {
        "S_n": s_n,
        "S_prime": s_prime,
        "dim_conj": dim_conj,
        "dim_tracezero": dim_tracezero,
        "E_n": n * (n + 1) // 2 + comb(n, 3),
        "H_set": h_set,
        "dim_H": dim_h,
    }
