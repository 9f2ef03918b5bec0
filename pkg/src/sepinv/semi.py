"""Separating invariants for the left-right action ``A_i -> h1 A_i h2^-1`` of SL2 x SL2."""
from __future__ import annotations

from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import IndexOutOfRange, SizeMismatch
from .invariants import Family, InvariantProfile, first_difference
from .linalg import det
from .matrix import Mat2, MatTuple, identity
from .scalar import ZERO, GaussianRational

__all__ = [
    "bracket",
    "xi",
    "block_matrix",
    "semi_invariant_items",
    "eval_H_generators",
    "decide_equiv_H",
    "conj_equiv_via_sigma",
    "sigma",
]


def _check(n: int, *idx: int) -> None:
    for i in idx:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"index {i} outside 1..{n}")


def bracket(A: Sequence[Mat2], i: int, j: int) -> GaussianRational:
    """``Tr(A_i) Tr(A_j) - Tr(A_i A_j)`` (the polarization of det, times 1)."""
    _check(len(A), i, j)
    if not i < j:
        raise IndexOutOfRange("bracket needs i < j")
    X, Y = A[i - 1], A[j - 1]
    return X.trace() * Y.trace() - X.trace_mul(Y)


def block_matrix(X: Mat2, Y: Mat2, Z: Mat2, U: Mat2, scalars=(1, 1, 1, 1)):
    """The 4x4 matrix ``[[s0 X, s1 Y], [s2 Z, s3 U]]`` as rows of scalars."""
    s0, s1, s2, s3 = (GaussianRational.coerce(s) for s in scalars)
    top = [[s0 * X.e11, s0 * X.e12, s1 * Y.e11, s1 * Y.e12],
           [s0 * X.e21, s0 * X.e22, s1 * Y.e21, s1 * Y.e22]]
    bottom = [[s2 * Z.e11, s2 * Z.e12, s3 * U.e11, s3 * U.e12],
              [s2 * Z.e21, s2 * Z.e22, s3 * U.e21, s3 * U.e22]]
    return top + bottom


def xi(A: Sequence[Mat2], q: Sequence[int]) -> GaussianRational:
    """Coefficient of ``s_i s_j s_k s_l`` in ``det [[s_i A_i, s_j A_j], [s_k A_k, s_l A_l]]``.

    The determinant is homogeneous of degree 4 in the formal scalars, so the
    multilinear coefficient is the alternating sum of its values at the 16
    points of {0,1}^4.
    """
    if len(q) != 4:
        raise IndexOutOfRange("xi needs a quadruple")
    i, j, k, l = q
    _check(len(A), i, j, k, l)
    if not i < j < k < l:
        raise IndexOutOfRange("xi needs i < j < k < l")
    X, Y, Z, U = A[i - 1], A[j - 1], A[k - 1], A[l - 1]
    total = ZERO
    for eps in product((0, 1), repeat=4):
        s0, s1, s2, s3 = eps
        if not (s0 or s1) or not (s2 or s3) or not (s0 or s2) or not (s1 or s3):
            continue  # a zero 2-row or 2-column band: determinant vanishes
        value = det(block_matrix(X, Y, Z, U, eps))
        total = total + value if (4 - sum(eps)) % 2 == 0 else total - value
    return total


def semi_invariant_items(A: Sequence[Mat2]) -> Iterator[tuple[str, GaussianRational]]:
    n = len(A)
    for i in range(n):
        yield f"det({i + 1})", A[i].det()
    for i, j in combinations(range(n), 2):
        yield f"br({i + 1},{j + 1})", A[i].trace() * A[j].trace() - A[i].trace_mul(A[j])
    for q in combinations(range(1, n + 1), 4):
        yield f"xi({','.join(map(str, q))})", xi(A, q)


def eval_H_generators(A: Sequence[Mat2]) -> InvariantProfile:
    """dets, brackets (lex), then xi values (lex); ``n + C(n,2) + C(n,4)`` entries."""
    return InvariantProfile(Family.SEMI_INVARIANT, tuple(semi_invariant_items(A)))


def decide_equiv_H(A: Sequence[Mat2], B: Sequence[Mat2]) -> tuple[bool, str | None]:
    if len(A) != len(B):
        raise SizeMismatch(f"tuples have different lengths {len(A)} and {len(B)}")
    witness = first_difference(semi_invariant_items(A), semi_invariant_items(B))
    return witness is None, witness


def sigma(A: Sequence[Mat2]) -> MatTuple:
    """Append the identity as an extra slot."""
    return MatTuple._make(tuple(A) + (identity(),))


def conj_equiv_via_sigma(A: Sequence[Mat2], B: Sequence[Mat2]) -> bool:
    """Conjugation inseparability decided through the left-right invariants of
    ``(A_1, ..., A_n, I)``."""
    if len(A) != len(B):
        raise SizeMismatch(f"tuples have different lengths {len(A)} and {len(B)}")
    return decide_equiv_H(sigma(A), sigma(B))[0]
