"""Orbit geometry of trace-zero tuples: triangularization, closed orbits, and
the two components of the set of inseparable pairs.

Pairs of upper-triangular trace-zero tuples with equal diagonals (``b == b'``)
form the subspace C, with opposite diagonals C', and with zero diagonals C0.
For a pair in C (or C') the 3 x n matrix with rows ``b; c; c'`` has rank at
most 2 exactly when the pair lies in the closure of the graph of the action.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

from .errors import (
    FieldExtensionRequired,
    InconsistentData,
    NotASquare,
    NotInCFamily,
    NotTriangularizable,
    NotUpperTriangular,
    SizeMismatch,
)
from .invariants import first_difference, tracezero_generator_items, triple_traces
from .linalg import det3, rank
from .matrix import Mat2, MatTuple, conj_act, identity, require_trace_zero, tracefree_part
from .scalar import ONE, ZERO, GaussianRational, sqrt_in_field

__all__ = [
    "FormClass",
    "PairClassification",
    "PairForm",
    "MMatrix",
    "ClassificationReport",
    "commutator_det",
    "is_triangularizable",
    "common_eigenlines",
    "triangularizer_from_line",
    "triangularize",
    "has_closed_orbit",
    "pair_form",
    "m_matrix_and_rank",
    "classify_pair",
    "classify_pair_detailed",
    "torus_graph_condition",
]


class FormClass(str, enum.Enum):
    IN_C = "InC"
    IN_C_PRIME = "InCPrime"
    IN_C0 = "InC0"
    NOT_IN_C = "NotInC"


class PairClassification(str, enum.Enum):
    NOT_EQUIVALENT = "NotEquivalent"
    GRAPH_CLOSURE = "GraphClosure"
    EXTRA_COMPONENT_ONLY = "ExtraComponentOnly"
    BOTH = "Both"


def commutator_det(X: Mat2, Y: Mat2) -> GaussianRational:
    """``det(XY - YX)``."""
    return (X @ Y - Y @ X).det()


def is_triangularizable(A: Sequence[Mat2]) -> bool:
    """Simultaneous upper-triangularizability over an algebraically closed field.

    A tuple is triangularizable iff ``Tr(A_i A_j A_k) == Tr(A_k A_j A_i)`` for
    all i < j < k and every commutator ``A_i A_j - A_j A_i`` is singular.
    """
    n = len(A)
    for i, j in combinations(range(n), 2):
        if commutator_det(A[i], A[j]):
            return False
    for (i, j, k), t in triple_traces(A):
        if t != (A[k - 1] @ A[j - 1]).trace_mul(A[i - 1]):
            return False
    return True


# -- common eigenvectors --------------------------------------------------------------

def _kernel_line(M: Mat2) -> tuple[GaussianRational, GaussianRational]:
    # M is singular and nonzero
    if M.e11 or M.e12:
        v = (-M.e12, M.e11)
    else:
        v = (-M.e22, M.e21)
    return _normalize(v)


def _normalize(v):
    x, y = v
    if x:
        return ONE, y / x
    return ZERO, ONE


def _is_eigenvector(M: Mat2, v) -> bool:
    x, y = v
    mx = M.e11 * x + M.e12 * y
    my = M.e21 * x + M.e22 * y
    return not (x * my - y * mx)


_E1 = (ONE, ZERO)
_E2 = (ZERO, ONE)


def common_eigenlines(A: Sequence[Mat2]) -> list[tuple[GaussianRational, GaussianRational]]:
    """All common eigenlines of the tuple, as normalized vectors (first nonzero coordinate 1).

    ``e1`` and ``e2`` come first when they qualify.  A zero tuple returns
    ``[e1]`` only (every line is invariant).  Raises FieldExtensionRequired when
    the candidate eigenvectors are not defined over Q(i).
    """
    X, _ = tracefree_part(A)
    nonzero = [m for m in X if not m.is_zero()]
    if not nonzero:
        return [_E1]
    candidates = [_E1, _E2]
    semisimple = next((m for m in nonzero if m.det()), None)
    if semisimple is not None:
        try:
            lam = sqrt_in_field(-semisimple.det())
        except NotASquare:
            raise FieldExtensionRequired(
                f"eigenvalues +-sqrt({-semisimple.det()}) are not in Q(i)") from None
        for ev in (lam, -lam):
            shifted = Mat2._make(semisimple.e11 - ev, semisimple.e12,
                                 semisimple.e21, semisimple.e22 - ev)
            candidates.append(_kernel_line(shifted))
    else:
        candidates.append(_kernel_line(nonzero[0]))
    lines = []
    for v in candidates:
        if v not in lines and all(_is_eigenvector(m, v) for m in nonzero):
            lines.append(v)
    return lines


def triangularizer_from_line(v) -> Mat2:
    """An SL2 element g with ``g v`` proportional to e1."""
    x, y = v
    if x:
        ginv = Mat2._make(x, ZERO, y, x.inverse())
    else:
        ginv = Mat2._make(ZERO, -y.inverse(), y, ZERO)
    return ginv.adjugate()


def triangularize(A: Sequence[Mat2]) -> Mat2:
    """Return g in SL2(Q(i)) with ``conj_act(g, A)`` upper-triangular.

    Already upper-triangular input gives the identity.  Raises
    NotTriangularizable if no such g exists over C, and FieldExtensionRequired
    if one exists only after adjoining a square root.
    """
    if all(m.is_upper_triangular() for m in A):
        return identity()
    if not is_triangularizable(A):
        raise NotTriangularizable("tuple has no common eigenvector")
    lines = common_eigenlines(A)
    if not lines:
        raise NotTriangularizable("no common eigenvector found")
    return triangularizer_from_line(lines[0])


def has_closed_orbit(A: Sequence[Mat2]) -> bool:
    """Whether the conjugation orbit of a trace-zero tuple is closed.

    Non-triangularizable tuples have closed orbits; a triangularizable one has
    a closed orbit exactly when it is simultaneously diagonalizable, i.e. all
    slots are multiples of one matrix with nonzero determinant (or all zero).
    """
    require_trace_zero(A)
    if not is_triangularizable(A):
        return True
    nonzero = [m for m in A if not m.is_zero()]
    if not nonzero:
        return True
    base = nonzero[0]
    if not base.det():
        return False
    for m in nonzero[1:]:
        # proportional to base: all 2x2 minors of the entry vectors vanish
        x, y = base.entries(), m.entries()
        if any(x[p] * y[q] - x[q] * y[p] for p, q in combinations(range(4), 2)):
            return False
    return True


# -- C, C', C0 ---------------------------------------------------------------------

@dataclass(frozen=True)
class PairForm:
    A: MatTuple
    B: MatTuple
    kind: FormClass

    @property
    def b(self):
        return [m.e11 for m in self.A]

    @property
    def c(self):
        return [m.e12 for m in self.A]

    @property
    def c_prime(self):
        return [m.e12 for m in self.B]


def pair_form(A: Sequence[Mat2], B: Sequence[Mat2]) -> PairForm:
    """Classify a pair of upper-triangular trace-zero tuples by their diagonals."""
    if len(A) != len(B):
        raise SizeMismatch("tuples have different lengths")
    require_trace_zero(A)
    require_trace_zero(B)
    if not (all(m.is_upper_triangular() for m in A) and all(m.is_upper_triangular() for m in B)):
        raise NotUpperTriangular("pair_form needs upper-triangular tuples")
    same = all(x.e11 == y.e11 for x, y in zip(A, B))
    opposite = all(x.e11 == -y.e11 for x, y in zip(A, B))
    if same and opposite:
        kind = FormClass.IN_C0
    elif same:
        kind = FormClass.IN_C
    elif opposite:
        kind = FormClass.IN_C_PRIME
    else:
        kind = FormClass.NOT_IN_C
    return PairForm(MatTuple(A), MatTuple(B), kind)


@dataclass(frozen=True)
class MMatrix:
    """Rows ``b; c; c'`` of a pair in C or C'."""

    rows: tuple[tuple[GaussianRational, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def delta(self, i: int, j: int, k: int) -> GaussianRational:
        cols = (i - 1, j - 1, k - 1)
        return det3([[row[c] for c in cols] for row in self.rows])

    def deltas(self) -> dict[tuple[int, int, int], GaussianRational]:
        return {ijk: self.delta(*ijk) for ijk in combinations(range(1, self.n + 1), 3)}


def m_matrix_and_rank(P: PairForm):
    """Return ``(MMatrix, rank, nonzero triples)`` where the triples are the column
    sets ``(i, j, k)`` whose 3x3 minor is nonzero."""
    if P.kind is FormClass.NOT_IN_C:
        raise NotInCFamily("pair is not in C, C' or C0")
    m = MMatrix((tuple(P.b), tuple(P.c), tuple(P.c_prime)))
    r = rank([list(row) for row in m.rows])
    nonzero = [ijk for ijk, d in m.deltas().items() if d] if r == 3 else []
    return m, r, nonzero


def torus_graph_condition(P: PairForm) -> bool:
    """``c_i c'_j == c_j c'_i`` for all i < j, for pairs in C (or C0)."""
    if P.kind not in (FormClass.IN_C, FormClass.IN_C0):
        raise NotInCFamily("torus condition applies to pairs in C")
    c, cp = P.c, P.c_prime
    return all(c[i] * cp[j] == c[j] * cp[i] for i, j in combinations(range(len(c)), 2))


# -- classification -------------------------------------------------------------------

@dataclass
class ClassificationReport:
    verdict: PairClassification
    witness: str | None = None
    form: FormClass | None = None
    rank: int | None = None
    nonzero_deltas: list = field(default_factory=list)
    g: Mat2 | None = None
    g_prime: Mat2 | None = None

    def to_json(self) -> dict:
        return {
            "classification": self.verdict.value,
            "witness": self.witness,
            "form": self.form.value if self.form else None,
            "rank": self.rank,
            "delta_nonzero": [list(t) for t in self.nonzero_deltas],
        }


def classify_pair_detailed(A: Sequence[Mat2], B: Sequence[Mat2]) -> ClassificationReport:
    """Decide which components of the inseparable-pair variety contain ``(A, B)``.

    Every pair of common eigenlines is tried, so the verdict does not depend on
    which triangularization happens to be found first.
    """
    if len(A) != len(B):
        raise SizeMismatch("tuples have different lengths")
    require_trace_zero(A)
    require_trace_zero(B)
    witness = first_difference(tracezero_generator_items(A), tracezero_generator_items(B))
    if witness is not None:
        return ClassificationReport(PairClassification.NOT_EQUIVALENT, witness=witness)
    if not is_triangularizable(A) or not is_triangularizable(B):
        return ClassificationReport(PairClassification.GRAPH_CLOSURE)

    in_graph = in_extra = False
    best: ClassificationReport | None = None
    for va, vb in product(common_eigenlines(A), common_eigenlines(B)):
        g, gp = triangularizer_from_line(va), triangularizer_from_line(vb)
        P = pair_form(conj_act(g, A), conj_act(gp, B))
        if P.kind is FormClass.NOT_IN_C:
            continue
        _, r, nz = m_matrix_and_rank(P)
        if P.kind is FormClass.IN_C_PRIME:
            in_graph = True
            # C' pairs always lie in the graph closure
        else:
            in_extra = True
            if r <= 2:
                in_graph = True
        candidate = ClassificationReport(PairClassification.BOTH, form=P.kind, rank=r,
                                         nonzero_deltas=nz, g=g, g_prime=gp)
        # prefer a C-form witness; among those, the lowest rank
        if best is None or _form_priority(candidate) < _form_priority(best):
            best = candidate
    if best is None:
        raise InconsistentData("inseparable triangularizable pair outside C and C'")
    if in_extra and in_graph:
        best.verdict = PairClassification.BOTH
    elif in_extra:
        best.verdict = PairClassification.EXTRA_COMPONENT_ONLY
    else:
        best.verdict = PairClassification.GRAPH_CLOSURE
    return best


def _form_priority(rep: ClassificationReport):
    return (rep.form is FormClass.IN_C_PRIME, rep.rank)


def classify_pair(A: Sequence[Mat2], B: Sequence[Mat2]) -> PairClassification:
    """Verdict only; see :func:`classify_pair_detailed`."""
    return classify_pair_detailed(A, B).verdict
