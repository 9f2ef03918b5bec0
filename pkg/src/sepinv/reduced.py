"""Smaller separating sets built from level sums of the triple traces.

For trace-zero tuples the triple traces ``t(i,j,k)`` are (up to a global sign)
the maximal minors of the 3 x n coordinate matrix.  Grouping the minors by
``i + j + k`` gives ``3n - 8`` levels (6 .. 3n-3); one linear combination per
level is enough to detect whether every minor vanishes, and together with the
pair traces ``t(i,j)`` this separates orbits.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import InconsistentData, NTooSmall, SizeMismatch
from .invariants import (
    GRAM_CONSTANT,
    Family,
    InvariantProfile,
    first_difference,
    full_generator_items,
    pair_trace_items,
    triple_traces,
)
from .linalg import det3
from .matrix import Mat2, require_trace_zero, tracefree_part
from .scalar import ONE, ZERO, GaussianRational, sqrt_in_field

__all__ = [
    "Scheme",
    "MinorCombination",
    "ReducedSet",
    "build_reduced_combinations",
    "eval_reduced_profile",
    "eval_reduced_general",
    "reduced_profile_items",
    "decide_equiv_full",
    "decide_equiv_reduced",
    "reduced_witness",
    "triple_traces_up_to_sign",
]


class Scheme(str, enum.Enum):
    UNIT = "UnitLevelSums"
    VANDERMONDE = "VandermondeLevelSums"

    @classmethod
    def parse(cls, text: str) -> "Scheme":
        aliases = {"unit": cls.UNIT, "vandermonde": cls.VANDERMONDE}
        if text in aliases:
            return aliases[text]
        return cls(text)


@dataclass(frozen=True)
class MinorCombination:
    level: int
    terms: tuple[tuple[tuple[int, int, int], GaussianRational], ...]

    def __post_init__(self):
        for (i, j, k), coeff in self.terms:
            if not (i < j < k and i + j + k == self.level):
                raise ValueError(f"triple {(i, j, k)} does not lie on level {self.level}")
            if not coeff:
                raise ValueError("coefficients must be nonzero")

    def evaluate(self, minors: dict) -> GaussianRational:
        total = ZERO
        for ijk, coeff in self.terms:
            total = total + coeff * minors[ijk]
        return total

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "terms": [{"ijk": list(ijk), "coeff": _coeff_text(c)} for ijk, c in self.terms],
        }


def _coeff_text(c: GaussianRational) -> str:
    from .scalar import format_fraction

    if c.im:
        raise ValueError("level coefficients are rational")
    return format_fraction(c.re)


@dataclass(frozen=True)
class ReducedSet:
    n: int
    scheme: Scheme
    combinations: tuple[MinorCombination, ...]

    def __len__(self) -> int:
        return len(self.combinations)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "scheme": self.scheme.value,
            "combinations": [c.to_json() for c in self.combinations],
        }


def build_reduced_combinations(n: int, scheme: Scheme | str = Scheme.UNIT) -> ReducedSet:
    """One combination per level ``l = 6 .. 3n-3`` of the triples ``i<j<k`` with ``i+j+k = l``.

    ``UNIT`` uses coefficient 1 throughout; ``VANDERMONDE`` gives the m-th triple
    of a level (lex order, from 0) the coefficient ``2**m``.
    """
    if n < 3:
        raise NTooSmall("reduced sets need n >= 3")
    scheme = Scheme.parse(scheme) if isinstance(scheme, str) else scheme
    levels: dict[int, list[tuple[int, int, int]]] = {}
    for ijk in combinations(range(1, n + 1), 3):
        levels.setdefault(sum(ijk), []).append(ijk)
    combos = []
    for level in range(6, 3 * n - 2):
        triples = levels[level]
        if scheme is Scheme.UNIT:
            terms = tuple((ijk, ONE) for ijk in triples)
        else:
            terms = tuple((ijk, GaussianRational(2 ** m)) for m, ijk in enumerate(triples))
        combos.append(MinorCombination(level, terms))
    return ReducedSet(n, scheme, tuple(combos))


def reduced_profile_items(A: Sequence[Mat2], R: ReducedSet) -> Iterator[tuple[str, GaussianRational]]:
    if len(A) != R.n:
        raise SizeMismatch(f"reduced set built for n={R.n}, tuple has n={len(A)}")
    yield from pair_trace_items(A)
    minors = dict(triple_traces(A))
    for combo in R.combinations:
        yield f"f({combo.level})", combo.evaluate(minors)


def eval_reduced_profile(A: Sequence[Mat2], R: ReducedSet) -> InvariantProfile:
    """Pair traces ``t(i,j)`` (i <= j) followed by the level combinations ``f(l)``."""
    require_trace_zero(A)
    return InvariantProfile(Family.REDUCED, tuple(reduced_profile_items(A, R)))


# -- decisions -------------------------------------------------------------------

def _same_size(A, B) -> None:
    if len(A) != len(B):
        raise SizeMismatch(f"tuples have different lengths {len(A)} and {len(B)}")


def decide_equiv_full(A: Sequence[Mat2], B: Sequence[Mat2]) -> tuple[bool, str | None]:
    """Compare the full generating set slot by slot.

    Returns ``(True, None)`` when the tuples are inseparable, otherwise
    ``(False, label)`` with the first disagreeing label in canonical order.
    """
    _same_size(A, B)
    witness = first_difference(full_generator_items(A), full_generator_items(B))
    return witness is None, witness


_REDUCED_CACHE: dict[tuple[int, Scheme], ReducedSet] = {}


def _reduced_set(n: int, scheme: Scheme) -> ReducedSet:
    key = (n, scheme)
    R = _REDUCED_CACHE.get(key)
    if R is None:
        R = _REDUCED_CACHE[key] = build_reduced_combinations(n, scheme)
    return R


def _reduced_items(A: Sequence[Mat2], scheme: Scheme):
    X, traces = tracefree_part(A)
    for i, t in enumerate(traces, 1):
        yield f"tr({i})", t
    yield from reduced_profile_items(X, _reduced_set(len(A), scheme))


def eval_reduced_general(A: Sequence[Mat2], scheme: Scheme = Scheme.UNIT) -> InvariantProfile:
    """Reduced separating set on an arbitrary tuple.

    Traces ``tr(i)``, then the reduced profile of the trace-free parts; for
    n <= 2 this is the full generating set.
    """
    if len(A) <= 2:
        return InvariantProfile(Family.FULL, tuple(full_generator_items(A)))
    return InvariantProfile(Family.REDUCED, tuple(_reduced_items(A, scheme)))


def reduced_witness(A: Sequence[Mat2], B: Sequence[Mat2],
                    scheme: Scheme = Scheme.UNIT) -> str | None:
    """First label of the reduced set (traces, then the trace-free profile) on which A and B differ."""
    _same_size(A, B)
    if len(A) <= 2:
        return decide_equiv_full(A, B)[1]
    return first_difference(_reduced_items(A, scheme), _reduced_items(B, scheme))


def decide_equiv_reduced(A: Sequence[Mat2], B: Sequence[Mat2],
                         scheme: Scheme = Scheme.UNIT) -> bool:
    """Inseparability decided with the reduced separating set (full set when n <= 2)."""
    return reduced_witness(A, B, scheme) is None


def triple_traces_up_to_sign(pair_traces, n: int | None = None):
    """Recover the triple traces from pair-trace data, up to one global sign.

    ``pair_traces`` maps ``(i, j)`` (1-based, either order) to ``Tr(A_i A_j)``;
    a full symmetric n x n matrix (list of rows) is also accepted.  Uses
    ``t_ijk * t_pqr = GRAM_CONSTANT * det[t_xy]``.  Returns ``(v, -v)`` where
    ``v`` maps each triple ``i<j<k`` to a value; the sign of ``v`` is fixed by
    taking the first nonzero triple from :func:`sqrt_in_field`.
    """
    T = _pair_matrix(pair_traces, n)
    n = len(T)
    triples = list(combinations(range(n), 3))

    def gram(x, y):
        return det3([[T[p][q] for q in y] for p in x])

    v: dict[tuple[int, int, int], GaussianRational] = {}
    anchor = None
    for x in triples:
        sq = GRAM_CONSTANT * gram(x, x)
        if sq:
            anchor = x
            root = sqrt_in_field(sq)
            break
    if anchor is None:
        v = {tuple(i + 1 for i in x): ZERO for x in triples}
        return v, dict(v)
    for x in triples:
        value = root if x == anchor else GRAM_CONSTANT * gram(x, anchor) / root
        v[x] = value
    # every pairwise product must match the relation
    for x in triples:
        for y in triples:
            if v[x] * v[y] != GRAM_CONSTANT * gram(x, y):
                raise InconsistentData(f"pair traces incoherent on triples {x}, {y}")
    plus = {tuple(i + 1 for i in x): val for x, val in v.items()}
    minus = {k: -val for k, val in plus.items()}
    return plus, minus


def _pair_matrix(pair_traces, n):
    if isinstance(pair_traces, dict):
        if n is None:
            n = max(max(k) for k in pair_traces)
        T = [[None] * n for _ in range(n)]
        for (i, j), val in pair_traces.items():
            val = GaussianRational.coerce(val)
            for p, q in ((i, j), (j, i)):
                if T[p - 1][q - 1] is not None and T[p - 1][q - 1] != val:
                    raise InconsistentData(f"asymmetric pair data at {(i, j)}")
                T[p - 1][q - 1] = val
        if any(x is None for row in T for x in row):
            raise InconsistentData("pair-trace data is incomplete")
        return T
    T = [[GaussianRational.coerce(x) for x in row] for row in pair_traces]
    for i in range(len(T)):
        for j in range(i):
            if T[i][j] != T[j][i]:
                raise InconsistentData(f"pair-trace matrix is not symmetric at {(j + 1, i + 1)}")
    return T
