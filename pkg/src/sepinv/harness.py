"""Structured samplers and exact cross-check suites.

Every trial draws from its own ``random.Random`` stream keyed by
``(seed, kind, n, trial)``, so reports are reproducible and any single trial
can be replayed from the counterexample record.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from itertools import combinations, islice, product
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded
from .geometry import (
    FormClass,
    PairClassification,
    classify_pair,
    common_eigenlines,
    commutator_det,
    is_triangularizable,
    m_matrix_and_rank,
    pair_form,
    triangularize,
    triangularizer_from_line,
)
from .invariants import (
    GRAM_CONSTANT,
    eval_full_generators,
    gram_relation_check,
    triple_trace_minor,
    word_trace,
)
from .linalg import det
from .matrix import (
    Mat2,
    MatTuple,
    conj_act,
    identity,
    leftright_act,
    random_scalar,
    random_sl2,
    star_act,
    tracezero,
)
from .reduced import Scheme, build_reduced_combinations, decide_equiv_full, decide_equiv_reduced
from .scalar import ZERO, GaussianRational
from .semi import conj_equiv_via_sigma, eval_H_generators

__all__ = [
    "SamplerKind",
    "SamplerSpec",
    "Report",
    "trial_rng",
    "random_tuple",
    "random_tracezero_tuple",
    "grid_tuples",
    "sample",
    "crosscheck_reduced_vs_full",
    "grid_minor_certification",
    "invariance_suite",
    "sigma_suite",
    "geometry_suite",
    "IDENTITY_CHECKS",
    "MAX_COUNTEREXAMPLES",
]

MAX_COUNTEREXAMPLES = 5


class SamplerKind(str, enum.Enum):
    RANDOM_TUPLE = "RandomTuple"
    SAME_ORBIT_PAIR = "SameOrbitPair"
    C_PAIR = "CPair"
    C_PRIME_PAIR = "CPrimePair"
    C0_PAIR = "C0Pair"
    PERTURBED_PAIR = "PerturbedPair"
    GRID_TUPLE = "GridTuple"
    # not in the original list: (A, A with its trace-free part negated); these
    # agree on every pair trace and differ at most in the triple traces
    SIGN_FLIP_PAIR = "SignFlipPair"


@dataclass(frozen=True)
class SamplerSpec:
    kind: SamplerKind
    n: int
    bound: int = 10
    seed: int = 0

    def to_json(self) -> dict:
        return {"kind": SamplerKind(self.kind).value, "n": self.n, "bound": self.bound, "seed": self.seed}


@dataclass
class Report:
    suite: str
    spec: dict
    trials: int = 0
    failures: int = 0
    counterexamples: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, check: str, passed: bool, counterexample: Callable[[], dict] | None = None) -> None:
        self.trials += 1
        entry = self.checks.setdefault(check, {"trials": 0, "failures": 0})
        entry["trials"] += 1
        if not passed:
            self.failures += 1
            entry["failures"] += 1
            if counterexample is not None and len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                record = {"check": check}
                record.update(counterexample())
                self.counterexamples.append(record)

    def merge(self, other: "Report") -> "Report":
        self.trials += other.trials
        self.failures += other.failures
        room = MAX_COUNTEREXAMPLES - len(self.counterexamples)
        self.counterexamples.extend(other.counterexamples[:max(room, 0)])
        for name, entry in other.checks.items():
            mine = self.checks.setdefault(name, {"trials": 0, "failures": 0})
            mine["trials"] += entry["trials"]
            mine["failures"] += entry["failures"]
        return self

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "spec": self.spec,
            "trials": self.trials,
            "failures": self.failures,
            "counterexamples": self.counterexamples,
            "checks": self.checks,
        }


def trial_rng(seed: int, *key) -> random.Random:
    """Independent deterministic stream for one trial."""
    return random.Random("/".join(str(k) for k in (seed, *key)))


# -- samplers ---------------------------------------------------------------------

def random_tuple(rng: random.Random, n: int, bound: int = 10) -> MatTuple:
    gaussian = rng.random() < 0.5
    return MatTuple._make(
        Mat2._make(*(random_scalar(rng, bound, gaussian=gaussian) for _ in range(4)))
        for _ in range(n))


def _sparse_scalar(rng, bound, gaussian, p_zero=0.2):
    return ZERO if rng.random() < p_zero else random_scalar(rng, bound, gaussian=gaussian)


def random_tracezero_tuple(rng: random.Random, n: int, bound: int = 10, p_zero: float = 0.0) -> MatTuple:
    gaussian = rng.random() < 0.5
    s = lambda: _sparse_scalar(rng, bound, gaussian, p_zero)  # noqa: E731
    return MatTuple._make(tracezero(s(), s(), s()) for _ in range(n))


def _c_family_pair(rng, n, bound, diag_sign):
    gaussian = rng.random() < 0.5
    s = lambda: _sparse_scalar(rng, bound, gaussian)  # noqa: E731
    b = [s() for _ in range(n)] if diag_sign is not None else [ZERO] * n
    c = [s() for _ in range(n)]
    if rng.random() < 0.5:
        # rank of the (b; c; c') matrix at most 2
        alpha, beta = s(), s()
        cp = [alpha * x + beta * y for x, y in zip(b, c)]
    else:
        cp = [s() for _ in range(n)]
    sign = diag_sign or 1
    A = MatTuple._make(tracezero(bi, ci) for bi, ci in zip(b, c))
    B = MatTuple._make(tracezero(sign * bi, ci) for bi, ci in zip(b, cp))
    return A, B


def grid_tuples(n: int, values: Sequence[int]) -> Iterator[MatTuple]:
    """All trace-zero n-tuples whose coordinates (b, c, a) lie in ``values``."""
    vals = [GaussianRational(v) for v in values]
    slots = [tracezero(b, c, a) for b, c, a in product(vals, repeat=3)]
    for combo in product(slots, repeat=n):
        yield MatTuple._make(combo)


def _one_pair(spec: SamplerSpec, trial: int):
    kind = SamplerKind(spec.kind)
    n, bound = spec.n, spec.bound
    rng = trial_rng(spec.seed, kind.value, n, bound, trial)
    if kind is SamplerKind.RANDOM_TUPLE:
        return random_tuple(rng, n, bound), random_tuple(rng, n, bound)
    if kind is SamplerKind.SAME_ORBIT_PAIR:
        A = random_tuple(rng, n, bound)
        return A, conj_act(random_sl2(rng, bound), A)
    if kind is SamplerKind.C_PAIR:
        return _c_family_pair(rng, n, bound, 1)
    if kind is SamplerKind.C_PRIME_PAIR:
        return _c_family_pair(rng, n, bound, -1)
    if kind is SamplerKind.C0_PAIR:
        return _c_family_pair(rng, n, bound, None)
    if kind is SamplerKind.PERTURBED_PAIR:
        A = random_tuple(rng, n, bound)
        if rng.random() < 0.5:
            A = conj_act(random_sl2(rng, bound), A)
        slot, pos = rng.randrange(n), rng.randrange(4)
        delta = random_scalar(rng, 3, gaussian=rng.random() < 0.5, nonzero=True)
        entries = list(A[slot].entries())
        entries[pos] = entries[pos] + delta
        B = list(A)
        B[slot] = Mat2._make(*entries)
        return A, MatTuple._make(B)
    if kind is SamplerKind.SIGN_FLIP_PAIR:
        X = random_tracezero_tuple(rng, n, bound, p_zero=0.3)
        if rng.random() < 0.5:
            # coordinate columns confined to a plane: all triple traces vanish
            u, v = rng.randrange(3), rng.randrange(3)
            X = MatTuple._make(_project(m, u, v) for m in X)
        traces = [random_scalar(rng, bound, gaussian=False) for _ in range(n)]
        A = MatTuple._make(m + identity().scale(t) for m, t in zip(X, traces))
        B = MatTuple._make(identity().scale(t) - m for m, t in zip(X, traces))
        return A, B
    raise ValueError(f"{kind} is enumerated, not sampled")


def _project(m: Mat2, u: int, v: int) -> Mat2:
    # zero one trace-zero coordinate (a, b or c) so the 3 x n matrix has rank <= 2
    a, b, c = m.e21, m.e11, m.e12
    coords = [a, b, c]
    coords[u] = ZERO
    if u == v:
        coords[(u + 1) % 3] = ZERO
    return tracezero(coords[1], coords[2], coords[0])


def sample(spec: SamplerSpec, count: int | None, start: int = 0) -> Iterator[tuple[MatTuple, MatTuple]]:
    """Yield ``count`` pairs for the spec (all pairs, for GridTuple with count=None).

    GridTuple enumerates ordered pairs of trace-zero tuples with coordinates in
    ``{-bound, ..., bound}``.
    """
    kind = SamplerKind(spec.kind)
    if kind is SamplerKind.GRID_TUPLE:
        values = range(-spec.bound, spec.bound + 1)
        pairs = product(list(grid_tuples(spec.n, values)), repeat=2)
        yield from islice(pairs, start, None if count is None else start + count)
        return
    for trial in range(start, start + count):
        yield _one_pair(spec, trial)


def _pair_record(spec, trial, A, B, **extra) -> dict:
    rec = {"spec": spec.to_json(), "trial": trial, "a": A.to_json(), "b": B.to_json()}
    rec.update(extra)
    return rec


# -- cross-checks ------------------------------------------------------------------

def crosscheck_reduced_vs_full(spec: SamplerSpec, count: int,
                               scheme: Scheme = Scheme.UNIT) -> Report:
    """Run both decision procedures on every sampled pair; any disagreement is a failure."""
    report = Report("reduced", spec.to_json())
    inseparable = 0
    for trial, (A, B) in enumerate(sample(spec, count)):
        full, witness = decide_equiv_full(A, B)
        red = decide_equiv_reduced(A, B, scheme)
        inseparable += full
        report.record(SamplerKind(spec.kind).value, full == red,
                      lambda: _pair_record(spec, trial, A, B, full=full, reduced=red, witness=witness))
    report.spec["inseparable"] = inseparable
    return report


def _level_groups(n, scheme):
    R = build_reduced_combinations(n, scheme)
    triples = list(combinations(range(n), 3))
    index = {t: p for p, t in enumerate(triples)}
    groups = []
    for combo in R.combinations:
        cols = [index[tuple(x - 1 for x in ijk)] for ijk, _ in combo.terms]
        coeffs = [int(c.re) for _, c in combo.terms]
        groups.append((cols, coeffs))
    return triples, groups


def grid_minor_certification(n: int, values: Sequence[int], scheme: Scheme = Scheme.UNIT,
                             budget: int = 10 ** 7) -> Report:
    """Exhaustively check: all level combinations vanish => all 3x3 minors vanish.

    Scans every 3 x n integer matrix with entries in ``values``.
    """
    values = sorted(set(int(v) for v in values))
    total = len(values) ** (3 * n)
    report = Report("minors", {"n": n, "values": values, "scheme": Scheme(scheme).value,
                               "matrices": total})
    if total > budget:
        raise BudgetExceeded(f"{len(values)}^{3 * n} = {total} matrices exceeds budget {budget}")
    if n < 3:
        report.spec["note"] = "no 3x3 minors for n < 3"
        return report
    triples, groups = _level_groups(n, scheme)
    cols = np.array(list(product(values, repeat=3)), dtype=np.int64)   # (m, 3)
    m = len(cols)
    rest = np.indices((m,) * (n - 1)).reshape(n - 1, -1).T if n > 1 else np.zeros((1, 0), int)
    violations = 0
    for first in range(m):
        idx = np.concatenate([np.full((len(rest), 1), first), rest], axis=1)   # (N, n)
        M = cols[idx]                                                          # (N, n, 3)
        minors = np.stack([_det3(M[:, i], M[:, j], M[:, k]) for i, j, k in triples], axis=1)
        f = np.stack([minors[:, c] @ np.array(w, dtype=np.int64) for c, w in groups], axis=1)
        bad = np.all(f == 0, axis=1) & np.any(minors != 0, axis=1)
        nbad = int(bad.sum())
        violations += nbad
        if nbad and len(report.counterexamples) < MAX_COUNTEREXAMPLES:
            row = int(np.flatnonzero(bad)[0])
            report.counterexamples.append({"columns": M[row].tolist()})
    report.trials = total
    report.failures = violations
    report.checks["rank_detection"] = {"trials": total, "failures": violations}
    return report


def _det3(u, v, w):
    return (u[:, 0] * (v[:, 1] * w[:, 2] - v[:, 2] * w[:, 1])
            - u[:, 1] * (v[:, 0] * w[:, 2] - v[:, 2] * w[:, 0])
            + u[:, 2] * (v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0]))


# -- identity and invariance suites -------------------------------------------------

def _random_invertible(rng, n, bound):
    while True:
        h = [[random_scalar(rng, bound, gaussian=False) for _ in range(n)] for _ in range(n)]
        if det(h):
            return h


def _rand_mat(rng, bound):
    return Mat2._make(*(random_scalar(rng, bound) for _ in range(4)))


def _rand_tz(rng, bound):
    return tracezero(random_scalar(rng, bound), random_scalar(rng, bound), random_scalar(rng, bound))


def _check_cayley_hamilton(rng, n, bound):
    A = _rand_mat(rng, bound)
    rhs = A @ A - A.scale(A.trace()) + identity().scale(A.det())
    return rhs.is_zero(), lambda: {"a": A.to_json()}


def _check_anticommutator(rng, n, bound):
    X, Y = _rand_tz(rng, bound), _rand_tz(rng, bound)
    ok = (X @ Y + Y @ X) == identity().scale(X.trace_mul(Y))
    return ok, lambda: {"x": X.to_json(), "y": Y.to_json()}


def _check_trace_square(rng, n, bound):
    X = _rand_tz(rng, bound)
    return X.trace_mul(X) == -2 * X.det(), lambda: {"x": X.to_json()}


def _check_commutator_det(rng, n, bound):
    X, Y = _rand_tz(rng, bound), _rand_tz(rng, bound)
    t = X.trace_mul(Y)
    ok = commutator_det(X, Y) == 4 * X.det() * Y.det() - t * t
    return ok, lambda: {"x": X.to_json(), "y": Y.to_json()}


def _random_word(rng, n):
    return [rng.randint(1, n) for _ in range(3)]


def _check_minor_identity(rng, n, bound):
    A = random_tracezero_tuple(rng, n, bound, p_zero=0.2)
    w = _random_word(rng, n)
    return triple_trace_minor(A, *w) == word_trace(A, w), lambda: {"a": A.to_json(), "word": w}


def _check_antisymmetry(rng, n, bound):
    A = random_tracezero_tuple(rng, n, bound, p_zero=0.2)
    i, j, k = _random_word(rng, n)
    ok = word_trace(A, (i, k, j)) == -word_trace(A, (i, j, k))
    return ok, lambda: {"a": A.to_json(), "word": [i, j, k]}


def _check_gram_relation(rng, n, bound):
    A = random_tracezero_tuple(rng, n, bound, p_zero=0.2)
    ijk, pqr = _random_word(rng, n), _random_word(rng, n)
    try:
        gram_relation_check(A, ijk, pqr)
        ok = True
    except AssertionError:
        ok = False
    return ok, lambda: {"a": A.to_json(), "ijk": ijk, "pqr": pqr, "constant": GRAM_CONSTANT.to_json()}


def _check_star_conj(rng, n, bound):
    A = random_tuple(rng, n, bound)
    g = random_sl2(rng, bound)
    h = _random_invertible(rng, n, 5)
    ok = star_act(h, conj_act(g, A)) == conj_act(g, star_act(h, A))
    return ok, lambda: {"a": A.to_json(), "g": g.to_json()}


def _check_conj_invariance(rng, n, bound):
    A = random_tuple(rng, n, bound)
    g = random_sl2(rng, bound)
    ok = eval_full_generators(conj_act(g, A)) == eval_full_generators(A)
    return ok, lambda: {"a": A.to_json(), "g": g.to_json()}


def _check_leftright_invariance(rng, n, bound):
    A = random_tuple(rng, n, bound)
    h1, h2 = random_sl2(rng, bound), random_sl2(rng, bound)
    ok = eval_H_generators(leftright_act(h1, h2, A)) == eval_H_generators(A)
    return ok, lambda: {"a": A.to_json(), "h1": h1.to_json(), "h2": h2.to_json()}


IDENTITY_CHECKS: dict[str, Callable] = {
    "cayley_hamilton": _check_cayley_hamilton,
    "anticommutator": _check_anticommutator,
    "trace_square": _check_trace_square,
    "commutator_det": _check_commutator_det,
    "minor_identity": _check_minor_identity,
    "triple_antisymmetry": _check_antisymmetry,
    "gram_relation": _check_gram_relation,
    "star_conj_commute": _check_star_conj,
    "conj_invariance": _check_conj_invariance,
    "leftright_invariance": _check_leftright_invariance,
}


def invariance_suite(seed: int, trials: int, n: int = 3, checks: Iterable[str] | None = None,
                     bound: int = 10) -> Report:
    """Run each named identity/invariance check ``trials`` times on n-tuples."""
    names = list(checks) if checks is not None else list(IDENTITY_CHECKS)
    report = Report("invariance", {"n": n, "seed": seed, "bound": bound, "checks": names})
    for name in names:
        fn = IDENTITY_CHECKS[name]
        for trial in range(trials):
            rng = trial_rng(seed, "invariance", name, n, trial)
            ok, cx = fn(rng, n, bound)
            report.record(name, ok, lambda: dict(cx(), trial=trial, n=n))
    return report


SIGMA_KINDS = (SamplerKind.RANDOM_TUPLE, SamplerKind.SAME_ORBIT_PAIR, SamplerKind.PERTURBED_PAIR,
               SamplerKind.SIGN_FLIP_PAIR, SamplerKind.C_PAIR, SamplerKind.C_PRIME_PAIR,
               SamplerKind.C0_PAIR)


def sigma_suite(seed: int, trials: int, n: int, bound: int = 10) -> Report:
    """Compare the identity-slot transfer of the left-right invariants with the full conjugation set.

    Trials cycle through the sampler kinds in SIGMA_KINDS.
    """
    report = Report("sigma", {"n": n, "seed": seed, "bound": bound})
    inseparable = 0
    for trial in range(trials):
        kind = SIGMA_KINDS[trial % len(SIGMA_KINDS)]
        spec = SamplerSpec(kind, n, bound, seed)
        A, B = _one_pair(spec, trial)
        full = decide_equiv_full(A, B)[0]
        via = conj_equiv_via_sigma(A, B)
        inseparable += full
        report.record(kind.value, full == via,
                      lambda: _pair_record(spec, trial, A, B, full=full, sigma=via))
    report.spec["inseparable"] = inseparable
    return report


def _random_upper_tuple(rng, n, bound):
    gaussian = rng.random() < 0.5
    s = lambda: _sparse_scalar(rng, bound, gaussian)  # noqa: E731
    return MatTuple._make(Mat2._make(s(), s(), ZERO, s()) for _ in range(n))


def _c_form_ranks(A, B) -> set[int]:
    """Rank of m over every C-form reachable by triangularizing each side separately."""
    ranks = set()
    for va, vb in product(common_eigenlines(A), common_eigenlines(B)):
        P = pair_form(conj_act(triangularizer_from_line(va), A), conj_act(triangularizer_from_line(vb), B))
        if P.kind in (FormClass.IN_C, FormClass.IN_C0):
            ranks.add(m_matrix_and_rank(P)[1])
    return ranks


def geometry_suite(seed: int, trials: int, n: int, bound: int = 10) -> Report:
    """Triangularization certificates, C' inseparability, and the rank criterion on C pairs.

    C pairs are also re-conjugated on each side independently; the verdict and
    the rank of m on every C-form found after re-triangularization must not move.
    """
    report = Report("geometry", {"n": n, "seed": seed, "bound": bound})
    for trial in range(trials):
        rng = trial_rng(seed, "geometry", n, trial)
        U = _random_upper_tuple(rng, n, bound)
        A = conj_act(random_sl2(rng, bound), U)
        recognized = is_triangularizable(A)
        certified = False
        if recognized:
            g = triangularize(A)
            certified = conj_act(g, A).is_upper_triangular()
        report.record("triangularize", recognized and certified,
                      lambda: {"trial": trial, "a": A.to_json()})

        spec = SamplerSpec(SamplerKind.C_PRIME_PAIR, n, bound, seed)
        P, Q = _one_pair(spec, trial)
        report.record("cprime_inseparable", decide_equiv_full(P, Q)[0],
                      lambda: _pair_record(spec, trial, P, Q))

        spec = SamplerSpec(SamplerKind.C_PAIR, n, bound, seed)
        P, Q = _one_pair(spec, trial)
        m, _, _ = m_matrix_and_rank(pair_form(P, Q))
        vanish = not any(m.deltas().values())
        verdict = classify_pair(P, Q)
        expected = PairClassification.BOTH if vanish else PairClassification.EXTRA_COMPONENT_ONLY
        report.record("cpair_rank_criterion", verdict is expected,
                      lambda: _pair_record(spec, trial, P, Q, deltas_vanish=vanish, verdict=verdict.value))

        # the verdict must not depend on which conjugates of the pair we are handed
        g1, g2 = random_sl2(rng, 3), random_sl2(rng, 3)
        P2, Q2 = conj_act(g1, P), conj_act(g2, Q)
        moved = classify_pair(P2, Q2)
        report.record("cpair_conjugation_stable", moved is verdict,
                      lambda: _pair_record(spec, trial, P, Q, g1=g1.to_json(), g2=g2.to_json()))
        # ... nor the rank of m on whichever C-form the re-triangularization lands on
        _, r, _ = m_matrix_and_rank(pair_form(P, Q))
        ranks = _c_form_ranks(P2, Q2)
        report.record("retriangulated_rank", ranks == {r},
                      lambda: _pair_record(spec, trial, P, Q, rank=r, ranks=sorted(ranks)))
    return report
