"""Acceptance criteria at full counts.

Each test prints one ``ACCEPTANCE <k> PASS|FAIL`` line.  Criterion 5 is the
long one (several minutes on one core); run just this file with
``pytest tests/test_acceptance.py -v``.
"""
import json
import random
import time

import pytest

from sepinv.cli import run_command
from sepinv.errors import BudgetExceeded
from sepinv.geometry import PairClassification, classify_pair, m_matrix_and_rank, pair_form
from sepinv.harness import (
    SamplerKind,
    SamplerSpec,
    crosscheck_reduced_vs_full,
    geometry_suite,
    grid_minor_certification,
    invariance_suite,
    random_tuple,
    sigma_suite,
)
from sepinv.invariants import eval_tracezero_generators
from sepinv.matrix import H, Mat2, MatTuple
from sepinv.semi import xi
from test_semi import xi_by_expansion

SEED = 20240601

# table data: n -> value
S_N = {2: 5, 3: 10, 4: 18, 5: 30, 6: 47, 7: 70, 8: 100}
S_PRIME = {2: 5, 3: 10, 4: 18, 5: 27, 6: 37, 7: 48, 8: 60}
DIM_CONJ = {2: 5, 3: 9, 4: 13, 5: 17, 6: 21, 7: 25, 8: 29}
H_SET = {2: 3, 3: 6, 4: 11, 5: 20, 6: 36}
DIM_H = {2: 3, 3: 6, 4: 10, 5: 14, 6: 18}

IDENTITIES = ["cayley_hamilton", "anticommutator", "trace_square", "commutator_det",
              "minor_identity", "triple_antisymmetry", "gram_relation", "star_conj_commute"]
CROSSCHECK_KINDS = [SamplerKind.RANDOM_TUPLE, SamplerKind.SAME_ORBIT_PAIR, SamplerKind.C_PAIR,
                    SamplerKind.C_PRIME_PAIR, SamplerKind.C0_PAIR, SamplerKind.PERTURBED_PAIR]


@pytest.fixture
def emit(capsys):
    def _emit(k, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {k} {'PASS' if ok else 'FAIL'}: {detail}")
    return _emit


def _cli_json(argv, capsys):
    code = run_command(argv)
    return code, json.loads(capsys.readouterr().out)


def test_1_cardinality_tables(emit, capsys):
    bad = []
    for n in range(2, 9):
        code, row = _cli_json(["sizes", "--n", str(n)], capsys)
        got = (code, row["S_n"], row["S_prime"], row["dim_conj"])
        if got != (0, S_N[n], S_PRIME[n], DIM_CONJ[n]):
            bad.append((n, got))
        if n in H_SET and (row["H_set"], row["dim_H"]) != (H_SET[n], DIM_H[n]):
            bad.append((n, row))
    emit(1, not bad, f"sizes n=2..8 and H table n=2..6; mismatches={bad}")
    assert not bad


def test_2_nilpotent_inseparable(emit, tmp_path, capsys):
    z, o = {"re": "0/1", "im": "0/1"}, {"re": "1/1", "im": "0/1"}
    a, b = tmp_path / "e12.json", tmp_path / "zero.json"
    a.write_text(json.dumps({"n": 1, "matrices": [[[z, o], [z, z]]]}))
    b.write_text(json.dumps({"n": 1, "matrices": [[[z, z], [z, z]]]}))
    codes = {}
    for mode in ("full", "reduced", "sigma"):
        codes[mode] = run_command(["separate", "--action", "conj", "--set", mode, "--a", str(a), "--b", str(b)])
        capsys.readouterr()
    ok = all(c == 0 for c in codes.values())
    emit(2, ok, f"(E12) vs (0) exit codes {codes}")
    assert ok


def test_3_two_component_witness(emit):
    A = MatTuple([H, Mat2(1, 1, 0, -1), Mat2(1, 1, 0, -1)])
    B = MatTuple([H, H, Mat2(1, 1, 0, -1)])
    same = eval_tracezero_generators(A) == eval_tracezero_generators(B)
    verdict = classify_pair(A, B)
    m, r, _ = m_matrix_and_rank(pair_form(A, B))
    d = m.delta(1, 2, 3)
    ok = same and verdict is PairClassification.EXTRA_COMPONENT_ONLY and d == 1
    emit(3, ok, f"E_3 agree={same}, verdict={verdict.value}, rank={r}, delta_123={d}")
    assert ok


def test_4_identity_suite(emit):
    t0 = time.perf_counter()
    failures, trials = 0, 0
    for n in range(2, 7):
        rep = invariance_suite(SEED, 1000, n, checks=IDENTITIES)
        failures += rep.failures
        trials += rep.trials
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 60
    emit(4, ok, f"{len(IDENTITIES)} identities x 1000 trials x n=2..6: {trials} checks, "
                f"{failures} failures, {elapsed:.1f}s")
    assert ok


@pytest.mark.slow
def test_5_reduced_vs_full(emit):
    t0 = time.perf_counter()
    failures, trials, per = 0, 0, {}
    for n in range(3, 9):
        for kind in CROSSCHECK_KINDS:
            rep = crosscheck_reduced_vs_full(SamplerSpec(kind, n, 10, SEED), 10_000)
            failures += rep.failures
            trials += rep.trials
            per[(n, kind.value)] = rep.spec["inseparable"]
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 600
    emit(5, ok, f"{trials} pairs, {failures} mismatches, {elapsed:.0f}s")
    assert ok


def test_6_grid_minor_certification(emit):
    t0 = time.perf_counter()
    results = []
    for n, values in ((4, [-1, 0, 1]), (5, [0, 1]), (5, [-1, 0, 1])):
        try:
            rep = grid_minor_certification(n, values)
            results.append((n, values, rep.trials, rep.failures))
        except BudgetExceeded:
            results.append((n, values, "over 10^7 budget, skipped", 0))
    elapsed = time.perf_counter() - t0
    ok = all(r[3] == 0 for r in results) and elapsed < 600
    emit(6, ok, f"{results}, {elapsed:.1f}s")
    assert ok


def test_7_semi_invariants(emit):
    inv = invariance_suite(SEED, 1000, 5, checks=["leftright_invariance"])
    rng = random.Random(SEED)
    xi_bad = 0
    for _ in range(100):
        A = random_tuple(rng, 6, 10)
        q = sorted(rng.sample(range(1, 7), 4))
        xi_bad += xi(A, q) != xi_by_expansion(*(A[i - 1] for i in q))
    sig = [sigma_suite(SEED, 1000, n) for n in (1, 2, 3, 4)]
    sig_fail = sum(r.failures for r in sig)
    ok = inv.failures == 0 and xi_bad == 0 and sig_fail == 0
    emit(7, ok, f"H-invariance 1000 trials: {inv.failures} failures; xi vs expansion 100: "
                f"{xi_bad}; sigma 4x1000: {sig_fail} failures "
                f"(inseparable {[r.spec['inseparable'] for r in sig]})")
    assert ok


def test_8_orbit_geometry(emit):
    rep = geometry_suite(SEED, 1000, 4)
    checks = {k: v["failures"] for k, v in rep.checks.items()}
    ok = rep.failures == 0 and all(v["trials"] == 1000 for v in rep.checks.values())
    emit(8, ok, f"1000 trials each: failures {checks}")
    assert ok
