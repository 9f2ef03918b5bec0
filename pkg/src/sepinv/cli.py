"""``sepinv`` command line: invariants, separation decisions, classification and
verification suites, all with exact JSON output.

Exit codes: 0 success / inseparable, 1 separated (or a suite reported
failures), 2 error.
"""
from __future__ import annotations

import argparse
import sys

from .errors import FieldExtensionRequired, SepinvError
from .geometry import classify_pair_detailed, is_triangularizable, triangularize
from .harness import (
    SamplerKind,
    SamplerSpec,
    Report,
    crosscheck_reduced_vs_full,
    geometry_suite,
    grid_minor_certification,
    invariance_suite,
    sigma_suite,
)
from .invariants import cardinality_and_dimension, eval_full_generators, eval_tracezero_generators
from .io import dumps, load_tuple
from .matrix import conj_act, require_trace_zero
from .reduced import (
    Scheme,
    build_reduced_combinations,
    decide_equiv_full,
    eval_reduced_general,
    eval_reduced_profile,
    reduced_witness,
)
from .semi import decide_equiv_H, eval_H_generators, sigma

CROSSCHECK_KINDS = (
    SamplerKind.RANDOM_TUPLE,
    SamplerKind.SAME_ORBIT_PAIR,
    SamplerKind.C_PAIR,
    SamplerKind.C_PRIME_PAIR,
    SamplerKind.C0_PAIR,
    SamplerKind.PERTURBED_PAIR,
    SamplerKind.SIGN_FLIP_PAIR,
)


class UsageError(SepinvError):
    pass


def _scheme(args) -> Scheme:
    return Scheme.parse(args.scheme)


def cmd_invariants(args) -> int:
    A = load_tuple(args.input)
    if args.action == "conj":
        prof = eval_full_generators(A) if args.set == "full" else eval_reduced_general(A, _scheme(args))
    elif args.action == "conj-tracezero":
        if args.set == "full" or len(A) < 3:
            prof = eval_tracezero_generators(A)
        else:
            prof = eval_reduced_profile(A, build_reduced_combinations(len(A), _scheme(args)))
    else:
        if args.set != "full":
            raise UsageError("the left-right action only has the full set")
        prof = eval_H_generators(A)
    out = {"action": args.action, "set": args.set, "n": len(A),
           "family": prof.family.value, "profile": prof.to_json()}
    sys.stdout.write(dumps(out))
    return 0


def cmd_separate(args) -> int:
    A, B = load_tuple(args.a), load_tuple(args.b)
    if args.action == "conj":
        if args.set == "full":
            witness = decide_equiv_full(A, B)[1]
        elif args.set == "reduced":
            witness = reduced_witness(A, B, _scheme(args))
        else:
            witness = decide_equiv_H(sigma(A), sigma(B))[1]
    else:
        if args.set != "full":
            raise UsageError("the left-right action only has the full set")
        witness = decide_equiv_H(A, B)[1]
    out = {"action": args.action, "set": args.set, "inseparable": witness is None, "witness": witness}
    sys.stdout.write(dumps(out))
    return 0 if witness is None else 1


def cmd_classify(args) -> int:
    A, B = load_tuple(args.a), load_tuple(args.b)
    require_trace_zero(A)
    require_trace_zero(B)
    sys.stdout.write(dumps(classify_pair_detailed(A, B).to_json()))
    return 0


def cmd_triangularizable(args) -> int:
    A = load_tuple(args.input)
    ok = is_triangularizable(A)
    out = {"triangularizable": ok}
    if args.certificate:
        out["certificate"] = None
        if ok:
            try:
                g = triangularize(A)
                out["certificate"] = {"g": g.to_json(), "conjugate": conj_act(g, A).to_json()}
            except FieldExtensionRequired as exc:
                out["reason"] = f"field extension required: {exc}"
    sys.stdout.write(dumps(out))
    return 0


def cmd_reduced_set(args) -> int:
    sys.stdout.write(dumps(build_reduced_combinations(args.n, _scheme(args)).to_json()))
    return 0


def cmd_sizes(args) -> int:
    c = cardinality_and_dimension(args.n)
    keys = ("S_n", "S_prime", "dim_conj", "H_set", "dim_H")
    sys.stdout.write(dumps({k: c[k] for k in keys}))
    return 0


def cmd_verify(args) -> int:
    if args.suite == "reduced":
        report = Report("reduced", {"n": args.n, "trials": args.trials, "seed": args.seed,
                                    "scheme": _scheme(args).value})
        for kind in CROSSCHECK_KINDS:
            sub = crosscheck_reduced_vs_full(SamplerSpec(kind, args.n, args.bound, args.seed),
                                             args.trials, _scheme(args))
            report.merge(sub)
    elif args.suite == "minors":
        values = [int(v) for v in args.values.split(",")]
        report = grid_minor_certification(args.n, values, _scheme(args))
    elif args.suite == "invariance":
        report = invariance_suite(args.seed, args.trials, args.n, bound=args.bound)
    elif args.suite == "sigma":
        report = sigma_suite(args.seed, args.trials, args.n, bound=args.bound)
    else:
        report = geometry_suite(args.seed, args.trials, args.n, bound=args.bound)
    sys.stdout.write(dumps(report.to_json()))
    return 0 if report.failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sepinv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def scheme_arg(sp):
        sp.add_argument("--scheme", choices=["unit", "vandermonde"], default="unit")

    sp = sub.add_parser("invariants", help="evaluate an invariant family on a tuple")
    sp.add_argument("--action", choices=["conj", "conj-tracezero", "leftright"], default="conj")
    sp.add_argument("--set", choices=["full", "reduced"], default="full")
    sp.add_argument("--input", required=True, help="tuple JSON file, or - for stdin")
    scheme_arg(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("separate", help="decide whether two tuples are separated")
    sp.add_argument("--action", choices=["conj", "leftright"], default="conj")
    sp.add_argument("--set", choices=["full", "reduced", "sigma"], default="full")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    scheme_arg(sp)
    sp.set_defaults(func=cmd_separate)

    sp = sub.add_parser("classify", help="classify an inseparable trace-zero pair")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("triangularizable", help="simultaneous triangularizability test")
    sp.add_argument("--input", required=True)
    sp.add_argument("--certificate", action="store_true", help="also emit g with g A g^-1 upper-triangular")
    sp.set_defaults(func=cmd_triangularizable)

    sp = sub.add_parser("reduced-set", help="print the level combinations for n")
    sp.add_argument("--n", type=int, required=True)
    scheme_arg(sp)
    sp.set_defaults(func=cmd_reduced_set)

    sp = sub.add_parser("sizes", help="generating-set sizes and dimensions for n")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_sizes)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=["reduced", "minors", "invariance", "sigma", "geometry"],
                    required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bound", type=int, default=10)
    sp.add_argument("--values", default="-1,0,1", help="comma-separated grid values (minors suite)")
    scheme_arg(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def run_command(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:   # usage errors and --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (SepinvError, OSError) as exc:
        sys.stderr.write(f"sepinv: error: {type(exc).__name__}: {exc}\n")
        return 2


def main(argv=None) -> None:
    sys.exit(run_command(argv))
