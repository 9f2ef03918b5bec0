"""Separating invariants for 2x2 matrix tuples over the Gaussian rationals.

Exact arithmetic throughout; see the submodules for the pieces:
``scalar`` (Q(i)), ``matrix`` (2x2 matrices, tuples, group actions),
``invariants`` (trace invariants), ``reduced`` (smaller separating sets),
``geometry`` (triangularization and inseparable-pair classification),
``semi`` (left-right semi-invariants), ``harness`` (samplers and suites),
``io`` and ``cli``.
"""
from .geometry import PairClassification, classify_pair, is_triangularizable, triangularize
from .invariants import eval_full_generators, eval_tracezero_generators, word_trace
from .matrix import Mat2, MatTuple, conj_act, leftright_act, star_act
from .reduced import Scheme, build_reduced_combinations, decide_equiv_full, decide_equiv_reduced
from .scalar import GaussianRational, sqrt_in_field
from .semi import decide_equiv_H, eval_H_generators, xi

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "sqrt_in_field",
    "Mat2",
    "MatTuple",
    "conj_act",
    "leftright_act",
    "star_act",
    "word_trace",
    "eval_full_generators",
    "eval_tracezero_generators",
    "Scheme",
    "build_reduced_combinations",
    "decide_equiv_full",
    "decide_equiv_reduced",
    "is_triangularizable",
    "triangularize",
    "classify_pair",
    "PairClassification",
    "eval_H_generators",
    "decide_equiv_H",
    "xi",
]
