"""JSON interchange for tuples and canonical output.

A tuple document looks like ``{"n": 1, "matrices": [[[s, s], [s, s]]]}`` where
each scalar ``s`` is ``{"re": "p/q", "im": "r/s"}``.
"""
from __future__ import annotations

import json
import sys
from typing import Any

from .errors import LengthMismatch, ParseError, ZeroDenominator
from .matrix import Mat2, MatTuple
from .scalar import GaussianRational

__all__ = ["parse_tuple", "serialize", "load_tuple", "read_text", "dumps"]


def _fail(path: str, msg: str):
    raise ParseError(f"{path}: {msg}")


def _scalar(obj, path: str) -> GaussianRational:
    try:
        return GaussianRational.from_json(obj)
    except ZeroDenominator as exc:
        raise ZeroDenominator(f"{path}: {exc}") from None
    except ParseError as exc:
        _fail(path, str(exc))


def _matrix(obj, path: str) -> Mat2:
    if not (isinstance(obj, list) and len(obj) == 2
            and all(isinstance(r, list) and len(r) == 2 for r in obj)):
        _fail(path, "expected a 2x2 array of scalars")
    (a, b), (c, d) = obj
    return Mat2._make(_scalar(a, f"{path}[0][0]"), _scalar(b, f"{path}[0][1]"),
                      _scalar(c, f"{path}[1][0]"), _scalar(d, f"{path}[1][1]"))


def parse_tuple(document: Any) -> MatTuple:
    """Build a MatTuple from a decoded JSON object or a JSON string."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(document, dict):
        _fail("$", "tuple document must be an object")
    if "n" not in document or "matrices" not in document:
        _fail("$", "missing 'n' or 'matrices'")
    n, mats = document["n"], document["matrices"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        _fail("$.n", f"expected a nonnegative integer, got {n!r}")
    if not isinstance(mats, list):
        _fail("$.matrices", "expected an array")
    if len(mats) != n:
        raise LengthMismatch(f"$.matrices: n = {n} but {len(mats)} matrices given")
    return MatTuple._make(_matrix(m, f"$.matrices[{i}]") for i, m in enumerate(mats))


def serialize(A) -> dict:
    return MatTuple._make(A).to_json() if not isinstance(A, MatTuple) else A.to_json()


def read_text(source: str) -> str:
    """Contents of a file, or of standard input for ``"-"``."""
    if source == "-":
        return sys.stdin.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def load_tuple(source: str) -> MatTuple:
    return parse_tuple(read_text(source))


def dumps(obj) -> str:
    """Canonical JSON: insertion key order, compact separators, one trailing newline."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True) + "\n"
