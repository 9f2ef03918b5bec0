from fractions import Fraction
from itertools import product

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from sepinv.errors import NotASquare, ParseError, ZeroDenominator
from sepinv.scalar import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    canonicalize,
    format_fraction,
    parse_fraction,
    rational_sqrt,
    sqrt_in_field,
)
from strategies import fractions, nonzero_scalars, scalars


# independent oracle: complex numbers as pairs of Fractions
def pair(x):
    return Fraction(int(x.re_num), int(x.re_den)), Fraction(int(x.im_num), int(x.im_den))


def pmul(p, q):
    return p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0]


@given(scalars, scalars)
def test_ring_ops_match_fraction_pairs(x, y):
    px, py = pair(x), pair(y)
    assert pair(x + y) == (px[0] + py[0], px[1] + py[1])
    assert pair(x - y) == (px[0] - py[0], px[1] - py[1])
    assert pair(x * y) == pmul(px, py)


@given(scalars, nonzero_scalars)
def test_division(x, y):
    assert (x / y) * y == x
    assert y * y.inverse() == ONE


@given(scalars, scalars, scalars)
def test_distributive(x, y, z):
    assert x * (y + z) == x * y + x * z


@given(scalars)
def test_representation_is_reduced(x):
    for num, den in ((x.re_num, x.re_den), (x.im_num, x.im_den)):
        assert den > 0
        assert Fraction(int(num), int(den)).denominator == den


def test_i_squared():
    assert I * I == -ONE
    assert I ** 4 == ONE
    assert I ** -1 == -I


def test_mixed_equality_and_hash():
    half = GaussianRational(Fraction(1, 2))
    assert half == Fraction(1, 2)
    assert hash(half) == hash(Fraction(1, 2))
    assert GaussianRational(3) == 3 and hash(GaussianRational(3)) == hash(3)
    assert I != 0 and ZERO == 0


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_canonicalize():
    assert canonicalize(3, -6, 1, 1).parts() == (-1, 2, 1, 1)
    assert canonicalize(0, 5, 4, 2) == GaussianRational(0, 2)
    with pytest.raises(ZeroDenominator):
        canonicalize(1, 0, 0, 1)


@pytest.mark.parametrize("text,value", [("3/4", mpq(3, 4)), ("-6/8", mpq(-3, 4)), ("5", mpq(5)),
                                        ("2/-4", mpq(-1, 2)), (" 0/7 ", mpq(0))])
def test_parse_fraction(text, value):
    assert parse_fraction(text) == value


@pytest.mark.parametrize("bad", ["", "1/", "a/2", "1.5", "1_0", "1//2", "0x10"])
def test_parse_fraction_rejects(bad):
    with pytest.raises(ParseError):
        parse_fraction(bad)


def test_parse_zero_denominator():
    with pytest.raises(ZeroDenominator):
        parse_fraction("1/0")


@given(fractions)
def test_format_parse_roundtrip(q):
    text = format_fraction(q)
    assert "/" in text
    assert parse_fraction(text) == q


@given(scalars)
def test_json_roundtrip(x):
    assert GaussianRational.from_json(x.to_json()) == x


def test_json_shape():
    assert GaussianRational(Fraction(-1, 2), 3).to_json() == {"re": "-1/2", "im": "3/1"}


# -- square roots -----------------------------------------------------------------

def test_sqrt_examples():
    assert sqrt_in_field(GaussianRational(-1)) == I
    assert sqrt_in_field(GaussianRational(0, 2)) == GaussianRational(1, 1)
    assert sqrt_in_field(GaussianRational(Fraction(9, 4))) == GaussianRational(Fraction(3, 2))
    assert sqrt_in_field(ZERO) == ZERO
    assert rational_sqrt(mpq(49, 16)) == mpq(7, 4)


@pytest.mark.parametrize("x", [GaussianRational(2), GaussianRational(0, 1), GaussianRational(-2),
                               GaussianRational(1, 1), GaussianRational(Fraction(1, 2)),
                               GaussianRational(3, 5)])
def test_sqrt_non_squares(x):
    with pytest.raises(NotASquare):
        sqrt_in_field(x)


def _canonical(r):
    return r.re > 0 or (r.re == 0 and r.im >= 0)


@given(scalars)
def test_sqrt_of_square(y):
    r = sqrt_in_field(y * y)
    assert r * r == y * y
    assert r in (y, -y)
    assert _canonical(r)


def test_sqrt_agrees_with_brute_force():
    # Gaussian integers x with |re|, |im| <= 12: a root in Q(i) is a Gaussian
    # integer (Z[i] is integrally closed), of norm at most sqrt(288) < 17
    roots = {}
    for a, b in product(range(-17, 18), repeat=2):
        z = GaussianRational(a, b) * GaussianRational(a, b)
        roots.setdefault(z, GaussianRational(a, b))
    for p, q in product(range(-12, 13), repeat=2):
        x = GaussianRational(p, q)
        if x in roots:
            r = sqrt_in_field(x)
            assert r * r == x and _canonical(r)
        else:
            with pytest.raises(NotASquare):
                sqrt_in_field(x)


@given(st.integers(1, 50), st.integers(1, 50))
def test_sqrt_scales_with_rational_squares(num, den):
    s = GaussianRational(Fraction(num, den)) ** 2
    x = GaussianRational(0, 2)
    assert sqrt_in_field(x * s) == GaussianRational(1, 1) * GaussianRational(Fraction(num, den))
