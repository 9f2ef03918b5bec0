import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from sepinv.errors import NotInSL2, NotTraceZero, SingularMatrix, SizeMismatch
from sepinv.linalg import bareiss, det, det3, rank
from sepinv.matrix import (
    E12,
    E21,
    H,
    W,
    Mat2,
    MatTuple,
    conj_act,
    coords,
    elementary,
    identity,
    leftright_act,
    permutation,
    random_scalar,
    random_sl2,
    require_trace_zero,
    star_act,
    tracefree_part,
    tracezero,
)
from sepinv.scalar import ZERO, GaussianRational
from strategies import mats, scalars, sl2, tuples


def leibniz(rows):
    """Determinant by the permutation expansion (oracle)."""
    n = len(rows)
    total = ZERO
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = GaussianRational(1)
        for r, c in enumerate(perm):
            term = term * rows[r][c]
        total = total + (-term if inv % 2 else term)
    return total


def naive_product(X, Y):
    a, b = X.rows(), Y.rows()
    return Mat2.from_rows([[sum((a[r][k] * b[k][c] for k in range(2)), ZERO) for c in range(2)]
                           for r in range(2)])


@given(mats, mats)
def test_product_and_trace(X, Y):
    P = X @ Y
    assert P == naive_product(X, Y)
    assert X.trace_mul(Y) == P.trace()
    assert X.trace_mul(Y) == Y.trace_mul(X)


@given(mats, mats, mats)
def test_associative(X, Y, Z):
    assert (X @ Y) @ Z == X @ (Y @ Z)


@given(mats, mats)
def test_det_multiplicative(X, Y):
    assert (X @ Y).det() == X.det() * Y.det()
    assert X.det() == leibniz(X.rows())


@given(mats)
def test_inverse_and_adjugate(X):
    assert X @ X.adjugate() == identity().scale(X.det())
    if X.det():
        assert X @ X.inverse() == identity()
    else:
        with pytest.raises(SingularMatrix):
            X.inverse()


def test_named_matrices():
    assert H.det() == -1 and H.trace() == 0
    assert W @ W == -identity()
    assert E12 @ E21 - E21 @ E12 == H
    assert Mat2(1, 2, 3, 4).transpose() == Mat2(1, 3, 2, 4)
    assert Mat2(1, 2, 0, 4).is_upper_triangular() and not E21.is_upper_triangular()


def test_tuple_basics():
    A = MatTuple([H, E12])
    assert A.n == 2 and A.slot(1) == H
    assert A.traces() == [0, 0]
    assert A.append(identity()).n == 3
    doc = A.to_json()
    assert doc["n"] == 2 and len(doc["matrices"]) == 2
    assert doc["matrices"][1][0][1] == {"re": "1/1", "im": "0/1"}


@given(scalars, scalars, scalars)
def test_tracezero_coords(b, c, a):
    X = tracezero(b, c, a)
    assert X.trace() == 0
    assert coords([X]) == ([a], [b], [c])
    assert X.det() == -(b * b) - c * a


def test_require_trace_zero():
    require_trace_zero([H, E12])
    with pytest.raises(NotTraceZero):
        require_trace_zero([identity()])


@given(tuples())
def test_tracefree_part(A):
    X, traces = tracefree_part(A)
    half = GaussianRational(Fraction(1, 2))
    for m, x, t in zip(A, X, traces):
        assert x.trace() == 0
        assert x + identity().scale(t * half) == m


# -- actions ----------------------------------------------------------------------

@given(sl2, sl2, tuples(max_n=3))
def test_conj_is_an_action(g, h, A):
    assert g.det() == 1
    assert conj_act(g, conj_act(h, A)) == conj_act(g @ h, A)
    assert conj_act(identity(), A) == A


@given(sl2, sl2, sl2, sl2, tuples(max_n=3))
def test_leftright_is_an_action(g1, g2, h1, h2, A):
    assert leftright_act(g1, g2, leftright_act(h1, h2, A)) == leftright_act(g1 @ h1, g2 @ h2, A)
    # conjugation is the diagonal of the left-right action
    assert leftright_act(g1, g1, A) == conj_act(g1, A)


def test_actions_require_sl2():
    with pytest.raises(NotInSL2):
        conj_act(Mat2(2, 0, 0, 1), [H])
    with pytest.raises(NotInSL2):
        leftright_act(identity(), H, [H])


def test_random_sl2_deterministic():
    a = random_sl2(random.Random(5))
    b = random_sl2(random.Random(5))
    assert a == b and a.det() == 1


def test_random_scalar_bounds():
    rng = random.Random(1)
    for _ in range(200):
        x = random_scalar(rng, 3, nonzero=True)
        assert x
        assert abs(x.re_num) <= 3 and 1 <= x.re_den <= 3


def test_star_elementary_and_permutation():
    A = MatTuple([H, E12, E21])
    B = star_act(elementary(3, 1, 2, 5), A)
    assert B == MatTuple([H + E12.scale(5), E12, E21])
    C = star_act(permutation(3, [3, 1, 2]), A)
    assert C == MatTuple([E21, H, E12])


def test_star_errors():
    A = MatTuple([H, E12])
    with pytest.raises(SizeMismatch):
        star_act([[1]], A)
    with pytest.raises(SingularMatrix):
        star_act([[1, 1], [2, 2]], A)


@given(sl2, tuples(min_n=2, max_n=2), st.lists(scalars, min_size=4, max_size=4))
def test_star_commutes_with_conj(g, A, h):
    hm = [h[:2], h[2:]]
    assume(h[0] * h[3] - h[1] * h[2])
    assert star_act(hm, conj_act(g, A)) == conj_act(g, star_act(hm, A))


# -- linear algebra ------------------------------------------------------------------

square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(scalars, min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_det_matches_leibniz(M):
    assert det(M) == leibniz(M)
    if len(M) == 3:
        assert det3(M) == leibniz(M)


@given(square)
def test_rank_and_singularity(M):
    r = rank(M)
    assert 0 <= r <= len(M)
    assert (r == len(M)) == bool(leibniz(M))


@given(st.lists(scalars, min_size=1, max_size=4), st.lists(scalars, min_size=1, max_size=4))
def test_rank_of_outer_product(u, v):
    M = [[x * y for y in v] for x in u]
    expected = 1 if any(u) and any(v) else 0
    assert rank(M) == expected


def test_bareiss_rectangular():
    rows = [[GaussianRational(x) for x in r] for r in ([1, 2, 3], [2, 4, 6], [0, 1, 1])]
    _, r, _ = bareiss(rows)
    assert r == 2
    assert rank([[0, 0], [0, 0]]) == 0
