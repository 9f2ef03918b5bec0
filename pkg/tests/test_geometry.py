import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sepinv.errors import FieldExtensionRequired, NotInCFamily, NotTriangularizable, NotUpperTriangular
from sepinv.geometry import (
    FormClass,
    PairClassification,
    classify_pair,
    classify_pair_detailed,
    common_eigenlines,
    commutator_det,
    has_closed_orbit,
    is_triangularizable,
    m_matrix_and_rank,
    pair_form,
    torus_graph_condition,
    triangularize,
)
from sepinv.matrix import E12, E21, H, W, Mat2, MatTuple, conj_act, identity, tracezero
from sepinv.scalar import GaussianRational
from strategies import sl2, small_ints, tz_mats, upper_tuples

# the two-component example pair
EX_A = MatTuple([H, Mat2(1, 1, 0, -1), Mat2(1, 1, 0, -1)])
EX_B = MatTuple([H, H, Mat2(1, 1, 0, -1)])


@given(tz_mats, tz_mats)
def test_commutator_det_identity(X, Y):
    t = X.trace_mul(Y)
    assert commutator_det(X, Y) == 4 * X.det() * Y.det() - t * t


# -- triangularizability ---------------------------------------------------------------

def _complex(m):
    return np.array([[complex(float(e.re), float(e.im)) for e in row] for row in m.rows()])


def numeric_common_eigenvector(A):
    """Oracle: does the tuple have a common eigenvector over C (floating point)?"""
    mats = [_complex(m) for m in A]
    nonscalar = [M for M in mats if abs(M[0, 1]) + abs(M[1, 0]) + abs(M[0, 0] - M[1, 1]) > 1e-12]
    if not nonscalar:
        return True
    _, vecs = np.linalg.eig(nonscalar[0])
    for v in vecs.T:
        if all(abs(np.cross(np.append(M @ v, 0), np.append(v, 0))[2]) < 1e-7 for M in nonscalar):
            return True
    return False


small_mats = st.builds(Mat2, small_ints, small_ints, small_ints, small_ints).map(
    lambda m: m if m.e21 or m.e12 else m)
gauss_mats = st.builds(lambda a, b, c, d, e: Mat2(GaussianRational(a, e), b, c, d),
                       small_ints, small_ints, small_ints, small_ints, small_ints)


@given(st.lists(st.one_of(small_mats, gauss_mats), min_size=1, max_size=4))
def test_criterion_matches_common_eigenvector_oracle(mats):
    A = MatTuple(mats)
    assert is_triangularizable(A) == numeric_common_eigenvector(A)


@given(upper_tuples(max_n=4), sl2)
def test_conjugated_upper_tuples_are_recognized(U, g):
    A = conj_act(g, U)
    assert is_triangularizable(A)
    cert = triangularize(A)
    assert cert.det() == 1
    assert conj_act(cert, A).is_upper_triangular()


def test_triangularize_examples():
    assert triangularize(MatTuple([E12, H])) == identity()
    g = triangularize(MatTuple([E21]))
    assert conj_act(g, [E21]).is_upper_triangular()
    with pytest.raises(NotTriangularizable):
        triangularize(MatTuple([E12, E21]))
    with pytest.raises(FieldExtensionRequired):
        triangularize(MatTuple([Mat2(0, 1, 2, 0)]))


def test_common_eigenlines():
    lines = common_eigenlines(MatTuple([H]))
    assert lines[:2] == [(1, 0), (0, 1)]
    assert common_eigenlines(MatTuple([Mat2()])) == [(1, 0)]
    # rotation by 90 degrees has eigenvalues +-i, so the lines are over Q(i)
    lines = common_eigenlines(MatTuple([W]))
    assert len(lines) == 2
    for x, y in lines:
        image = (W.e11 * x + W.e12 * y, W.e21 * x + W.e22 * y)
        assert image[0] * y == image[1] * x


def test_closed_orbits():
    assert has_closed_orbit(MatTuple([H]))
    assert has_closed_orbit(MatTuple([H, H.scale(3)]))
    assert has_closed_orbit(MatTuple([E12, E21]))
    assert has_closed_orbit(MatTuple([Mat2(), Mat2()]))
    assert not has_closed_orbit(MatTuple([E12]))
    assert not has_closed_orbit(MatTuple([H, E12]))


# -- C families and classification ----------------------------------------------------

def test_pair_form_kinds():
    assert pair_form([H], [H]).kind is FormClass.IN_C
    assert pair_form([H], [-H]).kind is FormClass.IN_C_PRIME
    assert pair_form([E12], [E12.scale(2)]).kind is FormClass.IN_C0
    assert pair_form([H, H], [H, -H]).kind is FormClass.NOT_IN_C
    with pytest.raises(NotUpperTriangular):
        pair_form([E21], [E21])
    with pytest.raises(NotInCFamily):
        m_matrix_and_rank(pair_form([H, H], [H, -H]))


def test_example_pair():
    P = pair_form(EX_A, EX_B)
    m, r, nz = m_matrix_and_rank(P)
    assert P.kind is FormClass.IN_C and r == 3
    assert m.delta(1, 2, 3) == 1 and nz == [(1, 2, 3)]
    rep = classify_pair_detailed(EX_A, EX_B)
    assert rep.verdict is PairClassification.EXTRA_COMPONENT_ONLY
    assert rep.to_json()["delta_nonzero"] == [[1, 2, 3]]
    # padding with zero slots keeps the verdict
    pad = MatTuple(list(EX_A) + [Mat2()] * 2), MatTuple(list(EX_B) + [Mat2()] * 2)
    assert classify_pair(*pad) is PairClassification.EXTRA_COMPONENT_ONLY


def test_classification_routes():
    assert classify_pair([H, E12 + E21], [H, E12]) is PairClassification.NOT_EQUIVALENT
    # conjugate by a diagonal matrix: same orbit, a C pair of rank <= 2
    assert classify_pair([H, E12], [H, E12.scale(2)]) is PairClassification.BOTH
    assert classify_pair([E12, E21], [E12, E21]) is PairClassification.GRAPH_CLOSURE
    assert classify_pair([H, E12], [-H, -E12]) is PairClassification.GRAPH_CLOSURE
    # rank <= 2 C pair: in both components
    assert classify_pair([H, E12], [H, E12.scale(5)]) is PairClassification.BOTH
    assert classify_pair([E12], [Mat2()]) is PairClassification.BOTH


@given(st.lists(st.tuples(small_ints, small_ints, small_ints), min_size=1, max_size=5), sl2, sl2)
def test_c_pairs_follow_rank_and_survive_conjugation(cols, g1, g2):
    A = MatTuple(tracezero(b, c) for b, c, _ in cols)
    B = MatTuple(tracezero(b, cp) for b, _, cp in cols)
    _, r, _ = m_matrix_and_rank(pair_form(A, B))
    verdict = classify_pair(A, B)
    expected = PairClassification.BOTH if r <= 2 else PairClassification.EXTRA_COMPONENT_ONLY
    assert verdict is expected
    assert classify_pair(conj_act(g1, A), conj_act(g2, B)) is verdict


def test_torus_condition():
    assert torus_graph_condition(pair_form([H, E12 + H], [H, E12.scale(2) + H]))
    assert not torus_graph_condition(pair_form([E12, H], [E12, H + E12]))
    with pytest.raises(NotInCFamily):
        torus_graph_condition(pair_form([H], [-H]))
