import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exunits.gf import make_field
from exunits.mat2 import (IDEMPOTENT_RANK_ONE, IDENTITY, INVERTIBLE_OTHER, LAMBDA_IDEMPOTENT,
                          NILPOTENT_NONZERO, SCALAR_OTHER, ZERO, classify, gl2_order, identity,
                          mat, mat_ops, matrices, psi, psi_inv, similarity_classes)
from exunits.quat import Quaternion


def test_mat_ops_examples(gf3):
    assert mat_ops(gf3, "det", mat(gf3, [[1, 1], [1, 2]])) == gf3.one()
    assert identity(gf3).det() == gf3.one()
    M = mat(gf3, [[0, 1], [2, 0]])
    assert mat_ops(gf3, "mul", M, M) == -identity(gf3)


@pytest.mark.parametrize("q,order", [(3, 48), (2, 6), (5, 480)])
def test_gl2_order(q, order):
    assert gl2_order(q) == order


def test_gl2_order_by_scan():
    F = make_field(5)
    assert sum(1 for M in matrices(F) if M.is_invertible()) == 480


def test_classify_examples(gf3):
    F5 = make_field(5)
    assert classify(gf3, mat(gf3, [[1, 0], [0, 0]])).tag == IDEMPOTENT_RANK_ONE
    assert classify(gf3, mat(gf3, [[0, 1], [0, 0]])).tag == NILPOTENT_NONZERO
    c = classify(F5, mat(F5, [[2, 0], [0, 0]]))
    assert c.tag == LAMBDA_IDEMPOTENT and str(c) == "LambdaIdempotent(2)"
    assert classify(gf3, mat(gf3, [[0, 0], [0, 0]])).tag == ZERO
    assert classify(gf3, identity(gf3)).tag == IDENTITY
    assert classify(F5, mat(F5, [[3, 0], [0, 3]])).tag == SCALAR_OTHER
    assert classify(F5, mat(F5, [[0, 1], [1, 0]])).tag == INVERTIBLE_OTHER


@pytest.mark.parametrize("q", [(3, 1), (5, 1), (3, 2)])
def test_classify_matches_algebra(q):
    F = make_field(*q)
    for C in matrices(F):
        cls = classify(F, C)
        if cls.tag == IDEMPOTENT_RANK_ONE:
            assert C * C == C
        elif cls.tag == NILPOTENT_NONZERO:
            assert C * C == mat(F, [[0, 0], [0, 0]])
        elif cls.tag == LAMBDA_IDEMPOTENT:
            assert C * C == C * cls.lam
        assert cls.is_invertible == C.is_invertible()


def test_similarity_class_count(gf3):
    assert len(similarity_classes(gf3)) == 12
    assert len(similarity_classes(make_field(5))) == 30


def test_psi_examples(gf3):
    i = Quaternion(gf3.zero(), gf3.one(), gf3.zero(), gf3.zero())
    k = Quaternion(gf3.zero(), gf3.zero(), gf3.zero(), gf3.one())
    one = Quaternion(gf3.one(), gf3.zero(), gf3.zero(), gf3.zero())
    assert psi(gf3, i) == mat(gf3, [[1, 1], [1, 2]])
    assert psi(gf3, k) == mat(gf3, [[2, 1], [1, 1]])
    assert psi(gf3, one) == identity(gf3)
    assert psi(gf3, i) * psi(gf3, i) == -identity(gf3)


@st.composite
def field_quats(draw):
    F = make_field(*draw(st.sampled_from([(3, 1), (5, 1), (7, 1), (3, 2)])))
    el = lambda: F.from_index(draw(st.integers(0, F.q - 1)))
    return F, Quaternion(el(), el(), el(), el()), Quaternion(el(), el(), el(), el())


@settings(max_examples=100, deadline=None)
@given(field_quats())
def test_psi_is_ring_isomorphism(data):
    F, a, b = data
    assert psi(F, a + b) == psi(F, a) + psi(F, b)
    assert psi(F, a * b) == psi(F, a) * psi(F, b)
    assert psi(F, a).det() == a.norm()
    assert psi_inv(F, psi(F, a)) == a


def test_psi_needs_odd_field():
    with pytest.raises(ValueError):
        psi(make_field(2, 2), Quaternion(*(make_field(2, 2).zero(),) * 4))
