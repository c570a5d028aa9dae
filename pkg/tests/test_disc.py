from __future__ import annotations

import pytest

from pidisc.disc import (
    BudgetExceeded,
    d_generators_restricted,
    free_discriminant,
    gram,
    md_generators,
    point_gram_rank,
    zero_set_membership,
)
from pidisc.pialg import NotFreeError, build_matrix_order, build_quantum_affine, build_structure_constants
from pidisc.polyring import IdealGens, PolyMatrix, linear_membership, monomial_ideal_equal
from pidisc.scalars import FieldSpec
from pidisc.traces import tr_reduced, tr_regular, tr_standard
from pidisc.weyl import WeylParams, build_weyl

Q = FieldSpec.rational()


@pytest.fixture(scope="module")
def weyl_q():
    A = build_weyl(WeylParams(Q, (1,), (-1,))).algebra
    return A, tr_regular(A)


@pytest.fixture(scope="module")
def mo():
    A = build_matrix_order(Q)
    return A, tr_standard(A)


@pytest.fixture(scope="module")
def qa():
    A = build_quantum_affine(Q)
    return A, tr_standard(A)


def ideal(ring, *texts):
    return IdealGens(ring, [ring.parse(t) for t in texts])


def test_gram_rank_one_module():
    A = build_structure_constants(Q, ["s"], ["1"], {}, "1")
    t = tr_regular(A)
    assert gram(A, t).matrix.rows == [[A.center.one()]]
    assert free_discriminant(A, t) == A.center.one()


def test_weyl_gram(weyl_q):
    A, t = weyl_q
    C = A.center
    expected = PolyMatrix(C, [
        [4, 0, 0, 2],
        [0, C.parse("4*X1"), 2, 0],
        [0, 2, C.parse("4*Y1"), 0],
        [2, 0, 0, C.parse("2 - 4*X1*Y1")],
    ])
    assert gram(A, t).matrix == expected


def test_matrix_order_gram_pattern(mo):
    A, t = mo
    G = gram(A, t).matrix
    xy = ideal(A.center, "x", "y")
    for i in range(5):
        for j in (3, 4):
            assert linear_membership(G[i, j], xy, 2) and linear_membership(G[j, i], xy, 2)


def test_level_one_is_trace_ideal(mo):
    A, t = mo
    res = md_generators(A, t, 1)
    assert A.center.one() in res.ideal.generators


def test_matrix_order_top_levels(mo):
    A, t = mo
    C = A.center
    md4 = md_generators(A, t, 4).ideal
    d4 = d_generators_restricted(A, t, 4).ideal
    # the ideals computed exactly: MD_4 = <x,y>^2 and the principal-minor part <x^2, y^2>
    assert monomial_ideal_equal(md4, ideal(C, "x^2", "x*y", "y^2"))
    assert monomial_ideal_equal(d4, ideal(C, "x^2", "y^2"))
    xy = ideal(C, "x", "y")
    assert all(linear_membership(g, xy, g.degree()) for g in md4.generators)
    assert not linear_membership(C.parse("x"), md4, 6)
    assert md_generators(A, t, 5).ideal.is_zero()
    assert d_generators_restricted(A, t, 5).ideal.is_zero()


def test_quantum_affine_levels(qa):
    A, t = qa
    C = A.center
    small = ideal(C, "a*b", "a*c", "a*d")
    mixed = ideal(C, "a^2*c^2", "a^2*c*d", "a^2*b*c", "a^2*b*d", "a^2*b^2")
    assert monomial_ideal_equal(md_generators(A, t, 3).ideal, small)
    assert monomial_ideal_equal(md_generators(A, t, 4).ideal, mixed)
    assert md_generators(A, t, 5).ideal.is_zero()


def test_restricted_full_level_is_discriminant(weyl_q):
    A, t = weyl_q
    res = d_generators_restricted(A, t, 4, dedupe=False)
    assert res.ideal.generators == [free_discriminant(A, t)]
    assert md_generators(A, t, 5).ideal.is_zero()


def test_free_discriminant_needs_free(mo):
    A, t = mo
    with pytest.raises(NotFreeError):
        free_discriminant(A, t)


def test_budget(qa):
    A, t = qa
    with pytest.raises(BudgetExceeded):
        md_generators(A, t, 3, max_dets=10)


def test_point_gram_rank():
    A, t = build_weyl(WeylParams(Q, (1,), (-1,))).algebra, None
    t = tr_regular(A)
    assert point_gram_rank(A, t, (1, 0)) == 4
    F5 = FieldSpec.prime(5)
    A5 = build_weyl(WeylParams(F5, (1,), (-1,))).algebra
    assert point_gram_rank(A5, tr_regular(A5), (1, 4)) == 2
    M = build_matrix_order(Q)
    assert point_gram_rank(M, tr_standard(M), (0, 0)) == 2
    assert point_gram_rank(M, tr_reduced(M), (0, 0)) == 2


def test_zero_set_membership(mo):
    A, t = mo
    assert not zero_set_membership(A, t, 1, (0, 0))
    assert zero_set_membership(A, t, 4, (0, 0))
    assert not zero_set_membership(A, t, 4, (1, 0))


def test_result_json(mo):
    A, t = mo
    data = md_generators(A, t, 4).to_json()
    assert data == {
        "level": 4, "variant": "MD", "trace": "std", "determinants": 25,
        "generators": ["x^2", "x*y", "y^2"],
    }
