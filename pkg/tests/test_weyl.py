from __future__ import annotations

import pytest

from pidisc.disc import free_discriminant
from pidisc.scalars import CharacteristicError, FieldError, FieldSpec, root_of_unity
from pidisc.traces import tr_regular
from pidisc.weyl import WeylParamError, WeylParams, build_weyl, check_center_condition, resolve_epsilon

Q = FieldSpec.rational()
F5 = FieldSpec.prime(5)
F13 = FieldSpec.prime(13)
F17 = FieldSpec.prime(17)


@pytest.fixture(scope="module")
def w1():
    return build_weyl(WeylParams(Q, (1,), (Q(-1),)))


@pytest.fixture(scope="module")
def w2():
    return build_weyl(WeylParams(Q, (2,), (Q(-1), Q(-1))))


def test_center_condition_examples():
    assert check_center_condition(WeylParams(Q, (1,), (-1,)))
    z2, z4 = root_of_unity(13, 2), root_of_unity(13, 4)
    assert not check_center_condition(WeylParams(F13, (2,), (z4, z2)))
    assert check_center_condition(WeylParams(F13, (2,), (z2, z4)))
    # different blocks impose nothing on each other
    assert check_center_condition(WeylParams(F13, (1, 1), (z4, z2)))


def test_center_condition_failure_refuses_build():
    z2, z4 = root_of_unity(13, 2), root_of_unity(13, 4)
    with pytest.raises(WeylParamError):
        build_weyl(WeylParams(F13, (2,), (z4, z2)))


@pytest.mark.parametrize("lam, eps", [((1,), (1,)), ((1,), (0,)), ((1,), (-1, -1)), ((0,), ()), ((1, 2), (-1, -1, -1))])
def test_bad_params(lam, eps):
    with pytest.raises(WeylParamError):
        WeylParams(Q, lam, eps)


def test_epsilon_must_be_root_of_unity():
    with pytest.raises(FieldError):
        WeylParams(Q, (1,), (2,))


def test_bad_chi():
    with pytest.raises(WeylParamError):
        WeylParams(F5, (1, 1), (-1, -1), chi=[[1, 2], [2, 1]])


def test_resolve_epsilon():
    assert resolve_epsilon(F13, [{"order": 4}, {"residue": 12}, -1]) == (root_of_unity(13, 4), 12, 12)
    with pytest.raises(WeylParamError):
        resolve_epsilon(F13, [{"bogus": 1}])


def test_rank_one_relations(w1):
    A = w1.algebra
    b = A.basis_element
    assert list(A.labels) == ["1", "x1", "y1", "x1y1"]
    assert b("y1") * b("x1") == A.one() - b("x1y1")
    assert b("x1") * b("x1") == A.central(A.center.var("X1"))
    assert b("y1") * b("y1") == A.central(A.center.var("Y1"))


def test_rank_two_block_relation(w2):
    # x2 y2 = -y2 x2 + 1 - 2 y1 x1 inside one block with eps = (-1, -1)
    A = w2.algebra
    x1, y1, x2, y2 = w2.x(1), w2.y(1), w2.x(2), w2.y(2)
    assert x2 * y2 == -(y2 * x2) + A.one() - (y1 * x1) * 2


def test_z_element_rank_one(w1):
    A = w1.algebra
    (z,) = w1.z_elements()
    assert z == A.element({"1": -1, "x1y1": 2})
    assert z * w1.x(1) == -(w1.x(1) * z)
    assert z * w1.y(1) == -(w1.y(1) * z)


@pytest.mark.parametrize("lam, eps, p", [
    ((2,), (-1, -1), 17),
    ((2,), ("z2", "z4"), 13),
    ((1, 1), (-1, -1), 17),
])
def test_z_normal_and_powers(lam, eps, p):
    F = FieldSpec.prime(p)
    eps = tuple(root_of_unity(p, int(e[1:])) if isinstance(e, str) else e for e in eps)
    W = build_weyl(WeylParams(F, lam, eps))
    A = W.algebra
    zs = W.z_elements()
    for i, z in enumerate(zs):
        e_inv = F.inv(W.params.epsilon[i])
        # z_i x_i = eps_i^-1 x_i z_i and z_i y_i = eps_i y_i z_i
        assert z * W.x(i + 1) == (W.x(i + 1) * z) * e_inv
        assert z * W.y(i + 1) == (W.y(i + 1) * z) * W.params.epsilon[i]
        assert z ** W.d[i] == A.central(W.Z_centrals()[i])


def test_block_locality():
    W = build_weyl(WeylParams(F17, (1, 1), (-1, -1)))
    z2 = W.z_elements()[1]
    assert all(not (("x1" in W.algebra.labels[k]) or ("y1" in W.algebra.labels[k])) for k in z2.coeffs)


def test_Z_recursion():
    W1 = build_weyl(WeylParams(Q, (1,), (-1,)))
    C = W1.center
    assert W1.Z_centrals() == [C.parse("1 - 4*Y1*X1")]
    W = build_weyl(WeylParams(F17, (2,), (-1, -1)))
    C = W.center
    Z1, Z2 = W.Z_centrals()
    assert Z1 == C.parse("1 - 4*Y1*X1")
    assert Z2 == C.parse("-4*Y2*X2") + Z1


def test_predicted_discriminant(w1):
    C = w1.center
    assert w1.predicted_discriminant() == C.parse("2*(1 - 4*X1*Y1)^2")
    W3 = build_weyl(WeylParams(F13, (1,), (root_of_unity(13, 3),)))
    Z = W3.Z_centrals()[0]
    assert W3.predicted_discriminant() == Z ** 6 * W3.center.const(3)
    W11 = build_weyl(WeylParams(F17, (1, 1), (-1, -1)))
    Z1, Z2 = W11.Z_centrals()
    assert W11.predicted_discriminant() == (Z1 ** 8) * (Z2 ** 8) * W11.center.const(4)


def test_discriminant_matches_prediction_up_to_scalar(w1):
    A = w1.algebra
    disc = free_discriminant(A, tr_regular(A))
    assert disc == A.center.parse("-16*(1 - 4*X1*Y1)^2")
    quotient = disc.exact_div(w1.predicted_discriminant())
    assert quotient.is_constant() and quotient.constant_value() == -8


def test_prediction_guard():
    F3 = FieldSpec.prime(3)
    W = build_weyl(WeylParams(F3, (1,), (-1,)), verify=False)
    W.r = 3  # r divisible by the characteristic
    with pytest.raises(CharacteristicError):
        W.predicted_discriminant()


def test_azumaya_predicate(w1):
    assert w1.azumaya_predicate((1, 0))
    assert w1.azumaya_predicate((0, 0))
    W5 = build_weyl(WeylParams(F5, (1,), (-1,)))
    assert not W5.azumaya_predicate((1, 4))


def test_shifted_exponent_convention():
    # representatives 1..d instead of 0..d-1: same generic rank, discriminant changes by a square
    from pidisc.pialg import _coordinate_matrix, generic_rank
    from pidisc.polyring import PolyMatrix, bareiss_det

    W = build_weyl(WeylParams(Q, (1,), (-1,)))
    A = W.algebra
    t = tr_regular(A)
    shifted = [W.x(1) ** a * W.y(1) ** b for a in (1, 2) for b in (1, 2)]
    assert generic_rank(A, shifted) == 4
    G = PolyMatrix(A.center, [[t(u * v) for v in shifted] for u in shifted])
    c = bareiss_det(_coordinate_matrix(A, shifted))
    assert bareiss_det(G) == free_discriminant(A, t) * c * c
    # xy, xY, Xy, XY against the normal basis 1, x, y, xy
    assert c in (A.center.parse("X1^2*Y1^2"), A.center.parse("-X1^2*Y1^2"))
