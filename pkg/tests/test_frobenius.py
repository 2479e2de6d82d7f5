from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from mcpoisson.frobenius import (Cochains, FrobeniusAlgebra, FrobeniusError, FrobeniusModel,
                                 check_multiplicative_relation, check_printed_adjointness,
                                 check_printed_property3, cone_poisson_tensor, frobenius_bv,
                                 gerstenhaber_consistency, poisson_cone, printed_delta, printed_property3_ratios,
                                 skew_multiderivations, x_bracket)
from mcpoisson.mcp import check_adjointness, infer_k
from conftest import kxy, structure

ONE_, X_, Y_, XY_ = range(4)   # basis 1, x, y, xy of k[x,y]/(x^2,y^2)


def trunc(*exps):
    return FrobeniusAlgebra.truncated_polynomial(exps)


def poisson_x():
    """The biderivation of k[x,y]/(x^2,y^2) with X(x, y) = xy."""
    A = kxy()
    D = skew_multiderivations(A, 2)
    assert D.dim == 1
    C = Cochains(A)
    X = D.vectors[0]
    c = x_bracket(C, X, X_, Y_)[XY_]
    return A, C, [v / c for v in X]


def test_algebra_basics():
    A = kxy()
    assert A.labels == ["1", "x", "y", "xy"]
    assert A.mul(A.basis_vector(X_), A.basis_vector(Y_)) == A.basis_vector(XY_)
    assert A.mul(A.basis_vector(X_), A.basis_vector(X_)) == [0, 0, 0, 0]
    assert A.inner(A.basis_vector(ONE_), A.basis_vector(XY_)) == 1


def test_derivations_of_dual_numbers():
    D = skew_multiderivations(trunc(2), 1)
    assert D.dim == 1
    # the derivation sends x to a multiple of x and 1 to 0
    d = D.vectors[0]
    assert d[0:2] == [0, 0] and d[2] == 0 and d[3] != 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_single_generator_algebras_have_no_biderivations(n):
    assert skew_multiderivations(trunc(n), 2).dim == 0


def test_kxy_biderivation_and_cone():
    A, C, X = poisson_x()
    assert x_bracket(C, X, X_, Y_) == [0, 0, 0, 1]
    assert x_bracket(C, X, Y_, X_) == [0, 0, 0, -1]
    assert x_bracket(C, X, ONE_, X_) == [0, 0, 0, 0]
    cone = poisson_cone(A)
    assert cone.ambient_dim == 1
    assert cone.identically_zero and cone.is_homogeneous_quadratic()


def test_printed_delta_on_x_tensor_y():
    A, C, X = poisson_x()
    chain = [0] * C.size(1)
    chain[Y_ * A.dim + X_] = 1          # x (x) y
    assert printed_delta(C, X, 1).apply(chain) == [0, 0, 0, 2]


def test_printed_delta_at_zero_vanishes():
    A, C, _ = poisson_x()
    assert printed_delta(C, [0] * C.size(2), 2).is_zero()


def test_printed_constant_is_vacuous_on_kxy():
    A, _, X = poisson_x()
    assert check_printed_property3(A, X, F(1, 2)).passed
    assert printed_property3_ratios(A, X) == (0, set())
    unit_ok, witness = gerstenhaber_consistency(A, X)
    assert unit_ok and witness is not None


def test_printed_constant_is_one_half():
    A = trunc(2, 3)
    X = skew_multiderivations(A, 2).vectors[1]
    assert printed_property3_ratios(A, X) == (2, {F(1, 2)})
    assert check_printed_property3(A, X, F(1, 2)).passed
    assert not check_printed_property3(A, X, 1).passed


def test_printed_bv_axioms_low_degree():
    A, _, X = poisson_x()
    from mcpoisson.bv import check_bv_axioms
    assert check_bv_axioms(frobenius_bv(A, X, top=2), max_total_degree=2, jacobi=False).passed


def test_printed_operator_is_not_the_adjoint():
    A, _, X = poisson_x()
    res = check_printed_adjointness(A, X, multiderivations_only=True, max_p=2)
    assert not res.passed
    assert res.witness["degree"] == 0 and res.witness["lhs"] == 0


def test_multiplicative_relation_fails_on_unit():
    A, _, X = poisson_x()
    res = check_multiplicative_relation(A, X)
    assert not res.passed and res.witness == ("1", "x", "y")


def test_adjoint_model_is_exact():
    s = structure("frobenius", "kxy22")
    for x in ([1], [F(-5, 3)]):
        assert check_adjointness(s, x).passed
    assert infer_k(s, [1])[0]


def test_cone_poisson_tensor_vanishes_for_kxy():
    s = structure("frobenius", "kxy22")
    assert all(not v for row in cone_poisson_tensor(s) for v in row)


def test_product_biderivations_respect_factors():
    P = kxy().product(kxy())
    model = FrobeniusModel(P)
    C = model.C
    n = kxy().dim
    assert model.der[2].dim == 2
    for X in model.der[2].vectors:
        for i in range(n):
            for j in range(n, 2 * n):
                assert not any(x_bracket(C, X, i, j))


def test_nondegenerate_form_required():
    with pytest.raises(FrobeniusError):
        FrobeniusAlgebra(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, [[1, 0], [0, 0]])


@settings(max_examples=20, deadline=None)
@given(st.fractions(min_value=-6, max_value=6, max_denominator=5),
       st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_cone_is_homogeneous(lam, x):
    s = structure("frobenius", "kx3y4")
    cone = s.cone
    assert cone.contains(x) == cone.contains([lam * c for c in x]) or lam == 0
