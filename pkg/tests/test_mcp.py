import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from mcpoisson.ce import build_ce_mcp, lie_poisson_matrix
from mcpoisson.mcp import (McpPoint, adjoint_delta, check_adjointness, check_anchor, check_graded_jacobi,
                           cotangent_algebra, five_term_polynomial, flow_step, gradient_from_polynomial,
                           infer_k, isotropy_algebra, jacobiator, nu_map, o_operator, poisson_eval,
                           poisson_polynomial, rho_map, verify_mcp)
from mcpoisson.poly import Polynomial
from conftest import h3, sl2, structure, unit

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def test_heisenberg_adjoint_delta():
    s = build_ce_mcp(h3())
    delta = adjoint_delta(s, [1, 2, 3])
    assert delta[2].apply(unit(3, 0)) == [0, 0, -1]   # delta(e1 ^ e2) = -e3
    assert delta[2].apply(unit(3, 1)) == [0, 0, 0]
    assert check_adjointness(s, [1, 2, 3]).passed


def test_zero_point_maps_vanish():
    s = structure("frobenius", "kxy22")
    x = [0]
    assert all(m.is_zero() for m in adjoint_delta(s, x).values())
    assert rho_map(s, x).is_zero()
    assert nu_map(s, x).is_zero()


def test_heisenberg_poisson_tensor_vanishes():
    s = build_ce_mcp(h3())
    for x in ([1, 0, 0], [F(2, 3), -1, 4]):
        for a in range(3):
            for b in range(3):
                assert poisson_eval(s, x, unit(3, a), unit(3, b)) == 0


def test_o_operators_trivial_for_trivial_bracket():
    s = build_ce_mcp(sl2())
    x = s.sample_mc(1, 3)[0]
    for j in range(3):
        assert o_operator(s, x, unit(3, j)).is_zero()


def test_sl2_matches_lie_poisson_oracle():
    s = build_ce_mcp(sl2())
    for x in s.sample_mc(3, 1):
        assert McpPoint(s, x).poisson_matrix() == lie_poisson_matrix(s, x)


def test_flavor_constants():
    assert infer_k(build_ce_mcp(h3()), [1, 2, 3]) == (True, 0)
    s = structure("poisson", "kodaira_thurston")
    assert infer_k(s, s.model.pi) == (True, 1)
    s = structure("frobenius", "kx3y4")
    ok, k = infer_k(s, s.sample_mc(1, 0)[0])
    assert ok and k in (None, 1)


def test_verify_mcp_reports():
    rep = verify_mcp(build_ce_mcp(sl2()), bv_points=1)
    assert rep.passed, rep.as_dict()
    names = {r.name for r in rep.results}
    assert {"property1", "adjointness", "property3", "order2", "anchor"} <= names


def test_verify_mcp_flags_non_mc_points():
    s = structure("poisson", "kodaira_thurston")
    x = s.sample_non_mc(1, 0)[0]
    rep = verify_mcp(s, points=[x])
    assert not rep.passed


def test_anchor_identity_on_kodaira_thurston_bivector():
    s = structure("poisson", "kodaira_thurston")
    assert check_anchor(s, s.model.pi).passed


def test_five_term_formula_matches_differentiation():
    s = structure("frobenius", "kx3y4")
    rng = random.Random(7)
    f = Polynomial.random(s.m, 3, rng, nterms=6)
    g = Polynomial.random(s.m, 3, rng, nterms=6)
    assert poisson_polynomial(s, f, g)
    assert five_term_polynomial(s, f, g) == gradient_from_polynomial(s, poisson_polynomial(s, f, g))


def test_jacobiator_linear_functions_degenerate_direction():
    s = build_ce_mcp(h3())
    x = [1, 0, 0]
    f, g, h = Polynomial.variables(3)
    assert jacobiator(s, x, f, g, h) == 0


def test_flow_fixed_when_gradient_is_a_cycle():
    s = build_ce_mcp(h3())
    # Df = e1 ^ e3 is delta-closed, so the orbit does not move
    f = Polynomial.variable(3, 1)
    st_ = flow_step(s, [1, 1, 1], f, F(1, 2))
    assert st_.velocity == [0, 0, 0] and st_.x_next == [1, 1, 1]


def test_flow_step_conserves_on_poisson_model():
    s = structure("poisson", "filiform6")
    x = s.sample_mc(1, 0)[0]
    f = Polynomial.random(s.m, 2, random.Random(1), nterms=5)
    step = flow_step(s, x, f, F(1, 10))
    assert step.conservation == 0
    assert not any(step.residual_linear)
    assert step.value_linear == 0
    assert step.in_orbit_tangent


def test_cotangent_algebra_abelian_at_zero():
    s = structure("frobenius", "kxy22")
    c = cotangent_algebra(s, [0])
    assert c["c"].is_abelian()


def test_cotangent_graded_jacobi_on_sl2():
    s = build_ce_mcp(sl2())
    x = s.sample_mc(1, 0)[0]
    c = cotangent_algebra(s, x)
    assert check_graded_jacobi(c["graded"], c["bracket"]).passed


def test_isotropy_h_equals_j_for_trivial_bracket():
    s = build_ce_mcp(sl2())
    x = s.sample_mc(1, 2)[0]
    iso = isotropy_algebra(s, x)
    assert iso["closure_h"] and iso["closure_j"]
    assert iso["h"] == iso["j"]


@settings(max_examples=15, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3).filter(any))
def test_poisson_tensor_antisymmetric_and_anchored(x):
    s = build_ce_mcp(sl2())
    P = McpPoint(s, x).poisson_matrix()
    assert P == P.T.scale(-1)
    assert check_anchor(s, x).passed


def test_wrong_length_point_rejected():
    with pytest.raises(ValueError):
        McpPoint(build_ce_mcp(h3()), [1, 2])
