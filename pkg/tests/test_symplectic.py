from fractions import Fraction as F

import pytest

from mcpoisson.ce import LieAlgebra
from mcpoisson.mcp import McpPoint, infer_k
from mcpoisson.symplectic import (KAlgebra, SymplecticError, build_symplectic_model, check_nu_compatible,
                                  check_sub_dgla, dd_lambda_cohomology, forms_flow_velocity, hard_lefschetz,
                                  isotropy_comparison, k_algebra, modular_vector, orbit_poisson_nondegenerate,
                                  poisson_delta_formula, symplectic_flow_step)
from conftest import built, structure, unit


def kt():
    return built("kodaira_thurston")


def test_torus_operators_vanish():
    m = built("torus4")
    assert all(m.d(p).is_zero() for p in range(5))
    assert all(m.dlam[p].is_zero() for p in range(5))
    assert all(m.delta[p].is_zero() for p in range(1, 5))


def test_kodaira_thurston_operators():
    m = kt()
    assert not any(m.d(2).apply(m.omega))
    assert any(not m.dlam[p].is_zero() for p in range(5))
    assert all(r.passed for r in m.check_identities())


def test_dimension_two_model_is_lefschetz():
    m = build_symplectic_model(LieAlgebra(2, {}), {(0, 1): 1})
    assert hard_lefschetz(m)[0]
    assert dd_lambda_cohomology(m).k_dims == {}


def test_invalid_models_rejected():
    with pytest.raises(SymplecticError, match="degenerate"):
        build_symplectic_model(LieAlgebra(4, {}), {(0, 1): 1})
    with pytest.raises(SymplecticError, match="closed"):
        build_symplectic_model(LieAlgebra(4, {(0, 1): {2: 1}}), {(0, 1): 1, (2, 3): 1})


FROZEN = {
    # betti, h_ddlam, k dims by shifted degree, hard Lefschetz, injective form degrees
    "torus4": ([1, 4, 6, 4, 1], [1, 4, 6, 4, 1], {}, True, []),
    "kodaira_thurston": ([1, 3, 4, 3, 1], [1, 3, 5, 3, 1], {0: 1, 1: 1}, False, [3]),
    "nilpotent6": ([1, 4, 9, 12, 9, 4, 1], [1, 4, 11, 14, 11, 4, 1], {0: 2, 1: 4, 2: 4, 3: 2}, False, [3, 4, 5]),
    "filiform6": ([1, 2, 3, 4, 3, 2, 1], [1, 2, 5, 6, 5, 2, 1], {0: 2, 1: 3, 2: 3, 3: 2}, False, [3, 4, 5]),
}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_cohomology(name):
    betti, hdd, kd, hl, not_injective = FROZEN[name]
    rep = dd_lambda_cohomology(built(name), with_orbit=False)
    assert rep.betti == betti and rep.h_ddlam == hdd and rep.h_dlam == betti
    assert rep.k_dims == kd and rep.hard_lefschetz is hl
    assert [p for p, ok in enumerate(rep.injective) if not ok] == not_injective
    assert rep.inequality_holds
    assert rep.h_ddlam[:2] == rep.betti[:2]
    assert rep.k_dims.get(0, 0) == rep.h_ddlam[2] - rep.betti[2]
    assert rep.equality == rep.hard_lefschetz == (rep.k_dim == 0)


def test_kodaira_thurston_lefschetz_fails_on_h1():
    ok, table = hard_lefschetz(kt())
    assert not ok
    row = next(r for r in table if r["k"] == 1)
    assert row["source"] == 1 and row["rank"] < 3


def test_k_algebra_checks():
    for name in ("kodaira_thurston", "filiform6"):
        K = k_algebra(built(name))
        assert all(r.passed for r in K.checks())
    assert KAlgebra(built("torus4")).dims() == {}


def test_nilpotent6_hdd_bracket_nonzero():
    K = KAlgebra(built("nilpotent6"))
    assert K.table("hdd")
    assert K.table("k") == {}


def test_poisson_mcp_constant_and_sub_dgla():
    s = structure("poisson", "kodaira_thurston")
    assert infer_k(s, s.model.pi) == (True, 1)
    assert check_sub_dgla(s).passed
    assert check_nu_compatible(s, s.model.pi).passed


def test_poisson_delta_closed_formula():
    # the exact adjoint of [pi, .] is minus ([iota_pi, d] - iota_phi)
    m = kt()
    s = structure("poisson", "kodaira_thurston")
    p = McpPoint(s, m.pi)
    for j in range(1, 5):
        assert p.delta_matrix(j) == poisson_delta_formula(m, m.pi, j).scale(-1)
    assert not any(modular_vector(m, m.pi))


def test_orbit_nondegeneracy_and_isotropy():
    assert orbit_poisson_nondegenerate(built("torus4"))
    assert not orbit_poisson_nondegenerate(kt())
    checks, _ = isotropy_comparison(kt())
    assert all(r.passed for r in checks)


def test_forms_flow_is_dd_lambda():
    for name in ("kodaira_thurston", "filiform6"):
        m = built(name)
        for j in range(m.dim(2)):
            W = unit(m.dim(2), j)
            assert forms_flow_velocity(m, W) == m.ddlam(2).apply(m.lower(2, W))


def test_flow_steps():
    m = built("torus4")
    st = symplectic_flow_step(m, unit(6, 0), F(1, 3))
    assert st.omega_next == st.omega
    m = kt()
    # dd^L vanishes on 2-forms of the Kodaira-Thurston model
    assert m.ddlam(2).is_zero()
    m = built("filiform6")
    moving = [j for j in range(m.dim(2)) if any(m.ddlam(2).apply(unit(m.dim(2), j)))]
    assert moving
    st = symplectic_flow_step(m, unit(m.dim(2), moving[0]), F(1, 10))
    assert st.closed and st.same_class and st.nondegenerate
    assert st.omega_next != st.omega
