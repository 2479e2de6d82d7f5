import pytest

from mcpoisson.ce import (CEComplex, LieAlgebra, LieAlgebraError, build_ce_mcp, extension_algebra, mc_set)
from mcpoisson.dgla import check_dgla_axioms
from conftest import built, h3, sl2


def abelian(n):
    return LieAlgebra(n, {}, name=f"ab{n}")


def test_abelian_differential_vanishes():
    cx = CEComplex(abelian(4))
    assert all(m.is_zero() for m in cx.d.values())
    assert cx.betti() == [1, 4, 6, 4, 1]


def test_betti_and_homology_agree():
    for g in (h3(), sl2(), built("nilpotent4_kt")):
        cx = CEComplex(g)
        assert cx.betti() == cx.homology()
    assert CEComplex(h3()).betti() == [1, 2, 2, 1]
    assert CEComplex(sl2()).betti() == [1, 0, 0, 1]


def test_abelian_extension_algebra():
    for n in (2, 3, 4):
        E = extension_algebra(abelian(n))
        assert E.dim == n * (n - 1) // 2
        assert E.is_abelian()
        assert E.dimension_identity() == (E.dim, E.dim, 0)


def test_heisenberg_extension_algebra():
    E = extension_algebra(h3())
    assert E.dimension_identity() == (3, 2, 1)
    assert E.is_abelian()
    assert E.center_check() and E.phi_is_homomorphism()


def test_sl2_extension_is_sl2_via_minus_delta():
    g = sl2()
    E = extension_algebra(g)
    assert E.dimension_identity() == (3, 0, 3)
    consts = E.structure_constants_via_phi()
    for i in range(3):
        for j in range(3):
            assert consts[(i, j)] == g.bracket(g.basis_vector(i), g.basis_vector(j))
    assert E.splits() and E.projection_identity()


def test_extension_hodge_decomposition():
    for g in (h3(), sl2(), built("nilpotent4_kt")):
        h = extension_algebra(g).hodge()
        assert h["sums_to_total"] and h["orthogonal"]


def test_mc_sets():
    assert mc_set(build_ce_mcp(abelian(4))).dim == 6
    assert mc_set(build_ce_mcp(h3())).dim == 3
    assert mc_set(build_ce_mcp(built("nilpotent4_kt"))).dim == 5


def test_ce_dgla_axioms_on_catalog_lie_cards():
    for name in ("heisenberg3", "sl2", "so3", "nilpotent4_kt"):
        assert check_dgla_axioms(build_ce_mcp(built(name)).dgla).passed


def test_bad_structure_constants_rejected():
    with pytest.raises(LieAlgebraError, match=r"\(1,2,3\)"):
        LieAlgebra(3, {(0, 1): {2: 1}, (1, 0): {2: 1}})
    with pytest.raises(LieAlgebraError, match="Jacobi"):
        LieAlgebra(3, {(0, 1): {2: 1}, (1, 2): {1: 1}, (0, 2): {0: 1}})
