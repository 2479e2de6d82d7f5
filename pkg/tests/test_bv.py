from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from mcpoisson.bv import (BvAlgebra, ExteriorProductAlgebra, check_bracket_jacobi, check_bv_axioms,
                          check_delta_squared, check_order2, derived_bracket, order2_defect, zero_delta)
from mcpoisson.ce import CEComplex
from mcpoisson.ratlin import RationalMatrix
from conftest import h3, sl2

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def ce_bv(g):
    cx = CEComplex(g)
    return BvAlgebra(ExteriorProductAlgebra(g.dim), cx.delta, name=g.name)


def test_zero_delta_is_bv_with_zero_bracket():
    A = ExteriorProductAlgebra(3)
    b = BvAlgebra(A, zero_delta(A))
    assert check_bv_axioms(b).passed
    assert derived_bracket(b, 1, {0: 1}, 1, {1: 1}) == {}


def test_heisenberg_chains():
    b = ce_bv(h3())
    assert b.apply_delta(2, {0: 1}) == {2: -1}          # delta(e1 ^ e2) = -e3
    assert derived_bracket(b, 1, {0: 1}, 1, {1: 1}) == {2: 1}   # [e1, e2] = e3
    rep = check_bv_axioms(b)
    assert rep.passed, rep.as_dict()
    assert rep["order2"].checked > 0


def test_sl2_chains_recover_lie_bracket():
    g = sl2()
    b = ce_bv(g)
    assert check_bv_axioms(b).passed
    for i in range(3):
        for j in range(3):
            got = derived_bracket(b, 1, {i: 1}, 1, {j: 1})
            want = {k: c for k, c in enumerate(g.bracket(g.basis_vector(i), g.basis_vector(j))) if c}
            assert got == want


def test_non_second_order_operator_fails_with_witness():
    A = ExteriorProductAlgebra(3)
    bad = BvAlgebra(A, {3: RationalMatrix([[1], [0], [0]])})   # delta(e123) = e12, zero below
    assert check_delta_squared(bad).passed
    res = check_order2(bad)
    assert not res.passed
    (i, x), (j, y), (k, z) = res.witness
    assert order2_defect(bad, i, {x: 1}, j, {y: 1}, k, {z: 1})


def test_bracket_jacobi_on_chains():
    for g in (h3(), sl2()):
        skew, jac = check_bracket_jacobi(ce_bv(g))
        assert skew.passed and jac.passed and jac.checked > 0


@settings(max_examples=30, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3))
def test_bracket_of_odd_element_with_itself_vanishes(a):
    b = ce_bv(sl2())
    u = {k: c for k, c in enumerate(a) if c}
    assert derived_bracket(b, 1, u, 1, u) == {}


@settings(max_examples=30, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3),
       st.lists(rationals, min_size=1, max_size=1))
def test_order2_identity_on_random_elements(a, c, top):
    b = ce_bv(sl2())
    u = {k: v for k, v in enumerate(a) if v}
    w = {k: v for k, v in enumerate(c) if v}
    assert order2_defect(b, 1, u, 2, w, 0, {0: F(top[0])}) == {}
    assert order2_defect(b, 1, u, 1, w, 1, u) == {}
