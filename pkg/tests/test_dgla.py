from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from mcpoisson.ce import ce_dgla
from mcpoisson.dgla import (Dgla, check_dgla_axioms, gauge_vector, is_mc, mc_element, mc_residual,
                            orbit_tangent_space)
from mcpoisson.frobenius import FrobeniusModel
from mcpoisson.ratlin import RationalMatrix
from mcpoisson.symplectic import schouten_dgla
from conftest import h3, kxy, sl2

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def test_trivial_dgla_passes():
    g = Dgla({0: 2, 1: 1})
    assert check_dgla_axioms(g).passed


def test_ce_dgla_of_heisenberg_passes():
    rep = check_dgla_axioms(ce_dgla(h3()))
    assert rep.passed
    assert rep["d_squared"].checked > 0


def test_schouten_dgla_passes_and_corrupted_sign_fails():
    g = schouten_dgla(sl2())
    assert check_dgla_axioms(g).passed
    entry = g.brackets[(0, 1)][(0, 0)]
    bad = g.with_bracket_entry(0, 0, 1, 0, {c: -v for c, v in entry.items()})
    rep = check_dgla_axioms(bad)
    assert rep["skew_symmetry"].passed
    assert not rep["jacobi"].passed
    assert rep["jacobi"].witness is not None


def test_broken_differential_is_caught():
    d = RationalMatrix([[1]])
    g = Dgla({0: 1, 1: 1, 2: 1}, differential={0: d, 1: d})
    rep = check_dgla_axioms(g)
    assert not rep["d_squared"].passed
    assert rep["d_squared"].witness == (0, 0)


def test_mc_residual_examples():
    L = ce_dgla(h3())
    assert mc_residual(L, [0, 0, 0]) == [0]
    # every 2-form on h3 is closed
    assert mc_element(L, [1, F(-2, 3), 5]).is_mc
    model = FrobeniusModel(kxy())
    assert model.dgla.dim(1) == 1
    assert is_mc(model.dgla, [1]) and is_mc(model.dgla, [F(-7, 2)])


def test_mc_residual_rejects_wrong_degree():
    with pytest.raises(ValueError):
        mc_residual(ce_dgla(h3()), [1, 2])


def test_gauge_vector_on_heisenberg():
    L = ce_dgla(h3())
    x = [1, 2, 3]
    assert gauge_vector(L, x, [0, 0, 0]) == [0, 0, 0]
    # lambda = e3^v gives d e3^v = -e1^v ^ e2^v, independent of x
    assert gauge_vector(L, x, [0, 0, 1]) == [-1, 0, 0]
    assert gauge_vector(L, [0, 0, 0], [0, 0, 1]) == [-1, 0, 0]


def test_orbit_tangent_dimensions():
    assert orbit_tangent_space(Dgla({0: 2, 1: 3}), [0, 0, 0]).dim == 0
    T = orbit_tangent_space(ce_dgla(h3()), [1, 1, 1])
    assert T.dim == 1 and T.contains([1, 0, 0])
    assert orbit_tangent_space(ce_dgla(sl2()), [F(1, 2), 0, -1]).dim == 3


def test_orbit_tangent_needs_mc():
    g = schouten_dgla(sl2())
    # e ^ f is not Poisson on sl2: [x, x] = 2 h ^ e ^ f
    assert mc_residual(g, [0, 0, 1]) == [1]
    with pytest.raises(ValueError):
        orbit_tangent_space(g, [0, 0, 1])


@settings(max_examples=25, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3),
       st.lists(rationals, min_size=3, max_size=3))
def test_bracket_skew_on_schouten_bivectors(x, y, lam):
    g = schouten_dgla(sl2())
    assert g.bracket(1, x, 1, y) == g.bracket(1, y, 1, x)
    assert g.bracket(0, lam, 1, x) == [-c for c in g.bracket(1, x, 0, lam)]
