from fractions import Fraction
from itertools import product

import pytest
import sympy as sp

from twistlab.exact import Poly
from twistlab.lie import CATALOGUE, bplus, catalogue, sl2, sl3
from twistlab.precon import (DISPLAYED_TRILINEAR, MackeyModel, Preconnection, SL3Trilinear, b_plus_line_action,
                             canonical, expected_curvature, expected_torsion, linear_terms_cancel,
                             moduli_dimension, obstruction_formula, precon_curvature_torsion,
                             sl2_plane_action, sl3_trilinear_values, sln_obstruction)


@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_canonical_curvature_and_torsion(name):
    g = catalogue(name)
    P = canonical(g)
    for t in product(range(g.dim), repeat=3):
        v, w, z = ({i: 1} for i in t)
        assert P.curvature(v, w, z) == expected_curvature(g, v, w, z)
        assert P.torsion(v, w, z) == expected_torsion(g, v, w, z)
    for i, j in product(range(g.dim), repeat=2):
        assert not P.compatibility_defect({i: 1}, {j: 1})


def test_sl2_curvature_example():
    R, _ = precon_curvature_torsion(canonical(sl2()), 0, 1, 2)
    assert R == {0: Fraction(-1, 2)}


def test_moduli_dimensions():
    assert moduli_dimension(sl2()) == 0
    assert moduli_dimension(sl3()) == 1


def test_sl3_trilinear_against_determinant_expansion():
    a, b = sp.symbols("a b")
    m = sp.diag(a, b - a, -b)  # a t1 + b t2
    p = sp.Poly(sp.expand(m.det()), a, b)
    oracle = {"I111": p.coeff_monomial(a**3), "I112": p.coeff_monomial(a**2 * b) / 3,
              "I122": p.coeff_monomial(a * b**2) / 3, "I222": p.coeff_monomial(b**3)}
    got = sl3_trilinear_values()
    assert {k: sp.Rational(v.numerator, v.denominator) for k, v in got.items()} == oracle
    assert got == {"I111": 0, "I112": Fraction(1, 3), "I122": Fraction(-1, 3), "I222": 0}


def test_obstruction_formula_values():
    assert obstruction_formula(**sl3_trilinear_values()) == Fraction(1, 18)
    assert obstruction_formula(**DISPLAYED_TRILINEAR) == Fraction(739, 216)


def test_sl3_obstruction_is_nonzero():
    ob = sln_obstruction(3)
    assert ob["contraction"] == Fraction(1, 9)
    assert any(ob["curvature_vector"].values())


def test_xi_hat_is_symmetric_and_linear_terms_cancel():
    T = SL3Trilinear()
    assert all(T.xi_hat(i, j) == T.xi_hat(j, i) for i, j in product(range(8), repeat=2))
    assert linear_terms_cancel(sl3(), T.xi_hat)


def test_full_bracket_is_not_compatible():
    P = Preconnection(sl2(), half=1)
    assert P.compatibility_defect({1: 1}, {2: 1})


@pytest.mark.parametrize("g,action", [(bplus(), b_plus_line_action()), (sl2(), sl2_plane_action())])
def test_mackey_models(g, action):
    M = MackeyModel(g, *action)
    assert M.action_is_representation()
    assert M.bracket_table_ok()


def test_bplus_as_stated_action_reverses_bracket():
    M = MackeyModel(bplus(), *b_plus_line_action("as-stated"))
    assert not M.action_is_representation()
    s = M.f(Poly.var(("s",), "s"))
    P = M.precon
    assert P.nabla(M.v({0: 1}), P.d(s)) == P.d(s)


def test_mackey_curvature_vanishes_on_functions():
    g = sl2()
    M = MackeyModel(g, *sl2_plane_action())
    P = M.precon
    p = M.f(Poly.var(("p", "q"), "p"))
    for i, j in product(range(3), repeat=2):
        assert not P.curvature(M.v({i: 1}), M.v({j: 1}), P.d(p))
