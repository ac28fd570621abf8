from fractions import Fraction
from itertools import product

import pytest

from twistlab.dcalc import (SgCalculus, form_associator, form_product, leibniz_defect, spacetime_algebra,
                            spacetime_relations, sphere_calculus, sphere_form_products, sphere_preconnection_check)
from twistlab.exact import HSeries, SphereElem
from twistlab.geom import OneForm
from twistlab.lie import bplus, heisenberg3, sl2

ALPHAS = [Fraction(0), Fraction(-1, 4), Fraction(-1, 2)]


@pytest.mark.parametrize("make", [bplus, heisenberg3, sl2])
@pytest.mark.parametrize("alpha", ALPHAS)
def test_linear_form_products(make, alpha):
    C = SgCalculus(make(), alpha)
    for i, j in product(range(C.g.dim), repeat=2):
        v, w = C.lin({i: 1}), C.lin({j: 1})
        assert C.left(v, C.d(w)) == C.expected_left(i, j)
        assert C.right(C.d(w), v) == C.expected_right(i, j)


def test_second_order_terms_drop_out():
    C = SgCalculus(sl2())
    for i, j in product(range(3), repeat=2):
        assert all(not a and not b for _, a, b in C.second_order_contributions(i, j))


def test_commutator_is_the_canonical_preconnection():
    C = SgCalculus(sl2())
    assert all(got == want for _, _, got, want in C.preconnection_check())


def test_leibniz_on_sl2_monomials():
    C = SgCalculus(sl2())
    H, E, F = (C.lin({i: 1}) for i in range(3))
    for a, b in [(H * E, F), (E * E, F * H), (H, H * H)]:
        assert not leibniz_defect(C.Finv, C.real, a, b)


def test_spacetime_algebra():
    g = spacetime_algebra(2)
    assert g.bracket({0: 1}, {1: 1}) == {1: 1}
    assert not g.bracket({1: 1}, {2: 1})


@pytest.mark.parametrize("n", [1, 3])
def test_spacetime_relations(n):
    for name, (a, b, want) in spacetime_relations(n).items():
        assert a[1] == want and b[1] == want
        assert not a[0] and not a[2] and not b[0] and not b[2]


def test_sphere_form_products_match():
    for name, (got, want) in sphere_form_products().items():
        assert got == want, name


def test_sphere_commutators_are_the_levi_civita_connection():
    for name, comm, cov in sphere_preconnection_check():
        assert comm == cov, name


def test_sphere_form_associator():
    Finv, real, ch = sphere_calculus()
    x, y = SphereElem.x(), SphereElem.y()
    A = form_associator(Finv, real, x, OneForm.d(ch, y), x)
    assert not A[0] and not A[1]
    assert A[2] == OneForm.d(ch, y) * ((x * x - 1) * Fraction(1, 8))


def test_sphere_unit_form_product():
    Finv, real, ch = sphere_calculus()
    dx = OneForm.d(ch, SphereElem.x())
    zero = OneForm.zero_form(ch)
    assert form_product(Finv, real, SphereElem.const(1), dx) == HSeries((dx, zero, zero))


def test_bad_side():
    Finv, real, ch = sphere_calculus()
    with pytest.raises(ValueError):
        form_product(Finv, real, SphereElem.x(), OneForm.d(ch, SphereElem.y()), side="middle")
