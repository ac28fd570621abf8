from fractions import Fraction
from itertools import product

import pytest

from twistlab import sphere as S
from twistlab.envalg import PBW
from twistlab.exact import SPHERE_VARS, HSeries, Poly, SphereElem
from twistlab.lie import so13_abstract

x, y, z = SphereElem.x(), SphereElem.y(), SphereElem.z()
ZERO = SphereElem.const(0)


def test_fields_realise_so13():
    assert S.bracket_table_check() == []


def test_bivector_is_minus_z():
    assert S.sphere_geometry()["omega"][0][1] == -z


def test_x_star_x():
    assert S.sphere_star(x, x) == HSeries((x * x, ZERO, (x * x * 3 - 1) * Fraction(1, 8)))


def test_commutator_of_coordinates():
    assert S.sphere_star(x, y) - S.sphere_star(y, x) == HSeries((ZERO, -z, ZERO))


def test_unit_is_neutral():
    one = SphereElem.const(1)
    f = x * y * y
    assert S.sphere_star(one, f) == HSeries((f, ZERO, ZERO))


@pytest.mark.parametrize("e", list(product(range(2), repeat=4)))
def test_monomial_formula(e):
    assert S.sphere_star(S.xy_monomial(*e[:2]), S.xy_monomial(*e[2:])) == S.monomial_formula(*e)


@pytest.mark.parametrize("t", [((1, 0), (0, 1), (1, 0)), ((2, 0), (0, 1), (1, 1)), ((0, 0), (1, 0), (0, 2))])
def test_associator_vanishes_through_h2(t):
    assert not S.associator(*(S.xy_monomial(*m) for m in t))


def test_pi_psi_vanishes_and_each_block_matters():
    assert not any(S.reduce_over_functions(S.psi_displayed()).values())
    for k in range(3):
        assert any(S.reduce_over_functions(S.psi_displayed(k)).values())


def test_psi_is_eight_times_the_coassociator_term():
    assert S.psi_displayed().reduce(PBW(so13_abstract())) == S.coassociator_psi()


@pytest.mark.parametrize("pair", [((1, 0), (1, 0)), ((1, 0), (0, 1)), ((2, 0), (0, 2)), ((1, 1), (1, 0))])
def test_fedosov_difference_at_origin(pair):
    f, g = (Poly.monomial(SPHERE_VARS, m) for m in pair)
    assert S.sphere_star(f, g)[2].at_origin() == S.origin_second_order(f, g)
    assert S.fedosov_deviation(f, g) == S.metric_term_origin(f, g)


def test_metric_term_for_x_x():
    # g^{xx} = 1 at the origin
    f = Poly.monomial(SPHERE_VARS, (1, 0))
    assert S.metric_term_origin(f, f) == Fraction(-1, 8)
