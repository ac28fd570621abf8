from fractions import Fraction

import pytest
import sympy as sp

from conftest import X, Y, Z, poly_to_sympy, sphere_to_sympy
from twistlab.exact import HSeries, Poly, SphereElem, hseries_exp, nullspace, rank, solve

V = ("a", "b")
a, b = Poly.var(V, "a"), Poly.var(V, "b")


def test_poly_arithmetic_matches_sympy():
    p = (a + b * Fraction(1, 2)) ** 3 - a * b + 7
    A, B = sp.symbols("a b")
    assert sp.expand(poly_to_sympy(p) - ((A + B / 2) ** 3 - A * B + 7)) == 0


def test_poly_keeps_integers_integral():
    p = a * 2 + b
    assert all(type(c) is int for c in p.terms.values())
    assert (p * Fraction(1, 2)).coeff((1, 0)) == 1


def test_poly_partial_and_subs():
    p = a**3 * b + b**2
    assert p.partial("a") == a**2 * b * 3
    assert p.subs({"b": 2}) == a**3 * 2 + 4


def test_zero_polynomial_is_falsy():
    assert not (a - a)
    assert (a - a) == 0


def test_hseries_inverse():
    s = HSeries((a.one(), a, b * 3))
    assert s * s.inverse() == HSeries.constant(a.one(), 2)


def test_hseries_exp_truncates():
    e = hseries_exp(HSeries((a.zero(), a.one(), a.zero(), a.zero())), a.one())
    assert [c.constant() for c in e.coeffs] == [1, 1, Fraction(1, 2), Fraction(1, 6)]


def test_hseries_shift_keeps_order():
    s = HSeries((a, b, a))
    assert s.shift(1).coeffs == (a.zero(), a, b)


def test_sphere_z_squared():
    z = SphereElem.z()
    x, y = SphereElem.x(), SphereElem.y()
    assert z * z == 1 - x * x - y * y


def test_sphere_inverse_and_partial_match_sympy():
    e = (SphereElem.x() * SphereElem.y() + SphereElem.z()) / (SphereElem.z() ** 3)
    assert sp.simplify(sphere_to_sympy(e) - (X * Y + Z) / Z**3) == 0
    assert sp.simplify(sphere_to_sympy(e.partial("x")) - sp.diff((X * Y + Z) / Z**3, X)) == 0
    assert SphereElem.z() * SphereElem.z().inverse() == 1


def test_sphere_canonical_form_is_structural():
    z = SphereElem.z()
    x = SphereElem.x()
    assert (x * z) / z == x
    assert hash((z * z) / z) == hash(z)


def test_linear_algebra_against_sympy():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, -1, 2]]
    M = sp.Matrix(rows)
    assert rank(rows) == M.rank()
    ns = nullspace(rows, 4)
    assert len(ns) == 4 - M.rank()
    for v in ns:
        assert M * sp.Matrix(v) == sp.zeros(3, 1)


def test_solve_particular_and_inconsistent():
    rows = [[1, 1], [1, -1]]
    part, null = solve(rows, [2, 0])
    assert part == [1, 1] and null == []
    assert solve([[1, 1], [1, 1]], [1, 2]) is None


@pytest.mark.parametrize("m", [0, 1, 2, 5])
def test_z_power_roundtrip(m):
    z = SphereElem.z()
    assert SphereElem.z_power(m) * SphereElem.z_power(-m) == 1
    assert SphereElem.z_power(m) == z**m
