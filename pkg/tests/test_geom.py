import random
from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest
import sympy as sp

from conftest import X, Y, sphere_to_sympy
from twistlab.exact import Poly
from twistlab.geom import (OneForm, PolyChart, VectorField, bivector_from_pairs, christoffel_from_cochain,
                           constant_curvature_formula, curvature_tensor, inverse_matrix, lie_derivative,
                           lower_christoffel, poisson_closed, r2n_chart, r2n_inverse_builder, r2n_pairs,
                           standard_pairs, symmetric_tensor)
from twistlab.sphere import sphere_geometry, sphere_metric


@pytest.fixture(scope="module")
def geo():
    return sphere_geometry()


@pytest.fixture(scope="module")
def levi_civita():
    g = sp.Matrix(2, 2, lambda i, j: sphere_to_sympy(sphere_metric()[i][j]))
    ginv = sp.simplify(g.inv())
    xs = (X, Y)
    return [[[sp.simplify(sum(ginv[i, l] * (sp.diff(g[l, k], xs[j]) + sp.diff(g[l, j], xs[k])
                                            - sp.diff(g[j, k], xs[l])) for l in range(2)) / 2)
              for k in range(2)] for j in range(2)] for i in range(2)]


def test_sphere_metric_is_induced_from_r3():
    z = sp.sqrt(1 - X**2 - Y**2)
    emb = sp.Matrix([X, Y, z])
    J = emb.jacobian([X, Y])
    g = sp.simplify(J.T * J)
    for i, j in product(range(2), repeat=2):
        assert sp.simplify(sphere_to_sympy(sphere_metric()[i][j]) - g[i, j]) == 0


def test_christoffel_from_cochain_is_levi_civita(geo, levi_civita):
    G = geo["christoffel"]
    for i, j, k in product(range(2), repeat=3):
        assert sp.simplify(sphere_to_sympy(G[i][j][k]) - levi_civita[i][j][k]) == 0


def test_curvature_at_origin_from_sympy(geo, levi_civita):
    G = levi_civita
    xs = (X, Y)
    for l, i, j, k in product(range(2), repeat=4):
        r = sp.diff(G[l][k][i], xs[j]) - sp.diff(G[l][j][i], xs[k])
        r += sum(G[m][k][i] * G[l][j][m] - G[m][j][i] * G[l][k][m] for m in range(2))
        assert sp.nsimplify(r.subs({X: 0, Y: 0})) == geo["curvature_origin"][l][i][j][k]


def test_vector_field_bracket():
    ch = PolyChart(("a", "b"))
    a, b = ch.coord(0), ch.coord(1)
    U = VectorField(ch, [a, ch.zero])
    V = VectorField(ch, [ch.zero, a])
    assert U.bracket(V) == VectorField(ch, [ch.zero, a])


def test_lie_derivative_commutes_with_d():
    ch = PolyChart(("a", "b"))
    a, b = ch.coord(0), ch.coord(1)
    U = VectorField(ch, [a * b, b * b])
    f = a * a * b + b
    assert lie_derivative(U, OneForm.d(ch, f)) == OneForm.d(ch, U(f))


def test_inverse_matrix():
    ch = PolyChart(("a",))
    m = [[ch.const(2), ch.const(1)], [ch.const(1), ch.const(1)]]
    inv = inverse_matrix(m, ch)
    assert [[c.constant() for c in row] for row in inv] == [[1, -1], [-1, 2]]


def test_standard_pairs_have_zero_christoffel():
    ch = r2n_chart(2)
    G = christoffel_from_cochain(standard_pairs(2, ch), ch)
    assert not any(G[i][j][k] for i, j, k in product(range(4), repeat=3))


@pytest.mark.parametrize("seed", range(5))
def test_r2n_round_trip(seed):
    r = random.Random(seed)
    n, N = 1, 2
    target = {k: Fraction(r.randint(-3, 3), r.randint(1, 3)) for k in combinations_with_replacement(range(N), 3)}
    ch, pairs = r2n_pairs(r2n_inverse_builder(target, n), n)
    w = bivector_from_pairs(pairs, ch)
    assert poisson_closed(w, ch)
    G = christoffel_from_cochain(pairs, ch)
    low = lower_christoffel(G, inverse_matrix(w, ch), ch)
    full = symmetric_tensor(target, N)
    for a, b, c in product(range(N), repeat=3):
        assert low[a][b][c] == ch.const(full[a][b][c])
    R = curvature_tensor(G, ch)
    w0 = [[ch.at_origin(w[i][j]) for j in range(N)] for i in range(N)]
    Rf = constant_curvature_formula(full, w0, n)
    for a, b, c, d in product(range(N), repeat=4):
        assert R[a][b][c][d] == ch.const(Rf[a][b][c][d])


def test_r2n_builder_rejects_bad_input():
    with pytest.raises(ValueError):
        r2n_inverse_builder({(0, 0, 0): Poly.var(("a",), "a")}, 1)
    with pytest.raises(ValueError):
        r2n_inverse_builder({(0, 0, 5): 1}, 1)
