"""The sphere: so(1,3) vector fields on the upper hemisphere, the induced connection and the deformed product."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .envalg import PBW
from .exact import HSeries, Poly, SphereElem, SPHERE_VARS
from .geom import (
    SphereChart,
    VectorField,
    bivector_from_pairs,
    christoffel_from_cochain,
    curvature_tensor,
    inverse_matrix,
    metric_covariant_derivative,
    torsion,
)
from .lie import so13_abstract
from .twist import Realization, Tensor, apply_cochain, coassociator

CHART = SphereChart()
X_NAMES = ("X1", "X2", "X3")
Y_NAMES = ("Y1", "Y2", "Y3")


def sphere_fields() -> dict:
    """X_i and Y_i as vector fields on the chart, keyed by name."""
    x, y, z = SphereElem.x(), SphereElem.y(), SphereElem.z()
    one = SphereElem.const(1)
    zero = SphereElem.const(0)
    comps = {
        "X1": (one - x * x, -x * y),
        "X2": (-x * y, one - y * y),
        "X3": (-x * z, -y * z),
        "Y1": (zero, -z),
        "Y2": (z, zero),
        "Y3": (-y, x),
    }
    return {k: VectorField(CHART, v) for k, v in comps.items()}


def bracket_table_check(fields=None) -> list:
    """Compare chart brackets with so(1,3); returns the list of mismatching pairs."""
    fields = fields or sphere_fields()
    L = so13_abstract()
    bad = []
    for a, b in product(range(L.dim), repeat=2):
        lhs = fields[L.basis[a]].bracket(fields[L.basis[b]])
        rhs = VectorField(CHART, [CHART.zero, CHART.zero])
        for k, c in L.structure(a, b).items():
            rhs = rhs + fields[L.basis[k]] * SphereElem.const(c)
        if lhs != rhs:
            bad.append((L.basis[a], L.basis[b]))
    return bad


def sphere_pairs(fields=None):
    """G1 = sum_i X_i (x) Y_i / 2, as (X, Y) pairs with the 1/2 folded into X."""
    fields = fields or sphere_fields()
    half = SphereElem.const(Fraction(1, 2))
    return [(fields[X] * half, fields[Y]) for X, Y in zip(X_NAMES, Y_NAMES)]


def sphere_metric():
    x, y, z = SphereElem.x(), SphereElem.y(), SphereElem.z()
    one = SphereElem.const(1)
    w = (z * z).inverse()
    return [[(one - y * y) * w, x * y * w], [x * y * w, (one - x * x) * w]]


def expected_christoffel():
    """Gamma^i_{jk} for the round sphere in this chart, indexed G[i][j][k]."""
    x, y, z = SphereElem.x(), SphereElem.y(), SphereElem.z()
    w = (z * z).inverse()
    g000 = (x - x * y * y) * w
    g001 = x * x * y * w
    g011 = (x - x * x * x) * w
    g100 = (y - y * y * y) * w
    g101 = x * y * y * w
    g111 = (y - x * x * y) * w
    return [[[g000, g001], [g001, g011]], [[g100, g101], [g101, g111]]]


def sphere_geometry() -> dict:
    """omega, Gamma, torsion, nabla g and curvature at the origin, all exact."""
    pairs = sphere_pairs()
    w = bivector_from_pairs(pairs, CHART)
    G = christoffel_from_cochain(pairs, CHART, inverse_matrix(w, CHART))
    T = torsion(G, CHART)
    Dg = metric_covariant_derivative(sphere_metric(), G, CHART)
    R = curvature_tensor(G, CHART)
    R0 = [[[[CHART.at_origin(R[l][i][j][k]) for k in range(2)] for j in range(2)] for i in range(2)] for l in range(2)]
    return {"omega": w, "christoffel": G, "torsion": T, "metric_derivative": Dg, "curvature_origin": R0}


def expected_curvature_origin():
    d = lambda a, b: 1 if a == b else 0  # noqa: E731
    return [[[[d(l, j) * d(k, i) - d(l, k) * d(j, i) for k in range(2)] for j in range(2)] for i in range(2)] for l in range(2)]


# psi and its reduction over functions

def psi_displayed(drop_block: int | None = None) -> Tensor:
    """(Y[e_i x e_j] (x) Y_j - X_j (x) X[e_i x e_j]) (x) Y_i, expanded in cyclic blocks."""
    L = so13_abstract()
    X = [L.index(n) for n in X_NAMES]
    Y = [L.index(n) for n in Y_NAMES]
    out = Tensor(3)
    for blk, (a, b, c) in enumerate(((0, 1, 2), (1, 2, 0), (2, 0, 1))):
        if blk == drop_block:
            continue
        # (Y_c (x) Y_b - Y_b (x) Y_c - X_b (x) X_c + X_c (x) X_b) (x) Y_a
        out = out + Tensor.of((Y[c],), (Y[b],), (Y[a],))
        out = out - Tensor.of((Y[b],), (Y[c],), (Y[a],))
        out = out - Tensor.of((X[b],), (X[c],), (Y[a],))
        out = out + Tensor.of((X[c],), (X[b],), (Y[a],))
    return out


def reduce_over_functions(psi: Tensor, fields=None) -> dict:
    """pi: replace (x) by the product over functions; returns components {(i, j, k): SphereElem}."""
    fields = fields or sphere_fields()
    L = so13_abstract()
    out = {}
    for idx in product(range(2), repeat=3):
        acc = CHART.zero
        for words, c in psi.terms.items():
            if any(len(w) != 1 for w in words):
                raise ValueError("pi is defined on L (x) L (x) L")
            t = SphereElem.const(c)
            for w, i in zip(words, idx):
                t = t * fields[L.basis[w[0]]].comps[i]
            acc = acc + t
        out[idx] = acc
    return out


def coassociator_psi() -> Tensor:
    """8 times the h^2 part of the coassociator of G1 = X_i (x) Y_i / 2, G2 = G1^2/2, in U(so(1,3))."""
    L = so13_abstract()
    G1 = Tensor(2)
    for X, Y in zip(X_NAMES, Y_NAMES):
        G1 = G1 + Tensor.of((L.index(X),), (L.index(Y),), c=Fraction(1, 2))
    phi = coassociator(HSeries((Tensor.unit(2), G1, G1 * G1 * Fraction(1, 2))))
    return phi[2].reduce(PBW(L)) * 8


# the deformed product

def sphere_cochain(order: int = 2) -> HSeries:
    L = so13_abstract()
    G1 = Tensor(2)
    for X, Y in zip(X_NAMES, Y_NAMES):
        G1 = G1 + Tensor.of((L.index(X),), (L.index(Y),), c=Fraction(1, 2))
    return HSeries((Tensor.unit(2), G1, G1 * G1 * Fraction(1, 2))[: order + 1])


def sphere_realization() -> Realization:
    L = so13_abstract()
    f = sphere_fields()
    return Realization({i: f[name] for i, name in enumerate(L.basis)}, CHART)


_REAL = None


def _real():
    global _REAL
    if _REAL is None:
        _REAL = sphere_realization()
    return _REAL


def sphere_star(f, g, order: int = 2) -> HSeries:
    """f * g = fg + (h/2)(X_i f)(Y_i g) + (h^2/8)(X_i X_j f)(Y_i Y_j g) + O(h^3)."""
    f = _as_sphere(f)
    g = _as_sphere(g)
    return apply_cochain(sphere_cochain(order), _real(), f, g)


def sphere_star_series(F: HSeries, G: HSeries, order: int = 2) -> HSeries:
    """Extend the product bilinearly to h-series of functions."""
    out = [CHART.zero] * (order + 1)
    for i, a in enumerate(F.coeffs[: order + 1]):
        if not a:
            continue
        for j, b in enumerate(G.coeffs[: order + 1 - i]):
            if not b:
                continue
            p = sphere_star(a, b, order - i - j)
            for k, c in enumerate(p.coeffs):
                out[i + j + k] = out[i + j + k] + c
    return HSeries(out)


def associator(f, g, h, order: int = 2) -> HSeries:
    F = HSeries.constant(_as_sphere(f), order)
    G = HSeries.constant(_as_sphere(g), order)
    H = HSeries.constant(_as_sphere(h), order)
    return sphere_star_series(sphere_star_series(F, G, order), H, order) - sphere_star_series(F, sphere_star_series(G, H, order), order)


def _as_sphere(f):
    if isinstance(f, SphereElem):
        return f
    if isinstance(f, Poly):
        return SphereElem(f.recast(SPHERE_VARS), Poly(SPHERE_VARS), 0)
    return SphereElem.const(f)


def xy_monomial(a: int, b: int) -> SphereElem:
    return SphereElem(Poly.monomial(SPHERE_VARS, (a, b)), Poly(SPHERE_VARS), 0)


def monomial_formula(a: int, b: int, c: int, d: int) -> HSeries:
    """Closed form of (x^a y^b) * (x^c y^d) through h^2.

    Intermediate exponents may be negative; they are collected as Laurent
    monomials and must cancel before conversion to a sphere function.
    """
    h1 = {(a + c - 1, b + d - 1): Fraction(b * c - a * d, 2)}
    ex, ey = a + c - 2, b + d - 2
    h2 = {
        (ex, ey): bc_term(a, b, c, d),
        (ex, ey + 2): a * c - a * a * c + b * b * c - a * c * c - b * b * c * c + 2 * a * b * c * d + a * d * d - a * a * d * d,
        (ex + 2, ey): b * c * c - b * b * c * c + a * a * d + b * d - b * b * d + 2 * a * b * c * d - a * a * d * d - b * d * d,
        (ex + 2, ey + 2): (a + b) * (c + d) * (1 + a + b + c + d),
    }
    p1 = _laurent_to_poly(h1)
    p2 = _laurent_to_poly({k: Fraction(v, 8) for k, v in h2.items()})
    z = SphereElem.z()
    return HSeries((xy_monomial(a + c, b + d), z * SphereElem(p1, Poly(SPHERE_VARS), 0), SphereElem(p2, Poly(SPHERE_VARS), 0)))


def bc_term(a, b, c, d):
    return b * c * (b - 1) * (c - 1) + a * d * (a - 1) * (d - 1) - 2 * a * b * c * d


class LaurentError(ValueError):
    pass


def _laurent_to_poly(terms: dict) -> Poly:
    out = {}
    for (i, j), c in terms.items():
        if not c:
            continue
        if i < 0 or j < 0:
            raise LaurentError(f"negative exponent x^{i} y^{j} survives with coefficient {c}")
        out[(i, j)] = out.get((i, j), 0) + c
    return Poly(SPHERE_VARS, out)


def origin_second_order(f: Poly, g: Poly) -> Fraction:
    """(1/8)(f_xx g_yy + f_yy g_xx - 2 f_xy g_xy - f_x g_x - f_y g_y) at x = y = 0."""
    at0 = lambda p: p.constant() if p.is_constant() else p.evaluate({"x": 0, "y": 0})  # noqa: E731
    fx, fy, gx, gy = f.partial(0), f.partial(1), g.partial(0), g.partial(1)
    val = (at0(fx.partial(0)) * at0(gy.partial(1)) + at0(fy.partial(1)) * at0(gx.partial(0))
           - 2 * at0(fx.partial(1)) * at0(gx.partial(1)) - at0(fx) * at0(gx) - at0(fy) * at0(gy))
    return Fraction(val, 8)


def fedosov_deviation(f: Poly, g: Poly) -> Fraction:
    """h^2 part at the origin minus (1/8) omega^{ij} omega^{kl} (nabla_i f_k)(nabla_j g_l).

    At the origin the Christoffel symbols vanish and omega^{12} = -1.
    """
    at0 = lambda p: p.evaluate({"x": 0, "y": 0})  # noqa: E731
    h2 = sphere_star(f, g)[2].at_origin()
    w = [[0, -1], [1, 0]]
    acc = 0
    for i, j, k, l in product(range(2), repeat=4):
        if w[i][j] and w[k][l]:
            acc += w[i][j] * w[k][l] * at0(f.partial(i).partial(k)) * at0(g.partial(j).partial(l))
    return h2 - Fraction(acc, 8)


def metric_term_origin(f: Poly, g: Poly) -> Fraction:
    """-(1/8) g^{ij} f_i g_j at the origin, where the metric is the identity."""
    at0 = lambda p: p.evaluate({"x": 0, "y": 0})  # noqa: E731
    return -Fraction(at0(f.partial(0)) * at0(g.partial(0)) + at0(f.partial(1)) * at0(g.partial(1)), 8)
