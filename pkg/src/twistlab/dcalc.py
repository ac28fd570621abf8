"""Deformed 1-form products: a * xi and xi * a under a cochain, on S(g) and on the sphere chart."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .exact import HSeries, Poly, SphereElem
from .geom import OneForm
from .lie import LieAlgebra
from .twist import CBHData, Realization, Tensor, apply_cochain, cbh_cochain, form_mul, sg_realization


def form_product(Finv: HSeries, real: Realization, a, xi: OneForm, side: str = "left") -> HSeries:
    """a * xi (side="left") or xi * a (side="right")."""
    if side == "left":
        return apply_cochain(Finv, real, a, xi, mul=form_mul)
    if side == "right":
        return apply_cochain(Finv, real, xi, a, mul=form_mul)
    raise ValueError("side must be 'left' or 'right'")


def d_series(chart, S: HSeries) -> HSeries:
    return HSeries(OneForm.d(chart, c) for c in S.coeffs)


def series_product(Finv: HSeries, real: Realization, A: HSeries, B: HSeries, mul=None) -> HSeries:
    """Bilinear extension of the deformed product to h-series arguments, truncated at Finv.order."""
    order = Finv.order
    out = None
    for p, a in enumerate(A.coeffs):
        for q, b in enumerate(B.coeffs):
            if p + q > order:
                continue
            part = apply_cochain(Finv.truncate(order - p - q), real, a, b, mul=mul).truncate(order).shift(p + q)
            out = part if out is None else out + part
    return out.truncate(order)


def form_associator(Finv: HSeries, real: Realization, a, xi: OneForm, b) -> HSeries:
    """(a * xi) * b - a * (xi * b); reported, never asserted to vanish."""
    lhs = series_product(Finv, real, form_product(Finv, real, a, xi), HSeries((b,)), mul=form_mul)
    rhs = series_product(Finv, real, HSeries((a,)), form_product(Finv, real, b, xi, side="right"), mul=form_mul)
    return lhs - rhs


def leibniz_defect(Finv: HSeries, real: Realization, a, b) -> HSeries:
    """d(a * b) - (da * b + a * db)."""
    ch = real.chart
    lhs = d_series(ch, apply_cochain(Finv, real, a, b))
    r1 = form_product(Finv, real, b, OneForm.d(ch, a), side="right")
    r2 = form_product(Finv, real, a, OneForm.d(ch, b), side="left")
    return lhs - r1 - r2


# S(g)

class SgCalculus:
    """The CBH cochain acting on S(g) and its free module of 1-forms."""

    def __init__(self, g: LieAlgebra, alpha=Fraction(-1, 4), order: int = 2):
        self.g = g
        self.alpha = Fraction(alpha)
        self.beta = self.alpha + Fraction(1, 2)
        self.Finv = cbh_cochain(g, self.alpha, order)
        self.real = sg_realization(g)
        self.chart = self.real.chart

    def lin(self, vec: dict) -> Poly:
        out = self.chart.zero
        for i, c in vec.items():
            out = out + self.chart.coord(i) * c
        return out

    def d(self, f) -> OneForm:
        return OneForm.d(self.chart, f)

    def left(self, a, xi):
        return form_product(self.Finv, self.real, a, xi, "left")

    def right(self, xi, a):
        return form_product(self.Finv, self.real, a, xi, "right")

    def expected_left(self, i: int, j: int) -> HSeries:
        """v dw + h beta d[v, w]."""
        v, w = self.lin({i: 1}), self.lin({j: 1})
        br = self.lin(self.g.bracket({i: 1}, {j: 1}))
        zero = OneForm.zero_form(self.chart)
        return HSeries((self.d(w) * v, self.d(br) * self.beta, zero)[: self.Finv.order + 1])

    def expected_right(self, i: int, j: int) -> HSeries:
        """(dw) v + h alpha d[v, w]."""
        v, w = self.lin({i: 1}), self.lin({j: 1})
        br = self.lin(self.g.bracket({i: 1}, {j: 1}))
        zero = OneForm.zero_form(self.chart)
        return HSeries((self.d(w) * v, self.d(br) * self.alpha, zero)[: self.Finv.order + 1])

    def second_order_contributions(self, i: int, j: int) -> list:
        """Contribution of each h^2 cochain term to v * dw and dw * v; all should vanish."""
        v, w = self.lin({i: 1}), self.lin({j: 1})
        dw = self.d(w)
        out = []
        if self.Finv.order < 2:
            return out
        for words, c in self.Finv[2].terms.items():
            single = HSeries((Tensor(2, {words: c}),))
            out.append((words, apply_cochain(single, self.real, v, dw, mul=form_mul)[0],
                        apply_cochain(single, self.real, dw, v, mul=form_mul)[0]))
        return out

    def preconnection_check(self) -> list:
        """(i, j, h^1 of v * dw - dw * v, d Xi(v, w)) with Xi the canonical preconnection."""
        from .precon import canonical

        P = canonical(self.g)
        n = self.g.dim
        return [(i, j, self.commutator(i, j)[1], self.d(self.lin(P.xi({i: 1}, {j: 1}))))
                for i in range(n) for j in range(n)]

    def commutator(self, i: int, j: int) -> HSeries:
        v, w = self.lin({i: 1}), self.lin({j: 1})
        dw = self.d(w)
        return self.left(v, dw) - self.right(dw, v)


def spacetime_algebra(n: int = 3) -> LieAlgebra:
    """[t, x_i] = x_i; the Lie algebra of the bicrossproduct spacetime, b+ for n = 1."""
    basis = ["t"] + [f"x{i + 1}" for i in range(n)]
    return LieAlgebra(f"spacetime{n}", basis, {(0, i): {i: 1} for i in range(1, n + 1)})


def spacetime_relations(n: int = 1, alpha=Fraction(-1, 4)) -> dict:
    """t * dx_i - dx_i * t and dt * x_i - x_i * dt, each expected to be (h/2) dx_i."""
    g = spacetime_algebra(n)
    C = SgCalculus(g, alpha)
    t = C.lin({0: 1})
    out = {}
    for i in range(1, n + 1):
        x = C.lin({i: 1})
        a = C.left(t, C.d(x)) - C.right(C.d(x), t)
        b = C.right(C.d(t), x) - C.left(x, C.d(t))
        out[g.basis[i]] = (a, b, C.d(x) * Fraction(1, 2))
    return out


# the sphere

def sphere_calculus():
    from .sphere import CHART, sphere_cochain, sphere_realization

    return sphere_cochain(2), sphere_realization(), CHART


def sphere_form_products() -> dict:
    """x*dx, x*dy, y*dx, y*dy through h^2, computed and expected."""
    Finv, real, ch = sphere_calculus()
    x, y, z = SphereElem.x(), SphereElem.y(), SphereElem.z()
    one = SphereElem.const(1)
    iz = z.inverse() * Fraction(1, 2)
    dx = OneForm(ch, [one, ch.zero])
    dy = OneForm(ch, [ch.zero, one])

    def form(a, b):
        return OneForm(ch, [a, b])

    eighth = Fraction(1, 8)
    expected = {
        "x*dx": HSeries((dx * x, form(x * x * y, x * (one - x * x)) * iz, dx * x * eighth)),
        "x*dy": HSeries((dy * x, form(x * y * y, y * (one - x * x)) * iz, dy * x * eighth)),
        "y*dx": HSeries((dx * y, -form(x * (one - y * y), x * x * y) * iz, dx * y * eighth)),
        "y*dy": HSeries((dy * y, -form(y * (one - y * y), x * y * y) * iz, dy * y * eighth)),
    }
    computed = {
        "x*dx": form_product(Finv, real, x, dx),
        "x*dy": form_product(Finv, real, x, dy),
        "y*dx": form_product(Finv, real, y, dx),
        "y*dy": form_product(Finv, real, y, dy),
    }
    return {k: (computed[k], expected[k]) for k in expected}


def sphere_preconnection_check() -> list:
    """For f, g in {x, y}: the h^1 part of f * dg - dg * f against nabla_{f^} dg from the Christoffel symbols.

    f^ is the Hamiltonian field with components omega^{ij} f_{,i}; (nabla_X xi)_k = X^j (xi_{k,j} - Gamma^m_{jk} xi_m).
    Returns a list of (name, commutator h^1, covariant derivative).
    """
    from .sphere import sphere_geometry

    Finv, real, ch = sphere_calculus()
    geo = sphere_geometry()
    w, G = geo["omega"], geo["christoffel"]
    coords = {"x": SphereElem.x(), "y": SphereElem.y()}
    out = []
    for (fn, f), (gn, g) in product(coords.items(), repeat=2):
        dg = OneForm.d(ch, g)
        comm = form_product(Finv, real, f, dg) - form_product(Finv, real, f, dg, side="right")
        X = [sum((w[i][j] * ch.partial(f, i) for i in range(2)), ch.zero) for j in range(2)]
        cov = []
        for k in range(2):
            acc = ch.zero
            for j in range(2):
                t = ch.partial(dg.comps[k], j)
                for m in range(2):
                    t = t - G[m][j][k] * dg.comps[m]
                acc = acc + X[j] * t
            cov.append(acc)
        out.append((f"{fn}*d{gn}", comm[1], OneForm(ch, cov)))
    return out


def cbh_g2_pieces(g: LieAlgebra, alpha) -> dict:
    """The named summands of the second-order CBH term."""
    d = CBHData(g)
    a = Fraction(alpha)
    b = a + Fraction(1, 2)
    S = d.Q1 + d.Q2
    return {
        "(Q1+Q2)Q1": S * d.Q1 * (a * a / 2),
        "(Q1+Q2)Q2": S * d.Q2 * (b * b / 2),
        ":Q1Q2:": d.QQ * Fraction(-1, 24),
        ":Q1Q2:^R": d.QQR * Fraction(-2, 24),
        "kappa": d.K * Fraction(-2, 24),
    }
