"""Preconnections: the canonical one on S(g), the sl_n obstruction, and the Mackey case.

d-exact results on S(g) are represented by their potentials: a linear element
of S(g) stored as a dict vector over the basis of g.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, product

from .exact import Poly, nullspace
from .geom import OneForm, PolyChart, VectorField, act
from .lie import LieAlgebra, SL3_BASIS, sl3_coords, sl3_matrix, vec_add, vec_scale


class Preconnection:
    """nabla_v dw = d Xi(v, w) on S(g) with Xi(v, w) = [v, w]/2 + lam * Xi_hat(v, w)."""

    def __init__(self, g: LieAlgebra, half=Fraction(1, 2), xi_hat=None, lam=1):
        self.g = g
        self.half = half
        self.xi_hat = xi_hat  # callable (i, j) -> vector
        self.lam = lam

    def xi(self, v: dict, w: dict) -> dict:
        out = vec_scale(self.half, self.g.bracket(v, w))
        if self.xi_hat is not None:
            for i, a in v.items():
                for j, b in w.items():
                    for k, c in self.xi_hat(i, j).items():
                        out = vec_add(out, {k: self.lam * a * b * c})
        return out

    def curvature(self, v: dict, w: dict, z: dict) -> dict:
        """Potential of R(v, w) dz = nabla_v nabla_w dz - nabla_w nabla_v dz - nabla_{[v,w]} dz."""
        return vec_add(self.xi(v, self.xi(w, z)), vec_scale(-1, self.xi(w, self.xi(v, z))),
                       vec_scale(-1, self.xi(self.g.bracket(v, w), z)))

    def torsion(self, v: dict, w: dict, z: dict) -> dict:
        """<T(v, w), dz> = v(w(z)) - w(Xi(v, z)) - (v <-> w) - [[v, w], z] with v acting by ad."""
        br = self.g.bracket
        return vec_add(br(v, br(w, z)), vec_scale(-1, br(w, self.xi(v, z))),
                       vec_scale(-1, br(w, br(v, z))), br(v, self.xi(w, z)),
                       vec_scale(-1, br(br(v, w), z)))

    def compatibility_defect(self, v: dict, w: dict) -> dict:
        """nabla_v dw - nabla_w dv - d[v, w]; zero for a Poisson-compatible preconnection."""
        return vec_add(self.xi(v, w), vec_scale(-1, self.xi(w, v)), vec_scale(-1, self.g.bracket(v, w)))


def canonical(g: LieAlgebra) -> Preconnection:
    return Preconnection(g)


def _e(i):
    return {i: 1}


def precon_curvature_torsion(P: Preconnection, i: int, j: int, k: int):
    return P.curvature(_e(i), _e(j), _e(k)), P.torsion(_e(i), _e(j), _e(k))


def expected_curvature(g: LieAlgebra, v, w, z) -> dict:
    return vec_scale(Fraction(-1, 4), g.bracket(g.bracket(v, w), z))


def expected_torsion(g: LieAlgebra, v, w, z) -> dict:
    return vec_scale(Fraction(1, 2), g.bracket(g.bracket(v, w), z))


# invariant symmetric maps g (x) g -> g

def invariant_symmetric_maps(g: LieAlgebra) -> list:
    """Basis of symmetric S: g (x) g -> g with [x, S(v, w)] = S([x, v], w) + S(v, [x, w]).

    Each basis element is returned as {(i, j): vector} for i <= j.
    """
    n = g.dim
    pairs = list(combinations_with_replacement(range(n), 2))
    idx = {}
    for p in pairs:
        for k in range(n):
            idx[(p, k)] = len(idx)

    def var(i, j, k):
        return idx[((min(i, j), max(i, j)), k)]

    rows = []
    for x, v, w in product(range(n), range(n), range(n)):
        if v > w:
            continue
        # component m of [x, S(v,w)] - S([x,v], w) - S(v, [x,w])
        eqs = [dict() for _ in range(n)]
        for k in range(n):
            for m, c in g.structure(x, k).items():
                col = var(v, w, k)
                eqs[m][col] = eqs[m].get(col, 0) + c
        for a, c in g.structure(x, v).items():
            for m in range(n):
                col = var(a, w, m)
                eqs[m][col] = eqs[m].get(col, 0) - c
        for a, c in g.structure(x, w).items():
            for m in range(n):
                col = var(v, a, m)
                eqs[m][col] = eqs[m].get(col, 0) - c
        for e in eqs:
            if any(e.values()):
                row = [0] * len(idx)
                for col, c in e.items():
                    row[col] = c
                rows.append(row)
    basis = nullspace(rows, len(idx)) if rows else nullspace([[0] * len(idx)], len(idx))
    out = []
    for vec in basis:
        S = {}
        for (p, k), col in idx.items():
            if vec[col]:
                S.setdefault(p, {})[k] = vec[col]
        out.append(S)
    return out


def moduli_dimension(g: LieAlgebra) -> int:
    return len(invariant_symmetric_maps(g))


# the sl3 trilinear

def det3(m) -> Fraction:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _madd(*ms):
    return [[sum(m[i][j] for m in ms) for j in range(3)] for i in range(3)]


def _mscale(c, m):
    return [[c * a for a in row] for row in m]


def cubic(m) -> Fraction:
    """I(v) = det v on sl3 (the sum of triple products of eigenvalues)."""
    return det3(m)


def polarize_vww(v, w) -> Fraction:
    """I(v, w, w) = (I(v + 2w) - 2 I(v + w) + I(v))/6 - I(w)."""
    return Fraction(cubic(_madd(v, _mscale(2, w))) - 2 * cubic(_madd(v, w)) + cubic(v), 6) - cubic(w)


def polarize(a, b, c) -> Fraction:
    """Full polarization of the cubic form."""
    s = (cubic(_madd(a, b, c)) - cubic(_madd(a, b)) - cubic(_madd(a, c)) - cubic(_madd(b, c))
         + cubic(a) + cubic(b) + cubic(c))
    return Fraction(s, 6)


def t1():
    return [[1, 0, 0], [0, -1, 0], [0, 0, 0]]


def t2():
    return [[0, 0, 0], [0, 1, 0], [0, 0, -1]]


def sl3_trilinear_values() -> dict:
    """I_111, I_112, I_122, I_222 on t1 = e11 - e22, t2 = e22 - e33."""
    a, b = t1(), t2()
    return {
        "I111": polarize_vww(a, a),
        "I112": polarize_vww(b, a),
        "I122": polarize_vww(a, b),
        "I222": polarize_vww(b, b),
    }


DISPLAYED_TRILINEAR = {"I111": Fraction(-1), "I112": Fraction(3, 2), "I122": Fraction(5, 6), "I222": Fraction(-1)}


def obstruction_formula(I111, I112, I122, I222) -> Fraction:
    """1/2 I111^2 + 2/3 (I112 + I122/2)^2 - 1/2 I111 I122 - 2/3 (I111 + I112/2)(I122 + I222/2), as displayed."""
    h, tt = Fraction(1, 2), Fraction(2, 3)
    return (h * I111 ** 2 + tt * (I112 + h * I122) ** 2 - h * I111 * I122
            - tt * (I111 + h * I112) * (I122 + h * I222))


def trace_form_sl3():
    """tr(xy) on the sl3 basis."""
    ms = [sl3_matrix(i) for i in range(8)]
    return [[sum(ms[i][r][c] * ms[j][c][r] for r in range(3) for c in range(3)) for j in range(8)] for i in range(8)]


def _inverse(m):
    from .exact import row_reduce
    n = len(m)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    red, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular form")
    return [r[n:] for r in red]


class SL3Trilinear:
    """The invariant symmetric trilinear on sl3 and the map Xi_hat(v, w) = I(v, w, e_i) kappa^{ij} e_j."""

    def __init__(self, form=None):
        self.ms = [sl3_matrix(i) for i in range(8)]
        self.form = form or trace_form_sl3()
        self.kinv = _inverse(self.form)
        self._I = {}
        for i, j, k in combinations_with_replacement(range(8), 3):
            self._I[(i, j, k)] = polarize(self.ms[i], self.ms[j], self.ms[k])

    def I(self, i, j, k) -> Fraction:
        return self._I[tuple(sorted((i, j, k)))]

    def I_vec(self, u: dict, v: dict, w: dict):
        acc = 0
        for i, a in u.items():
            for j, b in v.items():
                for k, c in w.items():
                    t = self.I(i, j, k)
                    if t:
                        acc = acc + a * b * c * t
        return acc

    def xi_hat(self, i: int, j: int) -> dict:
        out = {}
        for a in range(8):
            t = self.I(i, j, a)
            if not t:
                continue
            for b in range(8):
                if self.kinv[a][b]:
                    out[b] = out.get(b, 0) + t * self.kinv[a][b]
        return {k: c for k, c in out.items() if c}

    def contraction(self, v: dict, w: dict) -> Fraction:
        """I(v, e_i, w) I(w, v, e_j) kappa^{ij} - I(w, e_i, w) I(v, v, e_j) kappa^{ij}."""
        acc = Fraction(0)
        for i in range(8):
            for j in range(8):
                k = self.kinv[i][j]
                if k:
                    ei, ej = {i: 1}, {j: 1}
                    acc += k * (self.I_vec(v, ei, w) * self.I_vec(w, v, ej) - self.I_vec(w, ei, w) * self.I_vec(v, v, ej))
        return acc


def sl3_cartan(which: int) -> dict:
    return sl3_coords(t1() if which == 1 else t2())


def sln_obstruction(n: int) -> dict:
    """The curvature obstruction for invariant preconnections on sl_n, n in {2, 3}."""
    from .lie import sl2, sl3

    if n == 2:
        return {"moduli_dimension": moduli_dimension(sl2())}
    if n != 3:
        raise ValueError("only sl2 and sl3 are implemented")
    g = sl3()
    T = SL3Trilinear()
    vals = sl3_trilinear_values()
    v, w = sl3_cartan(1), sl3_cartan(2)
    P = Preconnection(g, xi_hat=T.xi_hat)
    R = P.curvature(v, w, w)
    return {
        "moduli_dimension": moduli_dimension(g),
        "trilinear": vals,
        "formula_oracle_values": obstruction_formula(**vals),
        "formula_displayed_values": obstruction_formula(**DISPLAYED_TRILINEAR),
        "contraction": T.contraction(v, w),
        "curvature_vector": R,
    }


def linear_terms_cancel(g: LieAlgebra, xi_hat) -> bool:
    """With Xi = [,]/2 + lam Xi_hat, the lam-linear part of R(v, w) dz vanishes for all basis triples.

    The curvature is computed with coefficients in Q[lam].
    """
    lam = Poly.var(("lam",), "lam")
    P = Preconnection(g, xi_hat=xi_hat, lam=lam)
    for i, j, k in product(range(g.dim), repeat=3):
        R = P.curvature(_e(i), _e(j), _e(k))
        for c in R.values():
            if isinstance(c, Poly) and c.coeff((1,)):
                return False
    return True


def curvature_quadratic_part(g: LieAlgebra, xi_hat, i, j, k) -> dict:
    """Xi_hat(v, Xi_hat(w, z)) - Xi_hat(w, Xi_hat(v, z)) for basis elements."""
    P = Preconnection(g, half=0, xi_hat=xi_hat)
    v, w, z = _e(i), _e(j), _e(k)
    return vec_add(P.xi(v, P.xi(w, z)), vec_scale(-1, P.xi(w, P.xi(v, z))))


# preconnections induced by cochain pairs on a chart

class PairPreconnection:
    """{a, b} = sum X(a) Y(b) - Y(a) X(b); nabla_a xi = sum X(a) L_Y xi - Y(a) L_X xi."""

    def __init__(self, pairs, chart):
        self.pairs = list(pairs)
        self.chart = chart

    def bracket(self, a, b):
        out = self.chart.zero
        for X, Y in self.pairs:
            out = out + X(a) * Y(b) - Y(a) * X(b)
        return out

    def nabla(self, a, xi: OneForm) -> OneForm:
        out = OneForm.zero_form(self.chart)
        for X, Y in self.pairs:
            xa, ya = X(a), Y(a)
            if xa:
                out = out + act(Y, xi) * xa
            if ya:
                out = out - act(X, xi) * ya
        return out

    def curvature(self, a, b, xi: OneForm) -> OneForm:
        return self.nabla(a, self.nabla(b, xi)) - self.nabla(b, self.nabla(a, xi)) - self.nabla(self.bracket(a, b), xi)

    def d(self, f) -> OneForm:
        return OneForm.d(self.chart, f)


# Mackey

class MackeyModel:
    """C(N) (x) S(g) as polynomials in N coordinates and the basis of g.

    action[i] lists the components of the vector field of e_i on N, as Polys
    in the N coordinates.
    """

    def __init__(self, g: LieAlgebra, ncoords, action):
        self.g = g
        self.ncoords = tuple(ncoords)
        self.chart = PolyChart(self.ncoords + tuple(g.basis))
        self.m = len(self.ncoords)
        n = g.dim
        ch = self.chart
        self.e_check, self.e_dual, self.c_check = [], [], []
        for i in range(n):
            comps = [ch.zero] * ch.n
            for j in range(n):
                for k, c in g.structure(i, j).items():
                    comps[self.m + j] = comps[self.m + j] + ch.coord(self.m + k) * c
            self.e_check.append(VectorField(ch, comps))
            comps = [ch.zero] * ch.n
            comps[self.m + i] = ch.one
            self.e_dual.append(VectorField(ch, comps))
            comps = [ch.zero] * ch.n
            for k, c in enumerate(action[i]):
                comps[k] = c.recast(ch.vars) if isinstance(c, Poly) else ch.const(c)
            self.c_check.append(VectorField(ch, comps))
        half = Fraction(1, 2)
        # G1 = -(c_i + e_i/2) (x) e^i
        self.pairs = [((self.c_check[i] + self.e_check[i] * half) * (-1), self.e_dual[i]) for i in range(n)]
        self.precon = PairPreconnection(self.pairs, ch)

    def v(self, vec: dict) -> Poly:
        """A linear element of S(g)."""
        out = self.chart.zero
        for i, c in vec.items():
            out = out + self.chart.coord(self.m + i) * c
        return out

    def f(self, poly: Poly) -> Poly:
        return poly.recast(self.chart.vars)

    def act_g(self, vec: dict, f: Poly) -> Poly:
        """v |> f through the action on N."""
        out = self.chart.zero
        for i, c in vec.items():
            out = out + self.c_check[i](f) * c
        return out

    def letters(self) -> list:
        """Fields in the order of semidirect_mackey's basis: e_i, e^i, c_i."""
        return self.e_check + self.e_dual + self.c_check

    def bracket_table_ok(self) -> bool:
        from .lie import semidirect_mackey

        L = semidirect_mackey(self.g)
        F = self.letters()
        zero = VectorField(self.chart, [self.chart.zero] * self.chart.n)
        for a, b in product(range(L.dim), repeat=2):
            rhs = zero
            for k, c in L.structure(a, b).items():
                rhs = rhs + F[k] * c
            if F[a].bracket(F[b]) != rhs:
                return False
        return True

    def action_is_representation(self) -> bool:
        g = self.g
        zero = VectorField(self.chart, [self.chart.zero] * self.chart.n)
        for a, b in product(range(g.dim), repeat=2):
            rhs = zero
            for k, c in g.structure(a, b).items():
                rhs = rhs + self.c_check[k] * c
            if self.c_check[a].bracket(self.c_check[b]) != rhs:
                return False
        return True


def b_plus_line_action(kind: str = "representation"):
    """b+ = <t, x>, [t, x] = x, acting on the line with coordinate s.

    "representation": t -> -s d/ds, x -> d/ds, a Lie algebra map.
    "as-stated": t -> s d/ds, x -> d/ds, which reverses the bracket.
    """
    s = Poly.var(("s",), "s")
    one = Poly.const(("s",), 1)
    if kind == "representation":
        return ("s",), [[-s], [one]]
    if kind == "as-stated":
        return ("s",), [[s], [one]]
    raise ValueError(kind)


def sl2_plane_action():
    """sl2 acting linearly on the plane (p, q): e_A -> -(A s)^k d/ds^k, a Lie algebra map."""
    vars = ("p", "q")
    p, q = Poly.var(vars, "p"), Poly.var(vars, "q")
    zero = Poly.const(vars, 0)
    return vars, [[-p, q], [-q, zero], [zero, -p]]
