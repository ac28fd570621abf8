"""Coordinate differential geometry over exact function rings.

A chart supplies a ring of functions with partial derivatives: polynomials
(PolyChart) or functions on the upper unit hemisphere (SphereChart).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from .exact import SPHERE_VARS, Poly, SphereElem


class PolyChart:
    """Polynomial functions in coords; extra names are constant parameters."""

    kind = "poly"

    def __init__(self, coords, params=()):
        self.coords = tuple(coords)
        self.params = tuple(params)
        self.vars = self.coords + self.params
        self.n = len(self.coords)
        self.zero = Poly(self.vars)
        self.one = Poly.const(self.vars, 1)

    def const(self, c) -> Poly:
        return Poly.const(self.vars, c)

    def coord(self, i) -> Poly:
        return Poly.var(self.vars, self.coords[i] if isinstance(i, int) else i)

    def param(self, name) -> Poly:
        return Poly.var(self.vars, name)

    def partial(self, f, i: int):
        return f.partial(i)

    def inverse(self, f):
        if not f.is_constant() or not f:
            raise ZeroDivisionError(f"{f} is not a unit")
        return self.const(1 / Fraction(f.constant()))

    def at_origin(self, f) -> Fraction:
        return Poly(f.vars, {e: c for e, c in f.terms.items() if not any(e[: self.n])}).constant()

    def __eq__(self, other):
        return isinstance(other, PolyChart) and self.vars == other.vars and self.n == other.n

    def __hash__(self):
        return hash(("poly", self.vars, self.n))


class SphereChart:
    """Upper hemisphere z = sqrt(1 - x^2 - y^2) over the unit disc."""

    kind = "sphere"
    coords = SPHERE_VARS
    n = 2

    def __init__(self):
        self.zero = SphereElem.const(0)
        self.one = SphereElem.const(1)

    def const(self, c):
        return SphereElem.const(c)

    def coord(self, i):
        return SphereElem.x() if i in (0, "x") else SphereElem.y()

    def z(self):
        return SphereElem.z()

    def partial(self, f, i: int):
        return f.partial(i)

    def inverse(self, f):
        return f.inverse()

    def at_origin(self, f) -> Fraction:
        return f.at_origin()

    def __eq__(self, other):
        return isinstance(other, SphereChart)

    def __hash__(self):
        return hash("sphere")


class VectorField:
    __slots__ = ("chart", "comps", "_hash")

    def __init__(self, chart, comps):
        self.chart = chart
        self.comps = tuple(comps)
        if len(self.comps) != chart.n:
            raise ValueError("wrong number of components")
        self._hash = None

    def apply(self, f):
        ch = self.chart
        out = ch.zero
        for k, c in enumerate(self.comps):
            if c:
                d = ch.partial(f, k)
                if d:
                    out = out + c * d
        return out

    __call__ = apply

    def bracket(self, other: "VectorField") -> "VectorField":
        """[X, Y]^i = X^j d_j Y^i - Y^j d_j X^i."""
        return VectorField(self.chart, [self.apply(b) - other.apply(a) for a, b in zip(self.comps, other.comps)])

    def __add__(self, other):
        return VectorField(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        return VectorField(self.chart, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VectorField(self.chart, [-a for a in self.comps])

    def __mul__(self, f):
        return VectorField(self.chart, [a * f for a in self.comps])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.comps == other.comps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.comps)
        return self._hash

    def __bool__(self):
        return any(bool(c) for c in self.comps)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.comps) + ")"

    __repr__ = __str__


class OneForm:
    """xi_k dx^k in a chart."""

    __slots__ = ("chart", "comps", "_hash")

    def __init__(self, chart, comps):
        self.chart = chart
        self.comps = tuple(comps)
        if len(self.comps) != chart.n:
            raise ValueError("wrong number of components")
        self._hash = None

    @classmethod
    def d(cls, chart, f) -> "OneForm":
        return cls(chart, [chart.partial(f, k) for k in range(chart.n)])

    @classmethod
    def zero_form(cls, chart) -> "OneForm":
        return cls(chart, [chart.zero] * chart.n)

    def __add__(self, other):
        return OneForm(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        return OneForm(self.chart, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return OneForm(self.chart, [-a for a in self.comps])

    def __mul__(self, f):
        if isinstance(f, OneForm):
            return NotImplemented
        return OneForm(self.chart, [a * f for a in self.comps])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self
        return isinstance(other, OneForm) and self.comps == other.comps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.comps)
        return self._hash

    def __bool__(self):
        return any(bool(c) for c in self.comps)

    def pair(self, X: VectorField):
        out = self.chart.zero
        for a, b in zip(self.comps, X.comps):
            out = out + a * b
        return out

    def __str__(self):
        names = self.chart.coords
        parts = [f"({c})*d{n}" for c, n in zip(self.comps, names) if c]
        return " + ".join(parts) or "0"

    __repr__ = __str__


def lie_derivative(X: VectorField, xi: OneForm) -> OneForm:
    """(L_X xi)_k = X^j xi_{k,j} + X^j_{,k} xi_j."""
    ch = X.chart
    out = []
    for k in range(ch.n):
        acc = X.apply(xi.comps[k])
        for j in range(ch.n):
            if xi.comps[j] and X.comps[j]:
                d = ch.partial(X.comps[j], k)
                if d:
                    acc = acc + d * xi.comps[j]
        out.append(acc)
    return OneForm(ch, out)


def act(X: VectorField, obj):
    """Vector field acting on a function (derivative) or 1-form (Lie derivative)."""
    if isinstance(obj, OneForm):
        return lie_derivative(X, obj)
    return X.apply(obj)


# matrices over a chart ring

def det(m, chart):
    n = len(m)
    if n == 1:
        return m[0][0]
    out = chart.zero
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det(minor, chart)
        out = out + term if j % 2 == 0 else out - term
    return out


def inverse_matrix(m, chart):
    n = len(m)
    d = det(m, chart)
    dinv = chart.inverse(d)
    out = [[chart.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            c = det(minor, chart) if n > 1 else chart.one
            if (i + j) % 2:
                c = -c
            out[j][i] = c * dinv
    return out


# bivectors and connections from cochains

def bivector_from_pairs(pairs, chart):
    """omega^{ij} = sum over pairs (X, Y) of X^i Y^j - X^j Y^i."""
    n = chart.n
    w = [[chart.zero] * n for _ in range(n)]
    for X, Y in pairs:
        for i in range(n):
            for j in range(n):
                if i != j:
                    w[i][j] = w[i][j] + X.comps[i] * Y.comps[j] - X.comps[j] * Y.comps[i]
    return w


def christoffel_from_cochain(pairs, chart, omega_inv=None):
    """Gamma^i_{jp} = -omega_{js} sum (X^s Y^i_{,p} - Y^s X^i_{,p}).

    Returns a nested list G[i][j][p].
    """
    n = chart.n
    if omega_inv is None:
        omega_inv = inverse_matrix(bivector_from_pairs(pairs, chart), chart)
    # A[s][i][p] = sum over pairs X^s Y^i_p - Y^s X^i_p
    A = [[[chart.zero] * n for _ in range(n)] for _ in range(n)]
    for X, Y in pairs:
        dX = [[chart.partial(X.comps[i], p) for p in range(n)] for i in range(n)]
        dY = [[chart.partial(Y.comps[i], p) for p in range(n)] for i in range(n)]
        for s in range(n):
            for i in range(n):
                for p in range(n):
                    t = X.comps[s] * dY[i][p] - Y.comps[s] * dX[i][p]
                    if t:
                        A[s][i][p] = A[s][i][p] + t
    G = [[[chart.zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for p in range(n):
                acc = chart.zero
                for s in range(n):
                    if omega_inv[j][s] and A[s][i][p]:
                        acc = acc - omega_inv[j][s] * A[s][i][p]
                G[i][j][p] = acc
    return G


def torsion(G, chart):
    n = chart.n
    return [[[G[i][j][p] - G[i][p][j] for p in range(n)] for j in range(n)] for i in range(n)]


def curvature_tensor(G, chart):
    """R^l_{ijk} = G^l_{ki,j} - G^l_{ji,k} + G^m_{ki} G^l_{jm} - G^m_{ji} G^l_{km}."""
    n = chart.n
    R = [[[[chart.zero] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for l, i, j, k in product(range(n), repeat=4):
        acc = chart.partial(G[l][k][i], j) - chart.partial(G[l][j][i], k)
        for m in range(n):
            acc = acc + G[m][k][i] * G[l][j][m] - G[m][j][i] * G[l][k][m]
        R[l][i][j][k] = acc
    return R


def metric_covariant_derivative(g, G, chart):
    """(nabla_k g)_{ij} = d_k g_ij - G^b_{ki} g_bj - g_ib G^b_{kj}."""
    n = chart.n
    out = []
    for k in range(n):
        mat = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = chart.partial(g[i][j], k)
                for b in range(n):
                    acc = acc - G[b][k][i] * g[b][j] - g[i][b] * G[b][k][j]
                row.append(acc)
            mat.append(row)
        out.append(mat)
    return out


def two_form_closed(w_lower, chart) -> bool:
    """d(omega_ij dx^i ^ dx^j) = 0."""
    n = chart.n
    for k in range(n):
        for i in range(k + 1, n):
            for j in range(i + 1, n):
                s = (chart.partial(w_lower[i][j], k) + chart.partial(w_lower[j][k], i)
                     + chart.partial(w_lower[k][i], j))
                if s:
                    return False
    return True


def poisson_closed(w_upper, chart) -> bool:
    """Jacobi identity for the bivector: w^{il} d_l w^{jk} + cyclic = 0."""
    n = chart.n
    for i, j, k in product(range(n), repeat=3):
        acc = chart.zero
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l in range(n):
                if w_upper[a][l]:
                    acc = acc + w_upper[a][l] * chart.partial(w_upper[b][c], l)
        if acc:
            return False
    return True


# flat space R^2n with the standard symplectic structure

def r2n_chart(n: int) -> PolyChart:
    return PolyChart([f"x{i + 1}" for i in range(2 * n)])


def standard_omega(n: int):
    """omega^{ij} = [[0, I], [-I, 0]] on R^2n, as Fractions."""
    N = 2 * n
    w = [[Fraction(0)] * N for _ in range(N)]
    for k in range(n):
        w[k][k + n] = Fraction(1)
        w[k + n][k] = Fraction(-1)
    return w


def standard_pairs(n: int, chart: PolyChart):
    pairs = []
    for k in range(n):
        X = [chart.zero] * (2 * n)
        Y = [chart.zero] * (2 * n)
        X[k] = chart.one
        Y[k + n] = chart.one
        pairs.append((VectorField(chart, X), VectorField(chart, Y)))
    return pairs


def _cube_decomposition(T, N):
    """Write sum T_ijk y^i y^j y^k as sum of lambda (a.y)^3 with rational lambda."""
    # monomial coefficients
    mono: dict = {}
    for i, j, k in product(range(N), repeat=3):
        c = T.get(tuple(sorted((i, j, k))), 0)
        if c:
            key = tuple(sorted((i, j, k)))
            mono[key] = mono.get(key, 0) + Fraction(c)
    cubes: dict = {}

    def add(vec, lam):
        a = tuple(vec)
        cubes[a] = cubes.get(a, 0) + lam

    def unit(*idx, signs=None):
        v = [0] * N
        for t, s in zip(idx, signs or [1] * len(idx)):
            v[t] += s
        return v

    for key, c in mono.items():
        i, j, k = key
        if i == j == k:
            add(unit(i), c)
        elif i == j or j == k:
            a, b = (i, k) if i == j else (j, i)  # a^2 b
            add(unit(a, b), c / 6)
            add(unit(a, b, signs=[1, -1]), -c / 6)
            add(unit(b), -c / 3)
        else:
            add(unit(i, j, k), c / 6)
            add(unit(i, j), -c / 6)
            add(unit(i, k), -c / 6)
            add(unit(j, k), -c / 6)
            add(unit(i), c / 6)
            add(unit(j), c / 6)
            add(unit(k), c / 6)
    return {a: lam for a, lam in cubes.items() if lam}


def r2n_inverse_builder(gamma_lower: dict, n: int):
    """Triples (U, V, W) of constant vectors realising a symmetric constant Gamma.

    gamma_lower maps sorted index triples (a, b, c) to Gamma_abc.  Each triple
    contributes the cochain pairs f U (x) V - U (x) f V with f = omega_pq W^q x^p.
    """
    N = 2 * n
    for key, c in gamma_lower.items():
        if not isinstance(c, (int, Fraction)):
            raise ValueError(f"Gamma{key} is not a constant")
        if len(key) != 3 or any(not 0 <= k < N for k in key):
            raise ValueError(f"bad index triple {key}")
    w = standard_omega(n)
    triples = []
    for a, lam in sorted(_cube_decomposition(gamma_lower, N).items()):
        U = tuple(sum(w[k][j] * a[j] for j in range(N)) for k in range(N))
        W = tuple(lam / 2 * u for u in U)
        triples.append((U, U, W))
    return triples


def r2n_pairs(triples, n: int):
    """Cochain pairs on R^2n: the standard symplectic pairs plus one pair set per triple."""
    ch = r2n_chart(n)
    N = 2 * n
    w_up = standard_omega(n)
    w_low = [[-c for c in row] for row in w_up]  # inverse of [[0, I], [-I, 0]]
    pairs = standard_pairs(n, ch)
    for U, V, W in triples:
        f = ch.zero
        for p in range(N):
            c = sum(w_low[p][q] * W[q] for q in range(N))
            if c:
                f = f + ch.coord(p) * c
        Uf = VectorField(ch, [f * u for u in U])
        Vc = VectorField(ch, [ch.const(v) for v in V])
        Uc = VectorField(ch, [ch.const(-u) for u in U])
        Vf = VectorField(ch, [f * v for v in V])
        pairs.append((Uf, Vc))
        pairs.append((Uc, Vf))
    return ch, pairs


def lower_christoffel(G, w_lower, chart):
    """Gamma_{abc} = omega_{ad} Gamma^d_{bc}."""
    n = chart.n
    return [[[sum((w_lower[a][d] * G[d][b][c] for d in range(n)), chart.zero)
              for c in range(n)] for b in range(n)] for a in range(n)]


def constant_curvature_formula(gamma_low, w_up, n: int):
    """R^a_{bcd} = w^{me} w^{ag} (G_edb G_gcm - G_ecb G_gdm) for constant Gamma."""
    N = 2 * n
    R = [[[[Fraction(0)] * N for _ in range(N)] for _ in range(N)] for _ in range(N)]
    for a, b, c, d in product(range(N), repeat=4):
        acc = Fraction(0)
        for m, e, g in product(range(N), repeat=3):
            wme, wag = w_up[m][e], w_up[a][g]
            if wme and wag:
                acc += wme * wag * (gamma_low[e][d][b] * gamma_low[g][c][m]
                                    - gamma_low[e][c][b] * gamma_low[g][d][m])
        R[a][b][c][d] = acc
    return R


def symmetric_tensor(values: dict, N: int):
    """Full N x N x N nested list from sorted-index entries."""
    T = [[[Fraction(0)] * N for _ in range(N)] for _ in range(N)]
    for key, c in values.items():
        for perm in set(permutations(key)):
            i, j, k = perm
            T[i][j][k] = Fraction(c)
    return T
