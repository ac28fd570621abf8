"""Universal enveloping algebra U_h(g), symmetrisation and the induced star product.

U_h(g) has relations e_i e_j - e_j e_i = h [e_i, e_j].  Brackets of generators
are linear, so every rewrite trades one letter for one power of h: a normal
monomial of length l inside the normal form of a length-L word carries h^(L-l).
We therefore compute in U(g) at h = 1 and read h off from lengths.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .exact import HSeries, Poly
from .lie import LieAlgebra, bplus

# a U(g) element (h = 1) is a dict: normal monomial (tuple of letters) -> Fraction
# a U_h(g) element is a dict: (h_power, normal monomial) -> Fraction


def _acc(d: dict, key, c):
    v = d.get(key, 0) + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class PBW:
    """Normal ordering in U(g) for a chosen order of the basis letters."""

    def __init__(self, g: LieAlgebra, order: Sequence[int] | None = None):
        self.g = g
        order = list(range(g.dim)) if order is None else list(order)
        if sorted(order) != list(range(g.dim)):
            raise ValueError("order must be a permutation of basis indices")
        self.order = order
        self.rank = {letter: r for r, letter in enumerate(order)}
        self._memo: dict = {}

    def is_normal(self, word) -> bool:
        return all(self.rank[a] <= self.rank[b] for a, b in zip(word, word[1:]))

    def mul_letter(self, mono: tuple, a: int) -> dict:
        """Normal form of (normal monomial) * e_a."""
        if not mono or self.rank[mono[-1]] <= self.rank[a]:
            return {mono + (a,): 1}
        key = (mono, a)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        last, prefix = mono[-1], mono[:-1]
        out: dict = {}
        # prefix * last * a = prefix * a * last + prefix * [last, a]
        for t, c in self.mul_letter(prefix, a).items():
            for t2, c2 in self.mul_letter(t, last).items():
                _acc(out, t2, c * c2)
        for k, c in self.g.structure(last, a).items():
            for t, c2 in self.mul_letter(prefix, k).items():
                _acc(out, t, c * c2)
        self._memo[key] = out
        return out

    def mul_mono(self, m1: tuple, m2: tuple) -> dict:
        cur = {m1: 1}
        for a in m2:
            nxt: dict = {}
            for t, c in cur.items():
                for t2, c2 in self.mul_letter(t, a).items():
                    _acc(nxt, t2, c * c2)
            cur = nxt
        return cur

    def word(self, word: Sequence[int]) -> dict:
        return self.mul_mono((), tuple(word))

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                for t, c in self.mul_mono(m1, m2).items():
                    _acc(out, t, c1 * c2 * c)
        return out


def rewrite_choices(pbw: PBW, word: tuple) -> list[dict]:
    """Every single application of e_j e_i -> e_i e_j + [e_j, e_i] to an out-of-order pair."""
    out = []
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if pbw.rank[a] <= pbw.rank[b]:
            continue
        step: dict = {word[:p] + (b, a) + word[p + 2:]: Fraction(1)}
        for k, c in pbw.g.structure(a, b).items():
            _acc(step, word[:p] + (k,) + word[p + 2:], c)
        out.append(step)
    return out


def confluence_violations(g: LieAlgebra, words, order: Sequence[int] | None = None) -> list:
    """Words for which two first rewrites lead to different normal forms.

    Each choice is finished by normalising its terms; every word reached is
    checked in turn, so by induction on (length, inversions) all rewrite
    sequences agree when the list comes back empty.
    """
    pbw = PBW(g, order)
    seen: set = set()
    bad = []
    stack = [tuple(w) for w in words]
    while stack:
        w = stack.pop()
        if w in seen:
            continue
        seen.add(w)
        target = pbw.word(w)
        for step in rewrite_choices(pbw, w):
            acc: dict = {}
            for w2, c in step.items():
                stack.append(w2)
                for t, c2 in pbw.word(w2).items():
                    _acc(acc, t, c * c2)
            if acc != target:
                bad.append(w)
                break
    return bad


class Envelope:
    """Symmetrisation phi: S(g) -> U_h(g), its inverse, and the star product."""

    def __init__(self, g: LieAlgebra):
        self.g = g
        self.vars = g.basis
        self.pbw = PBW(g)
        self._phi: dict = {(0,) * g.dim: {(): 1}}
        self._star: dict = {}
        self._lin: dict = {}

    def mono_of(self, exps) -> tuple:
        return tuple(i for i, k in enumerate(exps) for _ in range(k))

    def exps_of(self, mono) -> tuple:
        e = [0] * self.g.dim
        for a in mono:
            e[a] += 1
        return tuple(e)

    def phi_mono(self, exps: tuple) -> dict:
        """phi of a symmetric monomial, as a U(g) element at h = 1."""
        hit = self._phi.get(exps)
        if hit is not None:
            return hit
        n = sum(exps)
        out: dict = {}
        # sum over permutations, split by the last letter
        for k, a in enumerate(exps):
            if not a:
                continue
            rest = exps[:k] + (a - 1,) + exps[k + 1:]
            w = Fraction(a, n)
            for t, c in self.phi_mono(rest).items():
                for t2, c2 in self.pbw.mul_letter(t, k).items():
                    _acc(out, t2, w * c * c2)
        self._phi[exps] = out
        return out

    def phi_inv_weighted(self, u: dict, weight: int, order: int) -> dict:
        """phi^{-1} of a U(g) element homogeneous of the given weight.

        Returns {(h, exps): c}, dropping h powers above order.
        """
        u = dict(u)
        out: dict = {}
        while u:
            top = max(len(m) for m in u)
            h = weight - top
            if h > order:
                break
            for m in [m for m in u if len(m) == top]:
                c = u.get(m)
                if not c:
                    continue
                exps = self.exps_of(m)
                _acc(out, (h, exps), c)
                for t, c2 in self.phi_mono(exps).items():
                    _acc(u, t, -c * c2)
        return out

    def star_mono(self, ea: tuple, eb: tuple, order: int) -> dict:
        key = (ea, eb, order)
        hit = self._star.get(key)
        if hit is not None:
            return hit
        prod = self.pbw.mul(self.phi_mono(ea), self.phi_mono(eb))
        res = self.phi_inv_weighted(prod, sum(ea) + sum(eb), order)
        self._star[key] = res
        return res

    # conversions between dict forms and Poly / HSeries

    def sym_poly(self, terms: dict, order: int, vars=None) -> HSeries:
        vars = tuple(vars or self.vars)
        buckets: list[dict] = [dict() for _ in range(order + 1)]
        pad = (0,) * (len(vars) - self.g.dim)
        for (h, e), c in terms.items():
            if h <= order:
                _acc(buckets[h], e + pad, c)
        return HSeries(Poly(vars, b) for b in buckets)

    def _split(self, p: Poly):
        n = self.g.dim
        if p.vars[:n] != self.vars:
            raise ValueError(f"polynomial variables {p.vars} must start with basis {self.vars}")
        return [(e[:n], e[n:], c) for e, c in p.terms.items()]

    def star(self, a, b, order: int = 2) -> HSeries:
        """a * b for SymElements (Poly or HSeries of Poly).

        Variables beyond the basis act as commuting parameters.
        """
        a = a if isinstance(a, HSeries) else HSeries.constant(a, order)
        b = b if isinstance(b, HSeries) else HSeries.constant(b, order)
        order = min(order, a.order, b.order)
        vars = a[0].vars
        out: list[dict] = [dict() for _ in range(order + 1)]
        for i in range(order + 1):
            for j in range(order + 1 - i):
                for ga, pa, ca in self._split(a[i]):
                    for gb, pb, cb in self._split(b[j]):
                        par = tuple(x + y for x, y in zip(pa, pb))
                        for (h, e), c in self.star_mono(ga, gb, order - i - j).items():
                            _acc(out[i + j + h], e + par, ca * cb * c)
        return HSeries(Poly(vars, o) for o in out)

    def phi(self, a, order: int = 2) -> dict:
        """U_h(g) element {(h, monomial): c} of a SymElement."""
        a = a if isinstance(a, HSeries) else HSeries.constant(a, order)
        out: dict = {}
        for i in range(min(order, a.order) + 1):
            for e, c in a[i].terms.items():
                w = sum(e)
                for m, c2 in self.phi_mono(tuple(e)).items():
                    h = i + w - len(m)
                    if h <= order:
                        _acc(out, (h, m), c * c2)
        return out

    def phi_inv(self, u: dict, order: int = 2) -> HSeries:
        """SymElement of a U_h(g) element {(h, monomial): c}."""
        by_weight: dict = {}
        for (h, m), c in u.items():
            by_weight.setdefault((h + len(m), h), {})[m] = c
        out: dict = {}
        for (w, h0), part in by_weight.items():
            # part is h^h0 * (monomials of length w - h0), homogeneous weight w
            for (h, e), c in self.phi_inv_weighted(part, w - h0, order - h0).items():
                _acc(out, (h + h0, e), c)
        return self.sym_poly(out, order)

    def normalize(self, word: Sequence[int]) -> dict:
        """Normal form of a word in U_h(g) as {(h, monomial): c}."""
        L = len(word)
        return {(L - len(m), m): c for m, c in self.pbw.word(word).items()}

    def linear_cached(self, vec: dict) -> Poly:
        key = tuple(sorted(vec.items()))
        hit = self._lin.get(key)
        if hit is None:
            hit = self._lin[key] = self.linear(vec)
        return hit

    def linear(self, vec: dict, vars=None) -> Poly:
        vars = tuple(vars or self.vars)
        out = Poly(vars)
        for k, c in vec.items():
            out = out + Poly.var(vars, self.vars[k]) * c
        return out


_ENVELOPES: dict = {}


def envelope(g: LieAlgebra) -> Envelope:
    key = (g.name, g.basis, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in g.f.items())))
    env = _ENVELOPES.get(key)
    if env is None:
        env = _ENVELOPES[key] = Envelope(g)
    return env


def pbw_normalize(word: Sequence, g: LieAlgebra) -> dict:
    idx = [g.index(a) if isinstance(a, str) else a for a in word]
    return envelope(g).normalize(idx)


def symmetrise(a, g: LieAlgebra, order: int = 2) -> dict:
    return envelope(g).phi(a, order)


def unsymmetrise(u: dict, g: LieAlgebra, order: int = 2) -> HSeries:
    return envelope(g).phi_inv(u, order)


def star_product(a, b, g: LieAlgebra, order: int = 2) -> HSeries:
    return envelope(g).star(a, b, order)


def sym_monomial(g: LieAlgebra, exps, vars=None) -> Poly:
    return Poly.monomial(vars or g.basis, tuple(exps) + (0,) * (len(vars or g.basis) - g.dim))


def format_uelem(u: dict, g: LieAlgebra) -> str:
    if not u:
        return "0"
    parts = []
    for (h, m), c in sorted(u.items(), key=lambda kv: (kv[0][0], -len(kv[0][1]), kv[0][1])):
        mono = "*".join(g.basis[a] for a in m) or "1"
        hs = "" if h == 0 else ("h*" if h == 1 else f"h^{h}*")
        parts.append(f"{c}*{hs}{mono}")
    return " + ".join(parts)


# closed forms

def _lin(env: Envelope, v) -> Poly:
    return env.linear(v if isinstance(v, dict) else {v: 1})


def _vec(v):
    return v if isinstance(v, dict) else {v: 1}


def _prod(polys, one):
    out = one
    for p in polys:
        out = out * p
    return out


def _multiset(vecs):
    groups: dict = {}
    for v in vecs:
        v = _vec(v)
        key = tuple(sorted(v.items()))
        groups[key] = groups.get(key, 0) + 1
    return [(dict(k), c) for k, c in groups.items()]


def star_closed_form(ws: Sequence, vs: Sequence, g: LieAlgebra) -> HSeries:
    """(w_1...w_m) * (v_1...v_n) to O(h^3) for symmetric products of vectors.

    Sums run over labelled, ordered choices of distinct factors; equal factors
    are grouped and counted.
    """
    env = envelope(g)
    W = _multiset(ws)
    V = _multiset(vs)
    one = Poly.const(env.vars, 1)
    br = g.bracket
    lin = env.linear_cached
    Wl = [lin(w) for w, _ in W]
    Vl = [lin(v) for v, _ in V]

    letters = all(len(v) == 1 and next(iter(v.values())) == 1 for v, _ in W + V)
    cache: dict = {}

    def rest(dw, dv):
        # product with multiplicities lowered by the dicts dw, dv
        key = (tuple(sorted(dw.items())), tuple(sorted(dv.items())))
        hit = cache.get(key)
        if hit is not None:
            return hit
        if letters:
            e = [0] * g.dim
            for groups, d in ((W, dw), (V, dv)):
                for a, (v, c) in enumerate(groups):
                    e[next(iter(v))] += c - d.get(a, 0)
            out = Poly.monomial(env.vars, e)
        else:
            out = one
            for groups, polys, d in ((W, Wl, dw), (V, Vl, dv)):
                for a, (p, (_, c)) in enumerate(zip(polys, groups)):
                    k = c - d.get(a, 0)
                    if k:
                        out = out * p ** k
        cache[key] = out
        return out

    def pairs(groups):
        # ordered choices of two distinct labelled factors, by group
        for a, (_, ca) in enumerate(groups):
            for b, (_, cb) in enumerate(groups):
                mult = ca * (ca - 1) if a == b else ca * cb
                if mult:
                    yield a, b, mult

    def lowered(*idx):
        d: dict = {}
        for i in idx:
            d[i] = d.get(i, 0) + 1
        return d

    h0 = rest({}, {})
    h1 = one.zero()
    for a, (w, ca) in enumerate(W):
        for b, (v, cb) in enumerate(V):
            h1 = h1 + lin(br(v, w)) * rest({a: 1}, {b: 1}) * (ca * cb)
    h1 = h1 * Fraction(-1, 2)

    # accumulate 24 * (h^2 part) with integer weights
    h2 = one.zero()
    for a1, a2, mw in pairs(W):
        for b1, b2, mv in pairs(V):
            t = lin(br(V[b1][0], W[a1][0])) * lin(br(V[b2][0], W[a2][0]))
            h2 = h2 + t * rest(lowered(a1, a2), lowered(b1, b2)) * (3 * mw * mv)
    for b1, b2, mv in pairs(V):
        for a, (w, ca) in enumerate(W):
            t = lin(br(V[b1][0], br(V[b2][0], w)))
            h2 = h2 + t * rest({a: 1}, lowered(b1, b2)) * (2 * mv * ca)
    for a1, a2, mw in pairs(W):
        for b, (v, cb) in enumerate(V):
            t = lin(br(W[a1][0], br(W[a2][0], v)))
            h2 = h2 + t * rest(lowered(a1, a2), {b: 1}) * (2 * mw * cb)
    h2 = h2 * Fraction(1, 24)
    return HSeries((h0, h1, h2))


def lemma_single(w, vs: Sequence, g: LieAlgebra) -> HSeries:
    """w * (v_1...v_n) to O(h^3), written with averages over positions."""
    env = envelope(g)
    V = [_vec(v) for v in vs]
    w = _vec(w)
    n = len(V)
    one = Poly.const(env.vars, 1)
    lin = env.linear
    h0 = lin(w) * _prod([lin(v) for v in V], one)
    h1 = one.zero()
    h2 = one.zero()
    for j in range(n):
        rest = _prod([lin(v) for k, v in enumerate(V) if k != j], one)
        h1 = h1 + lin(g.bracket(V[j], w)) * rest
    h1 = h1 * Fraction(-n, 2) * Fraction(1, n) if n else h1
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for a, b in pairs:
        rest = _prod([lin(v) for k, v in enumerate(V) if k not in (a, b)], one)
        h2 = h2 + lin(g.bracket(V[a], g.bracket(V[b], w))) * rest
    if pairs:
        h2 = h2 * Fraction(n * (n - 1), 12) * Fraction(1, len(pairs))
    return HSeries((h0, h1, h2))


# b+ identities, basis (t, x), [t, x] = x

def bplus_phi_displayed(n: int, m: int) -> dict:
    """phi(x^n t^m) in U_h, normal order x before t, as {(h, (x-count, t-count)): c}."""
    out: dict = {}
    coeffs = [
        (0, Fraction(1)),
        (1, Fraction(n * m, 2)),
        (2, Fraction(n * (3 * n + 1) * m * (m - 1), 24)),
        (3, Fraction(n * n * (n + 1) * m * (m - 1) * (m - 2), 48)),
    ]
    for h, c in coeffs:
        if c and m - h >= 0:
            out[(h, (n, m - h))] = c
    return out


def bplus_phi_inv_displayed(n: int, m: int) -> dict:
    """phi^{-1}(x^n t^m) as {(h, (x-count, t-count)): c}."""
    out: dict = {}
    coeffs = [
        (0, Fraction(1)),
        (1, Fraction(-n * m, 2)),
        (2, Fraction(n * (3 * n - 1) * m * (m - 1), 24)),
        (3, Fraction(n * n * (1 - n) * m * (m - 1) * (m - 2), 48)),
    ]
    for h, c in coeffs:
        if c and m - h >= 0:
            out[(h, (n, m - h))] = c
    return out


def bplus_star_displayed(n: int, m: int, r: int, s: int) -> dict:
    """(x^n t^m) * (x^r t^s) through h^3 as {(h, (x-count, t-count)): c}."""
    c1 = Fraction(m * r - n * s, 2)
    c2 = Fraction(
        m * r - m * m * r - 3 * m * r * r + 3 * m * m * r * r + n * s - 2 * m * n * s
        - 3 * n * n * s - 2 * m * r * s - 6 * m * n * r * s - n * s * s + 3 * n * n * s * s,
        24,
    )
    c3 = Fraction(
        -2 * m * r**2 + 3 * m**2 * r**2 - m**3 * r**2 + 2 * m * r**3 - 3 * m**2 * r**3
        + m**3 * r**3 + 2 * n**2 * s - 2 * m * n**2 * s - 2 * n**3 * s - m**2 * n * r * s
        - 3 * m * n**2 * r * s + 2 * m * r**2 * s - 2 * m**2 * r**2 * s + 3 * m * n * r**2 * s
        - 3 * m**2 * n * r**2 * s - 3 * n**2 * s**2 + 2 * m * n**2 * s**2 + 3 * n**3 * s**2
        + m * n * r * s**2 + 3 * m * n**2 * r * s**2 + n**2 * s**3 - n**3 * s**3,
        48,
    )
    out: dict = {}
    for h, c in enumerate((Fraction(1), c1, c2, c3)):
        if c and m + s - h >= 0:
            out[(h, (n + r, m + s - h))] = c
    return out


def bplus_reorder_displayed(s: int, r: int) -> dict:
    """t^s x^r = sum_p C(s, p) (r h)^p x^r t^(s-p) in U_h."""
    return {(p, (r, s - p)): Fraction(comb(s, p) * r**p) for p in range(s + 1) if r**p}


def bplus_xt() -> LieAlgebra:
    """b+ with basis ordered (x, t), so normal monomials read x^n t^m."""
    return bplus().permuted(["x", "t"])


def bplus_identities(n: int, m: int, r: int = 0, s: int = 0, order: int = 3) -> dict[str, tuple]:
    """Computed versus displayed forms of the b+ expansions, as comparable dicts."""
    gx = bplus_xt()
    env = envelope(gx)
    out = {}

    def u_counts(u):
        return {(h, (mono.count(0), mono.count(1))): c for (h, mono), c in u.items() if h <= order}

    phi = env.phi(Poly.monomial(gx.basis, (n, m)), order)
    out["phi"] = (u_counts(phi), bplus_phi_displayed(n, m))
    word = {(0, (0,) * n + (1,) * m): Fraction(1)}
    inv = env.phi_inv(word, order)
    out["phi_inv"] = (_sym_counts(inv), bplus_phi_inv_displayed(n, m))
    st = env.star(Poly.monomial(gx.basis, (n, m)), Poly.monomial(gx.basis, (r, s)), order)
    out["star"] = (_sym_counts(st), bplus_star_displayed(n, m, r, s))
    re = env.normalize((1,) * s + (0,) * r)
    out["reorder"] = (u_counts(re), bplus_reorder_displayed(s, r))
    return {k: (a, {key: c for key, c in b.items() if key[0] <= order}) for k, (a, b) in out.items()}


def _sym_counts(series: HSeries) -> dict:
    return {(h, e): c for h, p in enumerate(series.coeffs) for e, c in p.terms.items()}


def _exp_series_coeffs(scale: Poly, order: int, shift: int = 0):
    """Coefficients of sum_k (scale*h)^k/(k+shift)! up to h^order."""
    out = []
    pw = scale.one()
    for k in range(order + 1):
        out.append(pw * Fraction(1, factorial(k + shift)))
        pw = pw * scale
    return HSeries(out)


def bplus_cbh_check(p=None, q=None, r=None, s=None, max_weight: int = 4) -> tuple[HSeries, HSeries]:
    """Both sides of exp(pt+qx) * exp(rt+sx) = exp((p+r)t + Q x) up to weight max_weight.

    Weight counts polynomial degree in t, x plus the power of h.  Parameters
    left as None stay symbolic.  Returns (lhs, rhs) as HSeries of Poly over
    (t, x, p, q, r, s).
    """
    g = bplus()
    env = envelope(g)
    vars = ("t", "x", "p", "q", "r", "s")
    R = {v: Poly.var(vars, v) for v in vars}
    params = {"p": p, "q": q, "r": r, "s": s}
    for k, val in params.items():
        if val is not None:
            R[k] = Poly.const(vars, val)
    N = max_weight
    one = Poly.const(vars, 1)
    A = R["p"] * R["t"] + R["q"] * R["x"]
    B = R["r"] * R["t"] + R["s"] * R["x"]
    lhs = HSeries.constant(one.zero(), N)
    Apow = [one]
    Bpow = [one]
    for k in range(1, N + 1):
        Apow.append(Apow[-1] * A * Fraction(1, k))
        Bpow.append(Bpow[-1] * B * Fraction(1, k))
    for a in range(N + 1):
        for b in range(N + 1 - a):
            lhs = lhs + env.star(Apow[a], Bpow[b], N)
    # Q = (q E(hp) + s e^{hp} E(hr)) / E(h(p+r)), E(u) = (e^u - 1)/u
    Ep = _exp_series_coeffs(R["p"], N, 1)
    Er = _exp_series_coeffs(R["r"], N, 1)
    ep = _exp_series_coeffs(R["p"], N, 0)
    Epr = _exp_series_coeffs(R["p"] + R["r"], N, 1)
    Q = (Ep * R["q"] + ep * Er * R["s"]) * Epr.inverse()
    C = Q * R["x"] + (R["p"] + R["r"]) * R["t"]
    rhs = HSeries.constant(one, N)
    term = HSeries.constant(one, N)
    for j in range(1, N + 1):
        term = term * C * Fraction(1, j)
        rhs = rhs + term
    rhs = HSeries(_by_weight(c, k, N, 2) for k, c in enumerate(rhs.coeffs))
    lhs = HSeries(_by_weight(c, k, N, 2) for k, c in enumerate(lhs.coeffs))
    return lhs, rhs


def _by_weight(p: Poly, h: int, max_weight: int, ngen: int) -> Poly:
    return Poly(p.vars, {e: c for e, c in p.terms.items() if sum(e[:ngen]) + h <= max_weight})
