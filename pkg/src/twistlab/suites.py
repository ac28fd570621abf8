"""Verification suites.  Each suite is a function Options -> SuiteResult; failures are data."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product

from .exact import HSeries, Poly, SphereElem
from .report import Recorder, SuiteResult

DEFAULT_ALPHAS = (Fraction(0), Fraction(-1, 4), Fraction(-1, 2))


@dataclass(frozen=True)
class Options:
    order: int = 3
    max_degree: int = 4
    algebra: str | None = None
    alpha: Fraction | None = None
    seed: int = 0
    jobs: int = 1
    timing: bool = False

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        if self.max_degree < 0:
            raise ValueError("max-degree must be non-negative")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    def alphas(self):
        return DEFAULT_ALPHAS if self.alpha is None else (Fraction(self.alpha),)

    def algebras(self, default):
        from .lie import catalogue, resolve

        if self.algebra is not None:
            return [resolve(self.algebra)]
        return [catalogue(name) for name in default]


def monomial_exps(dim: int, max_deg: int, min_deg: int = 0):
    return [e for e in product(range(max_deg + 1), repeat=dim) if min_deg <= sum(e) <= max_deg]


def _mono(g, e) -> Poly:
    return Poly.monomial(g.basis, e)


# lie: catalogue, Jacobi, round trip, PBW confluence, ring axioms

def suite_lie(opts: Options) -> SuiteResult:
    from .envalg import confluence_violations
    from .lie import CATALOGUE, catalogue, parse_definition, sl2

    rec = Recorder("lie", opts.timing)
    names = list(CATALOGUE) if opts.algebra is None else None
    algebras = [catalogue(n) for n in names] if names else opts.algebras(())
    for g in algebras:
        rec.run(f"{g.name}: Jacobi identity", lambda g=g: ([], g.jacobi_violations()))
        rec.run(f"{g.name}: definition round trip", lambda g=g: (g, parse_definition(g.to_text())))
    rec.run("sl2 Killing form tr(ad ad)", lambda: ([[8, 0, 0], [0, 0, 4], [0, 4, 0]], sl2().killing_form()))

    rng = random.Random(opts.seed)
    cases = []
    for _ in range(200):
        g = rng.choice(algebras)
        cases.append((g, tuple(rng.randrange(g.dim) for _ in range(rng.randint(0, 4)))))
    rec.grid("PBW confluence, 200 random words of length <= 4",
             cases, lambda c: (not confluence_violations(c[0], [c[1]]), (c[0].name, c[1])))
    rec.grid("ring axioms, 200 random cases", [rng.getrandbits(32) for _ in range(200)], _ring_case)
    return rec.result


def random_poly(rng, vars, deg: int, terms: int = 3) -> Poly:
    p = Poly(vars)
    for _ in range(terms):
        e = [0] * len(vars)
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(len(vars))] += 1
        p = p + Poly.monomial(vars, tuple(e), Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return p


def _ring_case(seed):
    rng = random.Random(seed)
    kind = rng.choice(("poly", "series", "sphere"))
    if kind == "poly":
        vars = ("a", "b", "c")
        x, y, z = (random_poly(rng, vars, 3) for _ in range(3))
    elif kind == "series":
        vars = ("a", "b")
        x, y, z = (HSeries([random_poly(rng, vars, 2) for _ in range(3)]) for _ in range(3))
    else:
        x, y, z = (SphereElem(random_poly(rng, ("x", "y"), 2), random_poly(rng, ("x", "y"), 2),
                              rng.randint(-2, 2)) for _ in range(3))
    ok = ((x * y) * z == x * (y * z) and x * (y + z) == x * y + x * z and x * y == y * x
          and (x + y) + z == x + (y + z) and x - x == x * 0 and x * 1 == x)
    return ok, (kind, seed)


# cbh: closed form, cochain reproduction, Kirillov-Kostant bracket, the flagged example

def suite_cbh(opts: Options) -> SuiteResult:
    from .envalg import envelope, star_closed_form
    from .lie import sl2
    from .twist import apply_cochain, cbh_cochain, sg_realization

    rec = Recorder("cbh", opts.timing)
    D = opts.max_degree
    N = min(opts.order, 2)
    bounds = {"sl2": D, "bplus": D, "sl3": min(D, 3), "heisenberg3": min(D, 3)}
    for g in opts.algebras(("sl2", "bplus", "sl3", "heisenberg3")):
        env = envelope(g)
        d = bounds.get(g.name, min(D, 3))
        mons = monomial_exps(g.dim, d)

        def closed(case, g=g, env=env):
            a, b = case
            oracle = env.star(_mono(g, a), _mono(g, b), 2)
            return star_closed_form(list(env.mono_of(a)), list(env.mono_of(b)), g) == oracle, case

        rec.grid(f"{g.name}: closed form = PBW oracle through h^2, degrees <= {d}", product(mons, mons), closed)

    for g in opts.algebras(("sl2", "bplus", "heisenberg3")):
        env = envelope(g)
        real = sg_realization(g)
        pairs = [(a, b) for a in monomial_exps(g.dim, D + 1) for b in monomial_exps(g.dim, D + 1)
                 if sum(a) + sum(b) <= D + 1]
        for alpha in opts.alphas():
            Finv = cbh_cochain(g, alpha, N)

            def repro(case, g=g, env=env, real=real, Finv=Finv):
                a, b = _mono(g, case[0]), _mono(g, case[1])
                return apply_cochain(Finv, real, a, b) == env.star(a, b, N), case

            rec.grid(f"{g.name}, alpha={alpha}: cochain reproduces the star product through h^{N}, "
                     f"total degree <= {D + 1}", pairs, repro)

            def kk(g=g, Finv=Finv, real=real):
                want, got = [], []
                for i, j in product(range(g.dim), repeat=2):
                    v, w = _mono(g, _unit(g.dim, i)), _mono(g, _unit(g.dim, j))
                    c = apply_cochain(Finv, real, v, w) - apply_cochain(Finv, real, w, v)
                    got.append(c[1])
                    want.append(env.linear(g.bracket({i: 1}, {j: 1})))
                return want, got

            rec.run(f"{g.name}, alpha={alpha}: v*w - w*v = h[v, w]", kk)

    def displayed():
        g = sl2()
        env = envelope(g)
        H, E = (Poly.var(g.basis, n) for n in ("H", "E"))
        # v = H, w = E: v[v, w] = 2HE, [v, [v, w]] = 4E
        shown = HSeries((H * H * E, H * E * 2 * Fraction(1, 2), E * 4 * Fraction(1, 6)))
        return shown, env.star(H * H, E, 2)

    rec.run("sl2: v^2*w example as displayed (h coefficient 1/2) vs PBW oracle", displayed, flagged=True)

    def prop():
        g = sl2()
        env = envelope(g)
        return star_closed_form([0, 0], [1], g), env.star(Poly.var(g.basis, "H") ** 2, Poly.var(g.basis, "E"), 2)

    rec.run("sl2: v^2*w from the closed form (h coefficient 1) = PBW oracle", prop)

    rng = random.Random(opts.seed)
    algs = opts.algebras(("sl2", "bplus", "heisenberg3"))

    def assoc(seed):
        r = random.Random(seed)
        g = r.choice(algs)
        env = envelope(g)
        a, b, c = (random_poly(r, g.basis, 4, 2) for _ in range(3))
        n = 3
        lhs = star_series(env, env.star(a, b, n), HSeries((c,)).truncate(n), n)
        rhs = star_series(env, HSeries((a,)).truncate(n), env.star(b, c, n), n)
        return lhs == rhs, (g.name, seed)

    rec.grid("star associativity through h^3, 200 random degree <= 4 triples",
             [rng.getrandbits(32) for _ in range(200)], assoc)
    return rec.result


def _unit(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def star_series(env, A: HSeries, B: HSeries, order: int) -> HSeries:
    out = None
    for p, a in enumerate(A.coeffs):
        for q, b in enumerate(B.coeffs):
            if p + q > order or not a or not b:
                continue
            part = env.star(a, b, order - p - q).truncate(order).shift(p + q)
            out = part if out is None else out + part
    if out is None:
        return HSeries.constant(Poly(env.vars), order)
    return out


# twist: closure of the twisted coproduct, coassociator, quasi-Lie data

def suite_twist(opts: Options) -> SuiteResult:
    from .envalg import PBW
    from .lie import semidirect_dual, so13_abstract
    from .twist import (CBHData, Tensor, cbh_cochain, coassociator, cojacobiator, dual_first_pbw,
                        g_letters_in, psi_from_pairs, quasi_lie_data, tseries_unit, twisted_coproduct)

    rec = Recorder("twist", opts.timing)
    for g in opts.algebras(("sl2", "bplus", "heisenberg3")):
        n = g.dim
        d = CBHData(g)
        L = semidirect_dual(g)
        pbw = dual_first_pbw(L, n)
        for alpha in opts.alphas():
            beta = alpha + Fraction(1, 2)

            def survivors(gamma, delta, zeta, d=d, pbw=pbw, n=n, alpha=alpha):
                Finv = HSeries((Tensor.unit(2), d.g1(alpha), d.g2_general(gamma, delta, zeta)))
                return sorted(L.basis[n + j] for j in range(n)
                              if g_letters_in(twisted_coproduct(Finv, n + j, pbw)[2], n))

            rec.run(f"{g.name}, alpha={alpha}: Delta_F(x), x in g*, has no g-letters at h^2 (zeta=-1/12)",
                    lambda a=alpha, b=beta, s=survivors: ([], s(a * a / 2, b * b / 2, Fraction(-1, 12))))
            if g.is_abelian():
                continue
            rec.run(f"{g.name}, alpha={alpha}: negative control zeta=0 leaves g-letters at h^2",
                    lambda a=alpha, b=beta, s=survivors, n=n: (
                        "g-letters present", "g-letters present" if s(a * a / 2, b * b / 2, 0) else "none"))
            rec.run(f"{g.name}, alpha={alpha}: control gamma=1 leaves g-letters at h^2",
                    lambda b=beta, s=survivors: (
                        "g-letters present", "g-letters present" if s(1, b * b / 2, Fraction(-1, 12)) else "none"))

        def unchanged(g=g, L=L, pbw=pbw, n=n):
            Finv = cbh_cochain(g, Fraction(-1, 4), 2)
            bad = [L.basis[j] for j in range(n) if any(twisted_coproduct(Finv, j, pbw)[k] for k in (1, 2))]
            return [], bad

        rec.run(f"{g.name}: Delta_F(x) = Delta(x) for x in g", unchanged)

        def cojac(g=g, L=L, d=d):
            pb = PBW(L)
            G1 = d.g1(Fraction(-1, 4))
            return [], [L.basis[a] for a in range(L.dim) if cojacobiator(G1, {a: 1}, pb)]

        rec.run(f"{g.name}: cojacobiator of delta vanishes", cojac)

    rec.run("trivial cochain: coassociator = 1 (x) 1 (x) 1",
            lambda: (tseries_unit(3, 2), coassociator(tseries_unit(2, 2))))

    L = so13_abstract()
    pbw = PBW(L)
    pairs = [(Fraction(1, 2), i, 3 + i) for i in range(3)]
    G1 = sum((Tensor.of((X,), (Y,), c=c) for c, X, Y in pairs), Tensor(2))
    phi = coassociator(HSeries((Tensor.unit(2), G1, G1 * G1 * Fraction(1, 2))))
    psi = phi[2].reduce(pbw)
    rec.run("so(1,3): h^1 part of the coassociator vanishes for primitive G1", lambda: (0, phi[1]))
    rec.run("so(1,3): h^2 part of the coassociator = the pair formula",
            lambda: (psi_from_pairs(L, pairs).reduce(pbw), psi))
    rec.run("so(1,3): psi is rotation invariant",
            lambda: ([], [L.basis[a] for a in range(3, 6) if psi.ad({a: 1})]))
    rec.run("so(1,3): psi is not boost invariant",
            lambda: (["X1", "X2", "X3"], [L.basis[a] for a in range(3) if psi.ad({a: 1})]))
    q = quasi_lie_data(L, G1)
    rec.run("so(1,3): delta is antisymmetric",
            lambda: ([], [k for k, v in sorted(q["delta"].items()) if v != -v.permute((1, 0))]))
    return rec.result


# coproduct: the CBH series from the twisted coproduct

def suite_coproduct(opts: Options) -> SuiteResult:
    from .twist import cbh_coproduct_pairing, cbh_cochain

    rec = Recorder("coproduct", opts.timing)
    for g in opts.algebras(("sl2", "bplus", "heisenberg3")):
        for alpha in opts.alphas():
            Finv = cbh_cochain(g, alpha, 2)
            for j in range(g.dim):
                rec.run(f"{g.name}, alpha={alpha}: <x, v w> pairing for e^{g.basis[j]}",
                        lambda Finv=Finv, g=g, j=j: tuple(reversed(cbh_coproduct_pairing(g, Finv, j))))
    return rec.result


# duflo

def suite_duflo(opts: Options) -> SuiteResult:
    from .twist import CBHData, Tensor, duflo_coboundary, duflo_expected, duflo_reduce, cbh_cochain

    rec = Recorder("duflo", opts.timing)
    for g in opts.algebras(("sl2", "sl3", "bplus")):
        expected = duflo_expected(g)
        for alpha in opts.alphas():
            rec.run(f"{g.name}, alpha={alpha}: reduced cochain = 1 - (h^2/24) kappa",
                    lambda g=g, a=alpha: (expected, duflo_reduce(cbh_cochain(g, a, 2), g)))
        rec.run(f"{g.name}: coboundary of the Duflo element", lambda g=g: (expected, duflo_coboundary(g)))

        def qq(g=g):
            d = CBHData(g)
            got = duflo_reduce(HSeries((Tensor.unit(2), d.QQ)), g)[1]
            return duflo_expected(g)[2] * 24, got

        rec.run(f"{g.name}: :Q1Q2: reduced alone = -kappa_ij e^i e^j", qq)
    return rec.result


# sphere

def suite_sphere(opts: Options) -> SuiteResult:
    from .envalg import PBW
    from .exact import SPHERE_VARS
    from .lie import so13_abstract
    from . import sphere as S

    rec = Recorder("sphere", opts.timing)
    rec.run("vector field brackets of X_i, Y_i", lambda: ([], S.bracket_table_check()))
    geo = S.sphere_geometry()
    z = SphereElem.z()
    rec.run("omega^12 = -z", lambda: (-z, geo["omega"][0][1]))
    rec.run("Christoffel table", lambda: (S.expected_christoffel(), geo["christoffel"]))
    flat = lambda T: [c for c in _flatten(T) if c]  # noqa: E731
    rec.run("torsion vanishes", lambda: ([], flat(geo["torsion"])))
    rec.run("covariant derivative of the metric vanishes", lambda: ([], flat(geo["metric_derivative"])))
    rec.run("curvature at the origin", lambda: (S.expected_curvature_origin(), geo["curvature_origin"]))
    rec.run("pi psi = 0 on all components",
            lambda: ({}, {k: v for k, v in S.reduce_over_functions(S.psi_displayed()).items() if v}))
    for k in range(3):
        rec.run(f"control: pi psi with block {k + 1} dropped is nonzero",
                lambda k=k: (True, any(S.reduce_over_functions(S.psi_displayed(k)).values())))
    rec.run("psi = 8 x (h^2 part of the coassociator) in U(so(1,3))",
            lambda: (S.psi_displayed().reduce(PBW(so13_abstract())), S.coassociator_psi()))
    x, y = S.xy_monomial(1, 0), S.xy_monomial(0, 1)
    rec.run("x*x = x^2 + (3x^2 - 1) h^2/8",
            lambda: (HSeries((x * x, x * 0, (x * x * 3 - 1) * Fraction(1, 8))), S.sphere_star(x, x)))
    rec.run("x*y - y*x = -h z",
            lambda: (HSeries((x * 0, -z, x * 0)), S.sphere_star(x, y) - S.sphere_star(y, x)))
    d3 = min(opts.max_degree, 3)
    rec.grid(f"monomial product formula, a, b, c, d <= {d3}", product(range(d3 + 1), repeat=4),
             lambda e: (S.sphere_star(S.xy_monomial(*e[:2]), S.xy_monomial(*e[2:])) == S.monomial_formula(*e), e))
    D = opts.max_degree
    mons = [(a, b) for a in range(D + 1) for b in range(D + 1) if a + b <= D]
    rec.grid(f"associator vanishes through h^2, monomial triples of degree <= {D}", product(mons, repeat=3),
             lambda t: (not S.associator(*(S.xy_monomial(*m) for m in t)), t))

    def fed(pair):
        f, g = (Poly.monomial(SPHERE_VARS, m) for m in pair)
        ok = (S.sphere_star(f, g)[2].at_origin() == S.origin_second_order(f, g)
              and S.fedosov_deviation(f, g) == S.metric_term_origin(f, g))
        return ok, pair

    rec.grid(f"h^2 at the origin and Fedosov difference -(1/8) g^ij f_i g_j, degree <= {D}",
             product(mons, repeat=2), fed)
    return rec.result


def _flatten(T):
    if isinstance(T, (list, tuple)):
        for t in T:
            yield from _flatten(t)
    else:
        yield T


# sphere-forms

def suite_sphere_forms(opts: Options) -> SuiteResult:
    from .dcalc import (form_associator, form_product, leibniz_defect, sphere_calculus, sphere_form_products,
                        sphere_preconnection_check)
    from .geom import OneForm

    rec = Recorder("sphere-forms", opts.timing)
    for name, (got, want) in sorted(sphere_form_products().items()):
        rec.check(f"{name} through h^2", want, got)
    for name, comm, cov in sphere_preconnection_check():
        rec.check(f"h^1 of {name} - d{name[-1]}*{name[0]} = nabla_{name[0]}^ d{name[-1]}", cov, comm)
    Finv, real, ch = sphere_calculus()
    d = min(opts.max_degree, 3)
    mons = [SphereElem.x() ** a * SphereElem.y() ** b for a in range(d + 1) for b in range(d + 1) if a + b <= d]
    rec.grid(f"Leibniz d(a*b) = da*b + a*db, degree <= {d}", product(range(len(mons)), repeat=2),
             lambda p: (not leibniz_defect(Finv, real, mons[p[0]], mons[p[1]]), p))
    x, y = SphereElem.x(), SphereElem.y()
    A = form_associator(Finv, real, x, OneForm.d(ch, y), x)
    rec.check("(x*dy)*x - x*(dy*x) vanishes at h^1", 0, A[1])
    rec.check("1*dx = dx", HSeries((OneForm.d(ch, x), OneForm.zero_form(ch), OneForm.zero_form(ch))),
              form_product(Finv, real, SphereElem.const(1), OneForm.d(ch, x)))
    return rec.result


# precon

def suite_precon(opts: Options) -> SuiteResult:
    from .lie import CATALOGUE, catalogue, sl2, sl3
    from .precon import (DISPLAYED_TRILINEAR, SL3Trilinear, Preconnection, canonical, expected_curvature,
                         expected_torsion, linear_terms_cancel, moduli_dimension, precon_curvature_torsion,
                         sln_obstruction)

    rec = Recorder("precon", opts.timing)
    algs = [catalogue(n) for n in CATALOGUE] if opts.algebra is None else opts.algebras(())
    for g in algs:
        P = canonical(g)
        triples = list(product(range(g.dim), repeat=3))
        e = lambda i: {i: 1}  # noqa: E731
        rec.grid(f"{g.name}: canonical R = -1/4 [[v,w],z], T = 1/2 [[v,w],z]", triples,
                 lambda t, P=P, g=g: (P.curvature(*map(e, t)) == expected_curvature(g, *map(e, t))
                                      and P.torsion(*map(e, t)) == expected_torsion(g, *map(e, t)), t))
        rec.grid(f"{g.name}: canonical preconnection is Poisson-compatible", product(range(g.dim), repeat=2),
                 lambda t, P=P: (not P.compatibility_defect(e(t[0]), e(t[1])), t))
    R, T = precon_curvature_torsion(canonical(sl2()), 0, 1, 2)
    rec.check("sl2: R(H, E) dF = -1/2 dH", {0: Fraction(-1, 2)}, R)
    rec.check("sl2: invariant symmetric maps g (x) g -> g", 0, moduli_dimension(sl2()))

    ob = sln_obstruction(3)
    rec.check("sl3: invariant symmetric maps g (x) g -> g", 1, ob["moduli_dimension"])
    rec.run("sl3: lambda-linear curvature terms cancel", lambda: (True, linear_terms_cancel(sl3(), SL3Trilinear().xi_hat)))
    rec.check("sl3: trilinear values as displayed", DISPLAYED_TRILINEAR, ob["trilinear"])
    rec.check("sl3: curvature obstruction strictly positive", True, ob["formula_oracle_values"] > 0)
    rec.check("sl3: curvature R(v, w) dw from Xi_hat is nonzero", True, any(ob["curvature_vector"].values()))
    rec.check("sl3: full bracket Xi = [v, w] is not Poisson-compatible", True,
              any(Preconnection(sl3(), half=1).compatibility_defect({i: 1}, {j: 1})
                  for i, j in product(range(8), repeat=2)))
    return rec.result


# mackey

def suite_mackey(opts: Options) -> SuiteResult:
    from .geom import OneForm
    from .lie import bplus, sl2
    from .precon import MackeyModel, b_plus_line_action, sl2_plane_action
    from .twist import apply_cochain, cbh_cochain, mackey_cochain, mackey_realization, sg_realization

    rec = Recorder("mackey", opts.timing)
    models = [("bplus on the line", bplus(), b_plus_line_action("representation")),
              ("sl2 on the plane", sl2(), sl2_plane_action())]
    for label, g, (nc, act) in models:
        M = MackeyModel(g, nc, act)
        P = M.precon
        R = mackey_realization(g, nc, act)
        Finv = mackey_cochain(g)
        N = Poly.var(nc, nc[0])
        fs = [M.f(Poly.var(nc, c)) for c in nc] + [M.f(N * N)]
        vs = [M.v({i: 1}) for i in range(g.dim)]

        def comm(a, b, Finv=Finv, R=R):
            return (apply_cochain(Finv, R, a, b) - apply_cochain(Finv, R, b, a))[1]

        rec.check(f"{label}: action is a Lie algebra map", True, M.action_is_representation())
        rec.check(f"{label}: {{v, w}} = [v, w]", [M.v(g.bracket({i: 1}, {j: 1})) for i, j in product(range(g.dim), repeat=2)],
                  [comm(vs[i], vs[j]) for i, j in product(range(g.dim), repeat=2)])
        rec.check(f"{label}: {{v, f}} = v |> f", [M.act_g({i: 1}, f) for i in range(g.dim) for f in fs],
                  [comm(vs[i], f) for i in range(g.dim) for f in fs])
        rec.check(f"{label}: {{f, g}} = 0", [], [(a, b) for a, b in product(range(len(fs)), repeat=2) if comm(fs[a], fs[b])])
        rec.check(f"{label}: bracket table of the fields", True, M.bracket_table_ok())
        half = Fraction(1, 2)
        table = []
        for i, j in product(range(g.dim), repeat=2):
            br = M.v(g.bracket({i: 1}, {j: 1}))
            table.append((P.bracket(vs[i], vs[j]) == br, P.nabla(vs[i], P.d(vs[j])) == P.d(br) * half))
        for i, f in product(range(g.dim), fs):
            table.append((P.bracket(vs[i], f) == M.act_g({i: 1}, f), P.nabla(vs[i], P.d(f)) == P.d(M.act_g({i: 1}, f)),
                          not P.nabla(f, P.d(vs[i]))))
        for f, h in product(fs, repeat=2):
            table.append((not P.bracket(f, h), not P.nabla(f, P.d(h))))
        rec.check(f"{label}: preconnection table", [], [k for k, row in enumerate(table) if not all(row)])
        curv = []
        for i, j, k in product(range(g.dim), repeat=3):
            want = P.d(M.v(g.bracket(g.bracket({i: 1}, {j: 1}), {k: 1}))) * Fraction(-1, 4)
            curv.append(P.curvature(vs[i], vs[j], P.d(vs[k])) == want)
        for i, j, f in product(range(g.dim), range(g.dim), fs):
            curv.append(not P.curvature(vs[i], vs[j], P.d(f)))
        for i, f, h in product(range(g.dim), fs, fs):
            curv.append(not P.curvature(vs[i], f, P.d(h)) and not P.curvature(f, h, P.d(vs[i])))
        rec.check(f"{label}: curvature table, R(v,w)dz = -1/4 d[[v,w],z], R(v,w)dg = 0", [],
                  [k for k, ok in enumerate(curv) if not ok])

    nc, act = b_plus_line_action("as-stated")
    M = MackeyModel(bplus(), nc, act)
    s = M.f(Poly.var(nc, "s"))
    rec.check("bplus, t -> s d/ds: nabla_t ds = ds", M.precon.d(s), M.precon.nabla(M.v({0: 1}), M.precon.d(s)))

    g = sl2()
    R = mackey_realization(g, (), [[] for _ in range(g.dim)])
    real = sg_realization(g)
    pairs = [(a, b) for a in monomial_exps(3, 2) for b in monomial_exps(3, 2)]
    F1, F2 = mackey_cochain(g), cbh_cochain(g, Fraction(-1, 2), 2)
    rec.grid("N a point: the product reduces to the CBH product (alpha = -1/2)", pairs,
             lambda p: (apply_cochain(F1, R, _mono(g, p[0]), _mono(g, p[1]))
                        == apply_cochain(F2, real, _mono(g, p[0]), _mono(g, p[1])), p))
    return rec.result


# bplus

def suite_bplus(opts: Options) -> SuiteResult:
    from .envalg import bplus_cbh_check, bplus_identities, envelope
    from .lie import bplus
    from .twist import G3_DISPLAYED, G3_FITTED, apply_cochain, bplus_g3_fit, cbh_cochain, sg_realization

    rec = Recorder("bplus", opts.timing)
    D = opts.max_degree
    N = min(opts.order, 3)
    grid = list(product(range(D + 1), repeat=4))
    for key in ("phi", "phi_inv", "star", "reorder"):
        rec.grid(f"{key} as displayed through h^{N}, exponents <= {D}", grid,
                 lambda e, key=key: (_eq(bplus_identities(*e, order=N)[key]), e))
    for params in ((1, 0, 1, 1), (2, 0, 3, 0), (0, 1, 0, 2), (None, None, None, None)):
        rec.run(f"exp(pt+qx)*exp(rt+sx) closed form, (p,q,r,s)={params}, weight <= {D}",
                lambda params=params: tuple(reversed(bplus_cbh_check(*params, max_weight=D))))
    g = bplus()
    env = envelope(g)
    real = sg_realization(g)
    d3 = min(D, 3)
    pairs = [(a, b) for a in monomial_exps(2, 2 * d3) for b in monomial_exps(2, 2 * d3)
             if max(a + b) <= d3]
    if N >= 3:
        for label, coeffs in (("as displayed (B1 - B2 - 2 B3)/96", G3_DISPLAYED),
                              ("fitted (B1 + B2 - 2 B3)/96", G3_FITTED)):
            Finv = cbh_cochain(g, Fraction(-1, 4), 3, g3=coeffs)
            rec.grid(f"G3 {label} reproduces the h^3 part, exponents <= {d3}", pairs,
                     lambda p, Finv=Finv: (apply_cochain(Finv, real, _mono(g, p[0]), _mono(g, p[1]))
                                           == env.star(_mono(g, p[0]), _mono(g, p[1]), 3), p))
        rec.run("block fit of the h^3 part is unique",
                lambda: ((list(G3_FITTED), []), _fit_summary(bplus_g3_fit(d3))))
    return rec.result


def _eq(pair):
    return pair[0] == pair[1]


def _fit_summary(fit):
    if fit is None:
        return None
    part, null = fit
    return list(part), null


# dcalc and spacetime

def suite_dcalc(opts: Options) -> SuiteResult:
    from .dcalc import SgCalculus, form_product, leibniz_defect
    from .twist import tseries_unit

    rec = Recorder("dcalc", opts.timing)
    algs = opts.algebras(("bplus", "heisenberg3", "sl2"))
    calcs = {}
    for g in algs:
        for alpha in opts.alphas():
            C = SgCalculus(g, alpha, min(opts.order, 2))
            calcs[(g.name, alpha)] = C
            n = g.dim
            idx = list(product(range(n), repeat=2))
            rec.check(f"{g.name}, alpha={alpha}: v*dw = v dw + h beta d[v,w]",
                      [C.expected_left(i, j) for i, j in idx], [C.left(C.lin({i: 1}), C.d(C.lin({j: 1}))) for i, j in idx])
            rec.check(f"{g.name}, alpha={alpha}: dw*v = (dw) v + h alpha d[v,w]",
                      [C.expected_right(i, j) for i, j in idx], [C.right(C.d(C.lin({j: 1})), C.lin({i: 1})) for i, j in idx])
            rec.check(f"{g.name}, alpha={alpha}: each h^2 cochain term contributes 0",
                      [], [(i, j, w) for i, j in idx for w, a, b in C.second_order_contributions(i, j) if a or b])
        C = calcs[(g.name, opts.alphas()[0])]
        rec.check(f"{g.name}: h^1 of v*dw - dw*v = d Xi(v, w), canonical Xi",
                  [], [(i, j) for i, j, got, want in C.preconnection_check() if got != want])
        triv = HSeries((tseries_unit(2, 0)[0],))
        x = C.lin({0: 1})
        rec.check(f"{g.name}: trivial cochain gives the undeformed product",
                  HSeries((C.d(x) * x,)), form_product(triv, C.real, x, C.d(x)))

    rng = random.Random(opts.seed)
    keys = sorted(calcs, key=lambda k: (k[0], k[1]))

    def leib(seed):
        r = random.Random(seed)
        C = calcs[keys[r.randrange(len(keys))]]
        n = C.g.dim
        e1, e2 = ([0] * n, [0] * n)
        for e in (e1, e2):
            for _ in range(r.randint(0, 3)):
                e[r.randrange(n)] += 1
        a, b = _mono(C.g, tuple(e1)), _mono(C.g, tuple(e2))
        return not leibniz_defect(C.Finv, C.real, a, b), (C.g.name, str(C.alpha), tuple(e1), tuple(e2))

    rec.grid("Leibniz under twisting, 200 random monomial pairs of degree <= 3",
             [rng.getrandbits(32) for _ in range(200)], leib)
    return rec.result


def suite_spacetime(opts: Options) -> SuiteResult:
    from .dcalc import spacetime_relations

    rec = Recorder("spacetime", opts.timing)
    for n in (1, 3):
        for alpha in opts.alphas():
            for name, (a, b, want) in spacetime_relations(n, alpha).items():
                rec.check(f"n={n}, alpha={alpha}: h^1 of t*d{name} - d{name}*t = d{name}/2", want, a[1])
                rec.check(f"n={n}, alpha={alpha}: h^1 of dt*{name} - {name}*dt = d{name}/2", want, b[1])
                rec.check(f"n={n}, alpha={alpha}: no h^0 or h^2 part", [0, 0, 0, 0], [a[0], b[0], a[2], b[2]])
    from .dcalc import SgCalculus
    from .lie import bplus

    C = SgCalculus(bplus())
    x = C.lin({1: 1})
    rec.check("x*dx - dx*x = 0", True, not (C.left(x, C.d(x)) - C.right(C.d(x), x)))
    return rec.result


# r2n

def suite_r2n(opts: Options) -> SuiteResult:
    from .geom import (bivector_from_pairs, christoffel_from_cochain, constant_curvature_formula, curvature_tensor,
                       inverse_matrix, lower_christoffel, poisson_closed, r2n_chart, r2n_inverse_builder, r2n_pairs,
                       standard_pairs, symmetric_tensor, two_form_closed)
    from .sphere import CHART, sphere_geometry

    rec = Recorder("r2n", opts.timing)
    for n in (1, 2):
        ch = r2n_chart(n)
        G = christoffel_from_cochain(standard_pairs(n, ch), ch)
        rec.check(f"R^{2 * n}: constant fields give zero Christoffel symbols", [], [c for c in _flatten(G) if c])
        rec.check(f"R^{2 * n}: zero target gives no triples", [], r2n_inverse_builder({}, n))
    rng = random.Random(opts.seed)

    def roundtrip(case):
        n, seed = case
        r = random.Random(seed)
        N = 2 * n
        target = {k: Fraction(r.randint(-3, 3), r.randint(1, 3))
                  for k in combinations_with_replacement(range(N), 3) if r.random() < 0.6}
        ch, pairs = r2n_pairs(r2n_inverse_builder(target, n), n)
        w = bivector_from_pairs(pairs, ch)
        G = christoffel_from_cochain(pairs, ch)
        low = lower_christoffel(G, inverse_matrix(w, ch), ch)
        full = symmetric_tensor(target, N)
        ok = all(low[a][b][c] == ch.const(full[a][b][c]) for a, b, c in product(range(N), repeat=3))
        R = curvature_tensor(G, ch)
        w0 = [[ch.at_origin(w[i][j]) for j in range(N)] for i in range(N)]
        Rf = constant_curvature_formula(full, w0, n)
        ok = ok and all(R[a][b][c][d] == ch.const(Rf[a][b][c][d]) for a, b, c, d in product(range(N), repeat=4))
        ok = ok and poisson_closed(w, ch)
        return ok, case

    cases = [(1, rng.getrandbits(32)) for _ in range(20)] + [(2, rng.getrandbits(32)) for _ in range(5)]
    rec.grid("random constant symmetric Gamma round-trips, curvature formula, closed omega", cases, roundtrip)
    geo = sphere_geometry()
    rec.check("sphere: omega satisfies the Jacobi identity", True, poisson_closed(geo["omega"], CHART))
    rec.check("sphere: omega^{-1} is closed", True, two_form_closed(inverse_matrix(geo["omega"], CHART), CHART))
    return rec.result


SUITES = {
    "bplus": suite_bplus,
    "cbh": suite_cbh,
    "coproduct": suite_coproduct,
    "dcalc": suite_dcalc,
    "duflo": suite_duflo,
    "lie": suite_lie,
    "mackey": suite_mackey,
    "precon": suite_precon,
    "r2n": suite_r2n,
    "spacetime": suite_spacetime,
    "sphere": suite_sphere,
    "sphere-forms": suite_sphere_forms,
    "twist": suite_twist,
}


class UnknownSuite(ValueError):
    pass


def suite_names(name: str) -> list:
    if name == "all":
        return sorted(SUITES)
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; valid: {', '.join(sorted(SUITES) + ['all'])}")
    return [name]


def run_suite(name: str, opts: Options | None = None) -> SuiteResult:
    """One named suite; use run_suites for "all"."""
    if name not in SUITES:
        suite_names(name)
        raise UnknownSuite("run_suite takes a single suite; use run_suites for 'all'")
    return SUITES[name](opts or Options())


def _run_named(args):
    name, opts = args
    return SUITES[name](opts)


def run_suites(name: str, opts: Options | None = None) -> list:
    opts = opts or Options()
    names = suite_names(name)
    if opts.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            results = list(pool.map(_run_named, [(n, opts) for n in names]))
    else:
        results = [SUITES[n](opts) for n in names]
    return sorted(results, key=lambda r: r.name)
