import sys

import sympy as sp

from twistlab.exact import Poly, SphereElem

X, Y = sp.symbols("x y")
Z = sp.sqrt(1 - X**2 - Y**2)


def poly_to_sympy(p: Poly, symbols=None):
    syms = symbols or sp.symbols(" ".join(p.vars))
    if len(p.vars) == 1 and not isinstance(syms, (list, tuple)):
        syms = (syms,)
    out = sp.Integer(0)
    for exps, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, exps):
            term *= s**k
        out += term
    return out


def sphere_to_sympy(e: SphereElem):
    p = poly_to_sympy(e.p, (X, Y))
    q = poly_to_sympy(e.q, (X, Y))
    return (p + q * Z) / Z**e.m


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
