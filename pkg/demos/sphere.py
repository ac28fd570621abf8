"""Quantising the sphere with G1 = (1/2) X_i (x) Y_i in the upper-hemisphere chart."""

from twistlab import sphere as S
from twistlab.exact import Poly, SPHERE_VARS
from twistlab.report import render

geo = S.sphere_geometry()
print("omega^12 =", geo["omega"][0][1])
print("Christoffel symbols equal the round-sphere table:", geo["christoffel"] == S.expected_christoffel())
print("curvature at the origin:", render(geo["curvature_origin"]))
print()

x, y = S.xy_monomial(1, 0), S.xy_monomial(0, 1)
print("x*x =", S.sphere_star(x, x))
print("x*y - y*x =", S.sphere_star(x, y) - S.sphere_star(y, x))
print("(x*y)*x - x*(y*x) =", S.associator(x, y, x))
print()

# the h^2 term at the origin differs from Fedosov's by a metric term
f = Poly.monomial(SPHERE_VARS, (1, 0))
print("Fedosov difference for f = g = x:", S.fedosov_deviation(f, f))
print("-(1/8) g^ij f_i g_j at the origin: ", S.metric_term_origin(f, f))
