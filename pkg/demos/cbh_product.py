"""The CBH star product on S(sl2): PBW oracle, closed form, and the two-term cochain."""

from fractions import Fraction

from twistlab.envalg import envelope, star_closed_form
from twistlab.exact import Poly
from twistlab.lie import sl2
from twistlab.twist import apply_cochain, cbh_cochain, sg_realization

g = sl2()
env = envelope(g)
H, E, F = (Poly.var(g.basis, n) for n in g.basis)

print("H^2 * E through h^2")
print("  PBW oracle: ", env.star(H * H, E, 2))
print("  closed form:", star_closed_form([0, 0], [1], g))
# the first-order coefficient is v[v, w] with weight 1, not 1/2
print()

real = sg_realization(g)
for alpha in (Fraction(0), Fraction(-1, 4), Fraction(-1, 2)):
    F_inv = cbh_cochain(g, alpha, 2)
    got = apply_cochain(F_inv, real, H * E, F * F)
    print(f"alpha = {alpha}: cochain agrees with the oracle:", got == env.star(H * E, F * F, 2))

F_inv = cbh_cochain(g, Fraction(-1, 4), 2)
print()
print("v*w - w*v at h^1 recovers the bracket:")
for a, b in ((H, E), (E, F), (H, F)):
    c = apply_cochain(F_inv, real, a, b) - apply_cochain(F_inv, real, b, a)
    print(f"  [{a}, {b}] ->", c[1])
