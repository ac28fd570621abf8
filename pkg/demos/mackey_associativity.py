"""Mackey quantisation of b+ acting on the line: which first-order term is associative?

The displayed G1 = -(c_i + e_i/2) (x) e^i and the variant e^i (x) c_i - e_i/2 (x) e^i
have the same antisymmetric part, hence the same Poisson bracket.  With the h^2
term as described only the variant gives an associative product.
"""

from itertools import product

from twistlab.dcalc import series_product
from twistlab.exact import HSeries, Poly
from twistlab.lie import bplus
from twistlab.precon import MackeyModel, b_plus_line_action
from twistlab.twist import apply_cochain, mackey_cochain, mackey_realization

g = bplus()
nc, act = b_plus_line_action()
R = mackey_realization(g, nc, act)
gens = [Poly.var(R.chart.vars, v) for v in R.chart.vars]

for kind in ("displayed", "consistent"):
    F = mackey_cochain(g, first_order=kind)
    bad = []
    for a, b, c in product(gens, repeat=3):
        lhs = series_product(F, R, apply_cochain(F, R, a, b), HSeries((c,)))
        rhs = series_product(F, R, HSeries((a,)), apply_cochain(F, R, b, c))
        if lhs != rhs:
            bad.append(f"({a}, {b}, {c}): {(lhs - rhs)[2]}")
    print(f"{kind}: {len(bad)} of {len(gens) ** 3} generator triples fail at h^2")
    for line in bad[:3]:
        print("   ", line)

M = MackeyModel(g, nc, act)
print()
print("t -> -s d/ds, x -> d/ds is a representation:", M.action_is_representation())
print("bracket table of the fields holds:", M.bracket_table_ok())
