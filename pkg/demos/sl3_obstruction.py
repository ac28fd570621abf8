"""No invariant Poisson-compatible flat preconnection on sl3*: the trilinear computation.

The only freedom is Xi = [v, w]/2 + lam Xi_hat with Xi_hat built from the
invariant cubic det.  The lam-linear curvature cancels, and the quadratic
term does not.
"""

from twistlab.lie import sl3
from twistlab.precon import DISPLAYED_TRILINEAR, SL3Trilinear, linear_terms_cancel, sln_obstruction
from twistlab.report import render

ob = sln_obstruction(3)
print("dimension of invariant symmetric maps g (x) g -> g:", ob["moduli_dimension"])
print("trilinear on t1 = e11 - e22, t2 = e22 - e33:", render(ob["trilinear"]))
print("values as printed:                          ", render(DISPLAYED_TRILINEAR))
print()
print("displayed formula, computed values:", ob["formula_oracle_values"])
print("displayed formula, printed values: ", ob["formula_displayed_values"])
print("kappa-contraction I(v,e_i,w)I(w,v,e_j) - I(w,e_i,w)I(v,v,e_j):", ob["contraction"])
print()
print("lam-linear terms cancel:", linear_terms_cancel(sl3(), SL3Trilinear().xi_hat))
print("R(t1, t2) dt2, quadratic in lam:", render(ob["curvature_vector"]))
