"""
Signature bounds on the cone family
===================================

For cones over smooth plane curves every input is known, so each bound can
be evaluated with its exact margin.
"""

from surfsing import build_context, cone_singularity, evaluate_bounds, homogeneous_icis, minimize_chi
from surfsing.bounds import asymptotic_ratio, smoothing_invariants

###############################################################################
# Milnor number and signature from p_g, mu_0 and K^2 + s.
print(smoothing_invariants(4, 6, -15))

###############################################################################
# A bound report for the degree 5 cone.
g, data = cone_singularity(5)
ctx = build_context(g)
rep = evaluate_bounds(ctx, data, minimize_chi(ctx).optimum_value)
for row in rep.rows:
    print(f"{row.id:4} {row.status:15} margin {row.margin}")

###############################################################################
# Homogeneous complete intersections: mu / p_g approaches a constant
# depending only on the number of equations.
for r in (1, 2, 3):
    h = homogeneous_icis([60] * r)
    print(r, float(h.mu / h.p_g), float(asymptotic_ratio(r)))
