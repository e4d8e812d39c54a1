"""
Minimising the Riemann-Roch function
====================================

``chi(l) = -(l, l - Z_K)/2`` is minimised over the lattice by exact
closest-vector enumeration.  We compare it with a plain box scan.
"""

from surfsing import build_context, cone, star
from surfsing.search import arithmetic_genus, brute_force_min_chi, minimize_chi

###############################################################################
# The cone over a plane quartic: one curve of genus 3 and self-intersection -4.
ctx = build_context(cone(4))
res = minimize_chi(ctx)
print("min chi =", res.optimum_value, "at", res.canonical, "after", res.nodes_visited, "nodes")
print("arithmetic genus p_a =", arithmetic_genus(res.optimum_value))

###############################################################################
# The minimum is never below K^2/8, the value of chi at Z_K/2.
print("K^2/8 =", ctx.k_squared / 8)

###############################################################################
# A star whose centre has genus 2.  The box scan over [-2E, Z_K + 2E]
# is an independent check of the enumeration.
ctx = build_context(star(-3, [[-3], [-3], [-3]], center_genus=2))
E = ctx.reduced_cycle
fast = minimize_chi(ctx)
slow = brute_force_min_chi(ctx, -2 * E, ctx.z_k + 2 * E)
print(fast.optimum_value, slow.optimum_value, fast.minimizers)
