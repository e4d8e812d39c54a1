"""
The Artin cycle by Laufer's algorithm
=====================================

Starting from the reduced cycle, keep adding a curve that pairs positively
with the current cycle.  The result is the smallest anti-nef cycle.
"""

from surfsing import artin_cycle, build_context, dynkin
from surfsing.lattice import square
from surfsing.search import brute_force_artin_cycle

###############################################################################
# On D4 one step is enough: the centre gets coefficient 2.
ctx = build_context(dynkin("D", 4))
trace = []
z = artin_cycle(ctx, trace)
print("Z_min =", z, "added curves", trace)

###############################################################################
# E8 needs a longer walk.  The brute-force search over cycles ordered by
# degree finds the same answer.
ctx = build_context(dynkin("E", 8))
z = artin_cycle(ctx)
print("Z_min =", z, "Z_min^2 =", square(ctx, z))
assert z == brute_force_artin_cycle(ctx)
