"""
Characteristic vectors and the coset search
===========================================

In a unimodular lattice the characteristic vectors form one coset of 2L and
their largest square ``xi^2`` satisfies ``xi^2 + s >= 0`` with
``xi^2 + s`` divisible by 8.  For general graphs we search the coset
``Z_K + 2L`` and compare with the Artin cycle.
"""

from surfsing import build_context, conjecture_check, dynkin, elkies_min_square
from surfsing.graphs import from_matrix

###############################################################################
# E8 is even and unimodular, so 0 is characteristic and the slack is s = 8.
el = elkies_min_square(build_context(dynkin("E", 8)))
print("xi =", el.xi, "xi^2 =", el.xi_squared, "slack =", el.slack)

###############################################################################
# A blown-up point gives an odd unimodular lattice.
el = elkies_min_square(build_context(from_matrix([-2, -1], [(0, 1)])))
print("xi =", el.xi, "xi^2 =", el.xi_squared, "slack =", el.slack)

###############################################################################
# The coset check ``xi^2 + s >= Z_min^2`` on a tree ...
r = conjecture_check(build_context(from_matrix([-3, -2, -5], [(0, 1), (1, 2)])))
print("tree: margin", r.margin, "holds", r.holds)

###############################################################################
# ... and on two elliptic curves meeting in three points, where it fails.
r = conjecture_check(build_context(from_matrix([-3, -6], [(0, 1)] * 3, [1, 1])))
print("xi =", r.xi, "xi^2 =", r.xi_squared, "Z_min^2 =", r.z_min_squared, "margin", r.margin)
