"""
Colengths of products of monomial ideals
========================================

For m-primary monomial ideals a_1, ..., a_d in e variables,
``d^(e-1) * sum colength(a_i) >= colength(a_1 ... a_d)``.
"""

from surfsing import make_ideal, radial_containment_check, strictness_witness, verify_colength_lemma
from surfsing.monomial import colength, maximal_ideal, product

###############################################################################
# The maximal ideal of k[x, y] squared: 2 * (1 + 1) = 4 against 3.
m = maximal_ideal(2)
print(verify_colength_lemma([m, m]))

###############################################################################
# A less symmetric pair.
a = make_ideal(2, [(2, 0), (0, 3)])
print(a, "*", m, "=", product(a, m), "colength", colength(product(a, m)))
print(verify_colength_lemma([a, m]))

###############################################################################
# Along each ray the staircase of the product is entered no later than the
# sum of the entry radii of the factors; the Hölder step holds exactly.
rep = radial_containment_check([a, m], samples=5, seed=0)
for s in rep.samples:
    radii = ", ".join(str(r) for r in s.entry_radii)
    print("direction", tuple(int(t) for t in s.direction), "radii", radii, "sum", s.sum_radius, s.contained, s.holder_ok)

###############################################################################
# A monomial in a^2 that lies outside the radial sum explains strictness.
w = strictness_witness(a, 2)
print(w.vector, w.in_power, w.in_radial_sum)
