"""
Resolution graphs and their lattices
====================================

Build a few plumbing graphs, look at the intersection matrix, and read off
the anticanonical cycle and the topological invariants.
"""

from surfsing import build_context, cone, dynkin, parse_resolution_graph, star
from surfsing.graphs import graph_euler_characteristic, intersection_matrix, link_first_betti

###############################################################################
# A graph file lists vertices (id, self-intersection, genus) and edges.
text = """
vertex c -2 0
vertex a -2 0
vertex b -2 0
vertex d -2 0
edge c a
edge c b
edge c d
"""
d4 = parse_resolution_graph(text)
print(intersection_matrix(d4))

###############################################################################
# Library constructors name vertices v0, v1, ... but give the same matrix.
assert intersection_matrix(dynkin("D", 4)) == intersection_matrix(d4)
print(intersection_matrix(star(-2, [[-2], [-2], [-2]])) == intersection_matrix(d4))

###############################################################################
# ``build_context`` computes the exact lattice data once.  For a Du Val
# graph the anticanonical cycle vanishes; for the cone over a plane quartic
# it is twice the reduced cycle.
for g in (d4, cone(4), star(-3, [[-2], [-3], [-3]])):
    ctx = build_context(g)
    print(g.s, "curves, det", ctx.discriminant, "Z_K =", ctx.z_k, "K^2 =", ctx.k_squared)

###############################################################################
# Genus and cycles in the graph both feed the first Betti number of the link.
g = cone(5)
print("b1(link) =", link_first_betti(g), "chi(graph) =", graph_euler_characteristic(g))
