"""
Non-commuting graphs of small groups
====================================

Build the graph on the non-central elements of a group, joining two
elements when they fail to commute, then look at degrees, cliques and
isomorphism between graphs of different groups.
"""

from ncg import are_isomorphic, max_clique, multipartite_parts, noncommuting_graph, verify_iso
from ncg.catalog import resolve_group

# S3 has trivial center, so all five non-identity elements are vertices.
S3 = resolve_group("symmetric:3")
g = noncommuting_graph(S3)
print("S3:", g.n, "vertices,", g.edge_count, "edges, degrees", sorted(g.degree.tolist()))

# Every centralizer of a non-central element is abelian here, which makes
# the graph complete multipartite.  The parts are the centralizers minus Z.
print("S3 parts:", multipartite_parts(g))

# D4 and Q8 are not isomorphic, but their graphs are.
D4, Q8 = resolve_group("dihedral:4"), resolve_group("dicyclic:2")
g1, g2 = noncommuting_graph(D4), noncommuting_graph(Q8)
phi = are_isomorphic(g1, g2)
print("D4 ~ Q8 graphs:", phi is not None, "certificate ok:", verify_iso(g1, g2, phi.forward))
print("element orders D4", D4.element_orders().tolist())
print("element orders Q8", Q8.element_orders().tolist())

# Clique number = largest set of pairwise non-commuting elements.
for name in ["symmetric:3", "dihedral:4", "dicyclic:2", "heisenberg:3", "SL2:3", "GL2:3"]:
    G = resolve_group(name)
    print(f"{name:>14}  |G|={G.order:<3} omega={max_clique(noncommuting_graph(G))}")

# The graph can be written out for graphviz.
print(noncommuting_graph(D4).to_dot().splitlines()[0], "...")
