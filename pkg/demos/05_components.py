"""Crosscap number of a disjoint union from its components.

Two copies of K5 need two crosscaps even though each copy alone needs
one.  The composition rule needs both the crosscap number and the
orientable genus of each component; the direct search on the union
joined by a bridge gives the same answer.
"""

from ringcrosscap.graphs import Graph, complete_graph, disjoint_copies
from ringcrosscap.topology import crosscap_exact, orientable_genus, stahl_compose

K5 = complete_graph(5)
pair = (crosscap_exact(K5).value, orientable_genus(K5))
print("K5: crosscap, genus =", pair)
print("composition for 2 K5:", stahl_compose([pair, pair]))

union = disjoint_copies(K5, 2)
print("crosscap_exact on 2 K5:", crosscap_exact(union).render())

bridged = Graph(10, list(union.edges) + [(0, 5)])
r = crosscap_exact(bridged, use_formulas=False, use_obstructions=False)
print("direct search on the bridged union:", r.value)
