"""Why Gamma(Z7, {1}) is not projective.

The graph has 18 edges on 7 vertices.  It turns out to be a copy of A2,
one of the known obstructions for the projective plane, and the embedding
search confirms that no one-crosscap embedding exists.
"""

from ringcrosscap import compile_ring
from ringcrosscap.embedding import search_embedding
from ringcrosscap.graphs import build_gamma, isomorphic, structure_report
from ringcrosscap.obstructions import obstruction
from ringcrosscap.rings import validate_S

R = compile_ring("Z7")
G = build_gamma(R, validate_S(R, None, {1}))
rep = structure_report(G)
print(f"Gamma(Z7, {{1}}): p={rep.p} q={rep.q} degrees={rep.degree_sequence}")

iso = isomorphic(G, obstruction("A2").graph)
print("isomorphic to A2:", iso is not None)

r = search_embedding(G, 1, "nonorientable")
print(f"one crosscap: {r.status.value} after {r.nodes} nodes ({r.reason})")
r = search_embedding(G, 2, "nonorientable")
print(f"two crosscaps: {r.status.value}, certificate with {r.certificate.F} faces")
