"""Every inverse-closed S over Z5 except {1} gives a projective graph.

For each S we print the verdict and, for the projective cases, the face
count of the certificate the search produced.  The certificate text is
what ``ringcrosscap classify --out`` writes to disk.
"""

from ringcrosscap import compile_ring
from ringcrosscap.classify import compute_class, theory_gamma_class
from ringcrosscap.graphs import build_gamma
from ringcrosscap.rings import inverse_closed_subsets, validate_S

R = compile_ring("Z5")
for S in sorted(inverse_closed_subsets(R), key=lambda s: (len(s), sorted(s))):
    G = build_gamma(R, validate_S(R, None, S))
    c = compute_class(G)
    faces = f"F={c.certificate.F}" if c.certificate is not None else ""
    print(f"S={sorted(S)!s:14} q={G.q:2}  theory={theory_gamma_class(R, S):10} computed={c.cls:10} {faces}")

S = {2, 3}
G = build_gamma(R, validate_S(R, None, S))
print()
print(compute_class(G).certificate.to_text())
