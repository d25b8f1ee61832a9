"""All fifteen inverse-closed S over Z3 x Z3, with the witness for each verdict.

Every unit of Z3 x Z3 is its own inverse, so every non-empty subset of the
four units is a valid S.  Planar and projective graphs come with an
embedding certificate; the rest come with an obstruction homeomorph.
"""

from ringcrosscap.classify import RingUniverse, UniverseMember, cross_validate, format_verdicts
from ringcrosscap import compile_ring

R = compile_ring("Z3 x Z3")
members = [UniverseMember("Z3 x Z3", "gamma", s) for s in RingUniverse().s_sets(R)]
print(format_verdicts(cross_validate(members=members)))
