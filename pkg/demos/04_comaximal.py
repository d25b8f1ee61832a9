"""Co-maximal graphs: which small rings give planar or projective graphs.

Rx + Ry = R is checked on the ring tables; the classification is then
computed for every ring of order at most 16 in the catalog universe.
"""

from ringcrosscap.classify import RingUniverse, cross_validate

uni = RingUniverse(max_order=16, families=("comaximal",))
by_class = {}
for v in cross_validate(uni):
    by_class.setdefault(v.computed, []).append(v.ring)
    assert v.agreement, v
for cls in ("planar", "projective", "neither"):
    print(f"{cls:10} {len(by_class.get(cls, [])):2}  " + ", ".join(by_class.get(cls, [])))
