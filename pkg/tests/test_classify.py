import pytest

from ringcrosscap import compile_ring
from ringcrosscap.classify import (
    AuditRecord,
    RingUniverse,
    UniverseMember,
    canonicalize,
    classify_member,
    compute_class,
    cross_validate,
    format_verdicts,
    size_bound_audit,
    theory_comaximal,
    theory_planar_gamma,
    theory_projective_gamma,
    theory_unit_unitary,
)
from ringcrosscap.graphs import build_comaximal, build_gamma, complete_graph, disjoint_copies
from ringcrosscap.rings import validate_S


def S_of(text, *S):
    R = compile_ring(text)
    return R, [R.parse_element(s) for s in S]


def test_canonical_form_ignores_factor_order():
    a = canonicalize("Z4 x Z2 x Z3")
    b = canonicalize("Z3 x Z2 x Z4")
    assert a.factors == b.factors == ("Z2", "Z3", "Z4")
    # Z6 splits into its local factors
    assert canonicalize("Z6").factors == ("Z2", "Z3")
    assert canonicalize("Z2[x]/(x^2)").factors == canonicalize("Z2[x]/(x^2+1)").factors


def test_theory_planar_examples():
    assert theory_planar_gamma(*S_of("Z2 x Z2 x Z4", "(1,1,1)"))
    assert not theory_planar_gamma(*S_of("Z5", "2", "3"))
    assert theory_planar_gamma(*S_of("Z3 x Z3", "(1,2)"))


def test_theory_projective_examples():
    assert theory_projective_gamma(*S_of("Z5", "4"))
    assert not theory_projective_gamma(*S_of("Z7", "1"))
    assert not theory_projective_gamma(*S_of("Z3 x Z3", "(1,1)", "(2,2)"))
    # swapping the factors of Z3 x Z3 does not change the verdict
    assert theory_projective_gamma(*S_of("Z3 x Z3", "(1,2)", "(2,2)"))
    assert theory_projective_gamma(*S_of("Z3 x Z3", "(2,1)", "(2,2)"))


def test_theory_unit_unitary():
    for ring, want in (("Z5", (False, True, True)), ("Z3 x Z3", (False, True, False)),
                       ("Z7", (False, False, False))):
        r = theory_unit_unitary(ring)
        assert (r.unit_graph_projective, r.unitary_cayley_projective, r.gamma_units_projective) == want


def test_theory_comaximal():
    assert theory_comaximal("Z2 x Z2 x Z2") == "planar"
    assert theory_comaximal("Z2 x Z4") == "projective"
    assert theory_comaximal("Z2 x Z2 x Z4") == "neither"


def test_compute_class_witnesses():
    R = compile_ring("Z7")
    c = compute_class(build_gamma(R, validate_S(R, None, {1})))
    assert c.cls == "neither" and c.witness_text() == "A2 (isomorphic)"
    c = compute_class(build_comaximal(compile_ring("Z2 x Z4")))
    assert c.cls == "projective" and c.certificate.euler_genus == 1
    c = compute_class(disjoint_copies(complete_graph(4), 3))
    assert c.cls == "planar"
    c = compute_class(complete_graph(7), budget=10)
    assert c.cls in ("neither", "unknown")


def test_size_bound_audit_examples():
    recs = [AuditRecord("Z5", "gamma", "{4}", 1), AuditRecord("Z8", "gamma", "{1}", 2),
            AuditRecord("Z3 x Z3", "gamma", "{(2,2)}", 1)]
    report = size_bound_audit(recs)
    assert report.ok and report.checked == 3


def test_size_bound_audit_flags_violations():
    report = size_bound_audit([AuditRecord("Z7", "gamma", "{1}", 1), AuditRecord("Z2^4 x Z3", "gamma", "{1}", 1)])
    assert not report.ok
    assert any("|U(R)|" in v or "32k" in v for v in report.violations)


def test_universe_respects_order_limit():
    uni = RingUniverse(max_order=12)
    rings = uni.rings()
    assert all(compile_ring(r).order <= 12 for r in rings)
    assert "Z3 x Z3" in rings and "Z5" in rings
    members = uni.members()
    for m in members:
        if m.family == "gamma":
            R = compile_ring(m.ring)
            validate_S(R, None, m.S)


def test_z3xz3_all_fifteen_sets():
    uni = RingUniverse()
    R = compile_ring("Z3 x Z3")
    members = [UniverseMember("Z3 x Z3", "gamma", s) for s in uni.s_sets(R)]
    verdicts = cross_validate(members=members)
    assert len(verdicts) == 15 and all(v.agreement for v in verdicts)
    projective = sorted(v.S for v in verdicts if v.computed == "projective")
    assert projective == ["{(1,2),(2,2)}", "{(2,1),(2,2)}", "{(2,2)}"]


def test_cross_validate_small_universe_agrees():
    verdicts = cross_validate(RingUniverse(max_order=8))
    assert verdicts and all(v.agreement for v in verdicts)
    text = format_verdicts(verdicts)
    assert f"{len(verdicts)}/{len(verdicts)} agree" in text
    assert format_verdicts(verdicts, "tsv").splitlines()[0].startswith("ring\tfamily")


def test_cross_validate_order_independent_of_workers():
    uni = RingUniverse(max_order=6)
    a = [(v.ring, v.family, v.S, v.computed) for v in cross_validate(uni, workers=1)]
    b = [(v.ring, v.family, v.S, v.computed) for v in cross_validate(uni, workers=2)]
    assert a == b


def test_classify_member_comaximal():
    v = classify_member(UniverseMember("Z2 x Z4", "comaximal", None))
    assert v.theory == v.computed == "projective" and v.agreement


def _raw_ring(elems, add, mul, one):
    import numpy as np
    from ringcrosscap.rings import FiniteRing

    idx = {e: i for i, e in enumerate(elems)}
    A = np.array([[idx[add(a, b)] for b in elems] for a in elems])
    M = np.array([[idx[mul(a, b)] for b in elems] for a in elems])
    R = FiniteRing("raw", A, M, (len(elems),))
    R.one = idx[one]
    R.check_axioms()
    return R


def _z4x(t):
    # Z4[x]/(2x, x^2 - t): elements a + b x, a in Z4, b in Z2
    E = [(a, b) for a in range(4) for b in range(2)]
    return _raw_ring(E, lambda u, v: ((u[0] + v[0]) % 4, (u[1] + v[1]) % 2),
                     lambda u, v: ((u[0] * v[0] + t * u[1] * v[1]) % 4, (u[0] * v[1] + u[1] * v[0]) % 2), (1, 0))


def _z2xy():
    # Z2[x,y]/(x,y)^2: elements a + b x + c y
    import itertools
    E = list(itertools.product(range(2), repeat=3))
    return _raw_ring(E, lambda u, v: tuple((i + j) % 2 for i, j in zip(u, v)),
                     lambda u, v: (u[0] * v[0] % 2, (u[0] * v[1] + u[1] * v[0]) % 2,
                                   (u[0] * v[2] + u[2] * v[0]) % 2), (1, 0, 0))


@pytest.mark.parametrize("make", [lambda: _z4x(0), lambda: _z4x(2), _z2xy],
                         ids=["Z4[x]/(2x,x^2)", "Z4[x]/(2x,x^2-2)", "Z2[x,y]/(x,y)^2"])
def test_order8_local_rings_outside_catalog_give_k44(make):
    from ringcrosscap.graphs import complete_bipartite, isomorphic
    from ringcrosscap.rings import inverse_closed_subsets

    R = make()
    assert len(R.jacobson) == 4
    for S in inverse_closed_subsets(R):
        assert isomorphic(build_gamma(R, validate_S(R, None, S)), complete_bipartite(4, 4))
