import pytest

from ringcrosscap import compile_ring
from ringcrosscap.graphs import (
    Graph,
    build_gamma,
    complete_bipartite,
    complete_graph,
    disjoint_copies,
    disjoint_union,
)
from ringcrosscap.obstructions import obstruction
from ringcrosscap.rings import validate_S
from ringcrosscap.topology import (
    InexactInput,
    OutOfRange,
    TooFewVertices,
    crosscap_exact,
    crosscap_lower_bound_edges,
    kmn_crosscap,
    kn_crosscap,
    min_degree_consistency,
    orientable_genus,
    planarity,
    stahl_compose,
)


def gamma(text, *S):
    R = compile_ring(text)
    return build_gamma(R, validate_S(R, None, {R.parse_element(s) for s in S}))


def test_edge_bounds():
    assert crosscap_lower_bound_edges(10, 20, 1, True) == 2
    assert crosscap_lower_bound_edges(7, 21, 1, False) == 2
    assert crosscap_lower_bound_edges(16, 48, 1, True) == 10
    assert crosscap_lower_bound_edges(8, 16, 1, True) == 2
    assert crosscap_lower_bound_edges(4, 3) == 0
    with pytest.raises(TooFewVertices):
        crosscap_lower_bound_edges(2, 1)


def test_min_degree_consistency():
    assert min_degree_consistency(complete_graph(5), 1)
    assert min_degree_consistency(complete_graph(7), 3)
    assert not min_degree_consistency(complete_graph(7), 1)


def test_formulas():
    assert kn_crosscap(7) == 3
    assert kn_crosscap(5) == kn_crosscap(6) == 1
    assert [kn_crosscap(n) for n in (3, 4, 8, 9)] == [0, 0, 4, 5]
    assert kmn_crosscap(4, 4) == 2 and kmn_crosscap(3, 3) == 1 and kmn_crosscap(3, 4) == 1
    with pytest.raises(OutOfRange):
        kn_crosscap(2)


def test_stahl_compose():
    assert stahl_compose([(1, 1), (1, 1)]) == 2
    assert stahl_compose([(0, 0)] * 4) == 0
    t = 5
    assert stahl_compose([(t, 2), (t, 2)]) == 1 - 2 + 2 * t
    with pytest.raises(InexactInput):
        stahl_compose([(1, None)])


def test_planarity_verdicts():
    p = planarity(gamma("Z5", "1"))
    assert p.planar and p.certificate.euler_genus == 0
    assert planarity(gamma("Z3 x Z3", "(1,1)")).planar
    p = planarity(complete_graph(5))
    assert p.planar is False and p.pattern == "K5" and p.model.check(complete_graph(5))


@pytest.mark.parametrize("G, value", [
    (complete_bipartite(3, 3), 1),
    (complete_bipartite(3, 4), 1),
    (complete_graph(4), 0),
    (complete_graph(5), 1),
    (complete_graph(6), 1),
    (complete_bipartite(4, 4), 2),
])
def test_exact_small(G, value):
    for use_formulas in (True, False):
        r = crosscap_exact(G, use_formulas=use_formulas)
        assert r.exact and r.value == value


def test_exact_z8_is_two():
    R = compile_ring("Z8")
    for S in ({1}, {7}, {3}, {1, 7}, {3, 5, 1, 7}):
        G = build_gamma(R, validate_S(R, None, S))
        r = crosscap_exact(G)
        assert r.exact and r.value == 2


def test_exact_via_composition():
    r = crosscap_exact(disjoint_copies(complete_graph(5), 2))
    assert r.exact and r.value == 2 and r.lower.reason == "component composition"
    r = crosscap_exact(disjoint_union(complete_graph(4), complete_graph(3)))
    assert r.exact and r.value == 0


def test_orientable_genus():
    assert orientable_genus(complete_graph(5)) == 1
    assert orientable_genus(complete_graph(4)) == 0
    assert orientable_genus(complete_bipartite(3, 3)) == 1


def test_budget_gives_bracket_with_obstruction():
    G = gamma("Z9", "1")
    r = crosscap_exact(G, budget=100)
    assert not r.exact and r.lower.value == 2
    assert r.obstruction is not None and r.obstruction[0] == "K36"


def test_a2_is_not_projective():
    r = crosscap_exact(obstruction("A2").graph)
    assert r.exact and r.value == 2
