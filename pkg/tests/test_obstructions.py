import pytest

from ringcrosscap import compile_ring
from ringcrosscap.graphs import Graph, build_gamma, complete_bipartite, complete_graph, isomorphic
from ringcrosscap.obstructions import (
    CATALOG_ORDER,
    DetectionStatus,
    UnknownName,
    a2_ring_graph,
    catalog,
    detect_obstruction,
    e18_ring_graph,
    identify,
    obstruction,
)
from ringcrosscap.rings import validate_S
from ringcrosscap.topology import crosscap_exact


def gamma(text, *S):
    R = compile_ring(text)
    return build_gamma(R, validate_S(R, None, {R.parse_element(s) for s in S}))


def test_catalog_shapes():
    assert obstruction("K5").graph == complete_graph(5)
    a2 = obstruction("A2").graph
    assert (a2.p, a2.q) == (7, 18)
    e18 = obstruction("E18").graph
    assert (e18.p, e18.q) == (8, 15)
    assert [n.name for n in catalog()] == list(CATALOG_ORDER)
    with pytest.raises(UnknownName):
        obstruction("K9")


def test_ring_realisations():
    assert isomorphic(obstruction("A2").graph, a2_ring_graph())
    assert isomorphic(obstruction("E18").graph, e18_ring_graph())
    # E18: all cross pairs adjacent except the two zero-labelled vertices
    G = e18_ring_graph()
    assert G.is_bipartite() and G.q == 15
    minus = Graph(8, [e for e in complete_bipartite(4, 4).edges if e != (0, 4)])
    assert isomorphic(G, minus)


@pytest.mark.parametrize("name", ["K44", "K36", "A2", "B3", "E18"])
def test_catalog_members_are_not_projective(name):
    r = crosscap_exact(obstruction(name).graph)
    assert r.exact and r.value >= 2


def test_b3_is_subgraph_of_z3xz3():
    host = gamma("Z3 x Z3", "(1,1)", "(1,2)")
    det = detect_obstruction(host, ["B3"])
    assert det.found and det.model.check(host)


def test_detect_examples():
    G = gamma("Z3 x Z3", "(1,1)", "(2,2)")
    det = detect_obstruction(G, ["K44"])
    assert det.found and det.name == "K44" and det.model.check(G)
    det = detect_obstruction(gamma("Z5", "2", "3"))
    assert det.name == "K5" and det.model.is_subgraph_embedding()
    det = detect_obstruction(gamma("Z5", "1"), ["K5", "K33"])
    assert det.status is DetectionStatus.ABSENT


def test_detect_budget():
    host = Graph(9, [e for e in complete_graph(9).edges if e != (0, 1)])
    det = detect_obstruction(host, ["K44"], budget=3)
    assert det.status is DetectionStatus.BUDGET_EXCEEDED


def test_identify():
    name, model = identify(gamma("Z7", "1"))
    assert name == "A2" and model.check(gamma("Z7", "1"))
    assert identify(complete_graph(4)) is None
