import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ringcrosscap import compile_ring
from ringcrosscap.graphs import Graph, build_comaximal, build_gamma, complete_bipartite, complete_graph
from ringcrosscap.obstructions import obstruction
from ringcrosscap.rings import validate_S
from ringcrosscap.subdivision import BudgetExceeded, blocks, find_subdivision

K5, K33 = complete_graph(5), complete_bipartite(3, 3)


def kuratowski(G):
    for H in (K5, K33):
        model = find_subdivision(G, H)
        if model is not None:
            assert model.check(G)
            return model
    return None


@settings(max_examples=200, deadline=None)
@given(st.integers(5, 10), st.floats(0.3, 0.8), st.integers(0, 10**6))
def test_kuratowski_matches_networkx_planarity(p, density, seed):
    g = nx.gnp_random_graph(p, density, seed=seed)
    G = Graph(p, g.edges)
    planar, _ = nx.check_planarity(g)
    assert (kuratowski(G) is None) == planar


def test_subdivided_k33_found():
    # every edge of K3,3 replaced by a path of length 2
    edges, nxt = [], 6
    for a in range(3):
        for b in range(3, 6):
            edges += [(a, nxt), (nxt, b)]
            nxt += 1
    G = Graph(nxt, edges)
    model = find_subdivision(G, K33)
    assert model is not None and model.check(G) and not model.is_subgraph_embedding()
    assert find_subdivision(G, K5) is None


def test_comaximal_z2_4_contains_k44():
    G = build_comaximal(compile_ring("Z2^4"))
    model = find_subdivision(G, complete_bipartite(4, 4))
    assert model is not None and model.check(G)


def test_too_small_host():
    assert find_subdivision(complete_graph(4), K5) is None


def test_b3_subgraph_of_z3xz3():
    R = compile_ring("Z3 x Z3")
    S = {R.parse_element("(1,1)"), R.parse_element("(1,2)")}
    G = build_gamma(R, validate_S(R, None, S))
    model = find_subdivision(G, obstruction("B3").graph)
    assert model is not None and model.check(G) and model.is_subgraph_embedding()


def test_budget_raises():
    G = Graph(9, [e for e in complete_graph(9).edges if e != (0, 1)])
    with pytest.raises(BudgetExceeded):
        find_subdivision(G, complete_bipartite(4, 4), budget=5)


def test_model_check_rejects_bad_paths():
    model = find_subdivision(K5, K5)
    assert model.check(K5)
    assert not model.check(Graph(5, [e for e in K5.edges if e != (0, 1)]))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.floats(0.1, 0.6), st.integers(0, 10**6))
def test_blocks_match_networkx(p, density, seed):
    g = nx.gnp_random_graph(p, density, seed=seed)
    ours = sorted(sorted(b) for b in blocks(Graph(p, g.edges)) if len(b) >= 2)
    ref = sorted(sorted(c) for c in nx.biconnected_components(g))
    assert ours == ref
