import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import to_nx
from ringcrosscap import compile_ring
from ringcrosscap.graphs import (
    Graph,
    build_comaximal,
    build_gamma,
    build_gamma_bar,
    build_unit_graph,
    build_unitary_cayley,
    complete_bipartite,
    complete_graph,
    disjoint_copies,
    isomorphic,
    parse_edge_list,
    structure_report,
    tensor,
)
from ringcrosscap.obstructions import obstruction
from ringcrosscap.properties import ring_pool
from ringcrosscap.rings import comaximal, validate_S


def S_of(R, *texts):
    return {R.parse_element(t) for t in texts}


def gamma(text, *S):
    R = compile_ring(text)
    return build_gamma(R, validate_S(R, None, S_of(R, *S)))


def gamma_oracle(R, G, S):
    """x ~ y iff x + s y lies in G for some s, closed symmetrically."""
    edges = set()
    for x, y in itertools.combinations(range(R.order), 2):
        for s in S:
            if R.plus(x, R.times(s, y)) in G or R.plus(y, R.times(s, x)) in G:
                edges.add((x, y))
    return edges


# builders --------------------------------------------------------------------

def test_gamma_z5_complete():
    assert gamma("Z5", "2", "3") == complete_graph(5)


def test_gamma_z7():
    G = gamma("Z7", "1")
    assert (G.p, G.q) == (7, 18)
    assert structure_report(G).degree_sequence == (6, 5, 5, 5, 5, 5, 5)
    assert G.degree(0) == 6


def test_gamma_z2xz5():
    G = gamma("Z2 x Z5", "(1,1)")
    assert G.q == 20 and G.is_bipartite()


@pytest.mark.parametrize("text", ring_pool(12))
def test_gamma_matches_relation(text):
    R = compile_ring(text)
    U = R.units
    for S in ({R.one}, {int(R.neg[R.one])}, set(U)):
        S = S | {R.inverse[s] for s in S}
        G = build_gamma(R, validate_S(R, None, S))
        assert set(G.edges) == gamma_oracle(R, U, S)


def test_unit_graph_and_cayley():
    G = build_unitary_cayley(compile_ring("Z3 x Z3"))
    assert G.q == 18 and set(G.degrees()) == {4}
    assert build_unit_graph(compile_ring("Z2")) == Graph(2, [(0, 1)])
    assert build_unit_graph(compile_ring("Z4")) == Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def test_comaximal_examples():
    assert build_comaximal(compile_ring("Z5")) == complete_graph(5)
    G = build_comaximal(compile_ring("Z2 x Z2 x Z3"))
    assert (G.p, G.q) == (12, 35)
    R = compile_ring("Z2 x Z4")
    G = build_comaximal(R)
    assert G.p == 8 and G.degree(R.parse_element("(1,1)")) == 7


@pytest.mark.parametrize("text", ["Z6", "Z2 x Z4", "Z2 x Z2 x Z3", "Z12", "Z3 x Z3"])
def test_comaximal_graph_matches_predicate(text):
    R = compile_ring(text)
    want = {(x, y) for x, y in itertools.combinations(range(R.order), 2) if comaximal(R, x, y)}
    assert set(build_comaximal(R).edges) == want


def test_gamma_bar_has_loops():
    R = compile_ring("Z5")
    G = build_gamma_bar(R, {1})
    assert G.has_loops() and not build_gamma(R, {1}).has_loops()


# tensor / copies ------------------------------------------------------------

def test_tensor_examples():
    R2, R5 = compile_ring("Z2"), compile_ring("Z5")
    T = tensor(build_gamma_bar(R2, {1}), build_gamma_bar(R5, {1}))
    assert T.without_loops() == gamma("Z2 x Z5", "(1,1)")
    K2 = complete_graph(2)
    M = tensor(K2, K2)
    assert (M.p, M.q) == (4, 2) and len(M.components()) == 2
    R3 = compile_ring("Z3")
    G = tensor(build_gamma_bar(R3, {1}), complete_graph(4)).without_loops()
    assert G.p == 12 and set(G.degrees()) == {6}


def test_tensor_against_networkx():
    rng = random.Random(5)
    for _ in range(30):
        a = nx.gnp_random_graph(rng.randint(2, 6), 0.5, seed=rng.randint(0, 10**6))
        b = nx.gnp_random_graph(rng.randint(2, 6), 0.5, seed=rng.randint(0, 10**6))
        A, B = Graph(a.number_of_nodes(), a.edges), Graph(b.number_of_nodes(), b.edges)
        T = tensor(A, B)
        ref = nx.tensor_product(a, b)
        want = {tuple(sorted((u[0] * B.p + u[1], v[0] * B.p + v[1]))) for u, v in ref.edges}
        assert set(T.edges) == want


def test_disjoint_copies():
    G = disjoint_copies(complete_graph(5), 2)
    assert (G.p, G.q, len(G.components())) == (10, 20, 2)
    assert isomorphic(disjoint_copies(complete_graph(2), 3), Graph(6, [(0, 1), (2, 3), (4, 5)]))
    big = gamma("Z2 x Z2 x Z3", "(1,1,1)")
    assert isomorphic(big, disjoint_copies(gamma("Z2 x Z3", "(1,1)"), 2))


# structure ---------------------------------------------------------------

def test_structure_reports():
    r = structure_report(gamma("Z2 x Z7", "(1,1)"))
    assert (r.p, r.q, r.bipartite) == (14, 42, True)
    r = structure_report(complete_graph(5))
    assert (r.p, r.q, r.bipartite) == (5, 10, False)
    r = structure_report(gamma("Z2 x Z9", "(1,1)"))
    assert (r.p, r.q, r.triangle_free) == (18, 54, True)


def test_complete_families():
    assert complete_graph(5).q == 10
    assert complete_bipartite(3, 3).q == 9
    R = compile_ring("Z9")
    m = [x for x in range(9) if x % 3 == 0]
    rest = [x for x in range(9) if x % 3]
    for S in ({1}, {8}, {1, 8}, {2, 5}, set(R.units)):
        S = S | {R.inverse[s] for s in S}
        G = build_gamma(R, validate_S(R, None, S))
        assert all(G.has_edge(a, b) for a in m for b in rest)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 9), st.floats(0, 1), st.integers(0, 10**6))
def test_structure_matches_networkx(p, density, seed):
    g = nx.gnp_random_graph(p, density, seed=seed)
    G = Graph(p, g.edges)
    r = structure_report(G)
    assert r.bipartite == nx.is_bipartite(g)
    assert r.components == nx.number_connected_components(g)
    assert r.triangle_free == (sum(nx.triangles(g).values()) == 0)
    assert G.girth() == (nx.girth(g) if nx.girth(g) != float("inf") else None)


# isomorphism -------------------------------------------------------------

def test_isomorphism_examples():
    assert isomorphic(gamma("Z3 x Z3", "(1,1)", "(2,1)"), gamma("Z3 x Z3", "(1,1)", "(1,2)"))
    assert isomorphic(complete_graph(5), complete_bipartite(3, 3)) is None
    assert isomorphic(gamma("Z7", "1"), obstruction("A2").graph)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.floats(0.2, 0.8), st.integers(0, 10**6), st.booleans())
def test_isomorphism_matches_networkx(p, density, seed, perturb):
    rng = random.Random(seed)
    g = nx.gnp_random_graph(p, density, seed=seed)
    perm = list(range(p))
    rng.shuffle(perm)
    h = nx.relabel_nodes(g, dict(enumerate(perm)))
    if perturb and p >= 2:
        u, v = rng.sample(range(p), 2)
        if h.has_edge(u, v):
            h.remove_edge(u, v)
        else:
            h.add_edge(u, v)
    G, H = Graph(p, g.edges), Graph(p, h.edges)
    f = isomorphic(G, H)
    assert (f is not None) == nx.is_isomorphic(g, h)
    if f is not None:
        assert sorted(tuple(sorted((f[u], f[v]))) for u, v in G.edges) == list(H.edges)


# text formats ------------------------------------------------------------

def test_edge_list_roundtrip():
    G = gamma("Z2 x Z4", "(1,1)")
    H = parse_edge_list(G.to_edge_list())
    assert H == G and H.labels == G.labels
    with pytest.raises(ValueError):
        parse_edge_list("graph 3 2\ne 0 1\n")
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])


def test_dot_output():
    dot = complete_graph(3).to_dot()
    assert dot.startswith("graph G {") and dot.count("--") == 3
