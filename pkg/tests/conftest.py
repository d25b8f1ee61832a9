import networkx as nx
import pytest

from ringcrosscap import Graph


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.p))
    H.add_edges_from(G.edges)
    return H


@pytest.fixture
def nxgraph():
    return to_nx
