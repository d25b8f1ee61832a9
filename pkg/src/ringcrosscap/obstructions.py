"""Named graphs used as evidence for planarity and projectivity verdicts.

K5 and K3,3 block planarity.  K4,4, K3,6, A2, B3 and E18 do not embed in
the projective plane, so any graph containing a subdivision of one of them
has crosscap number at least 2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .graphs import Graph, build_gamma, complete_bipartite, complete_graph, isomorphic
from .rings import compile_ring, validate_S
from .subdivision import BudgetExceeded, SubdivisionModel, find_subdivision

__all__ = [
    "NamedGraph",
    "UnknownName",
    "CATALOG_ORDER",
    "NONPLANAR",
    "NONPROJECTIVE",
    "obstruction",
    "catalog",
    "DetectionStatus",
    "Detection",
    "detect_obstruction",
    "B3_LABELS",
    "B3_EDGES",
    "a2_ring_graph",
    "identify",
    "e18_ring_graph",
]

CATALOG_ORDER = ("K5", "K33", "K44", "K36", "A2", "B3", "E18")
NONPLANAR = ("K5", "K33")
NONPROJECTIVE = ("K44", "K36", "A2", "B3", "E18")


class UnknownName(KeyError):
    pass


@dataclass(frozen=True)
class NamedGraph:
    name: str
    graph: Graph
    provenance: str


# B3 as drawn: vertex labels in Z3 x Z3 and the drawn segments.
B3_LABELS = ((1, 2), (2, 0), (0, 2), (1, 0), (2, 1), (0, 1), (1, 1), (2, 2))
B3_EDGES = (
    # curved arcs
    (2, 4), (2, 6), (1, 5), (3, 5),
    # rectangle, split at the two midpoints
    (3, 2), (2, 1), (1, 4), (4, 5), (5, 6), (6, 3),
    # straight segments through the two interior vertices
    (6, 0), (3, 0), (0, 2), (0, 5), (5, 7), (7, 2), (7, 1), (7, 4),
)


def _a2() -> Graph:
    # K_{1,2,2,2}: the hub 0 sees everything, {1,6}, {2,5}, {3,4} are the non-edges
    missing = {(1, 6), (2, 5), (3, 4)}
    return Graph(7, [(u, v) for u in range(7) for v in range(u + 1, 7) if (u, v) not in missing])


def _e18() -> Graph:
    # K4,4 minus one edge
    return Graph(8, [e for e in complete_bipartite(4, 4).edges if e != (0, 4)])


def a2_ring_graph() -> Graph:
    """Gamma(Z7, {1}), a copy of A2."""
    R = compile_ring("Z7")
    return build_gamma(R, validate_S(R, None, [1]))


def e18_ring_graph() -> Graph:
    """Gamma(Z2 x GF(4), {1} x S') with S' the two non-identity units."""
    R = compile_ring("Z2 x GF(4)")
    units4 = [u for u in range(R.order) if R.decode(u)[0] == 1 and R.decode(u)[1] not in (0, 1)]
    return build_gamma(R, validate_S(R, None, units4))


def _b3() -> Graph:
    R = compile_ring("Z3 x Z3")
    labels = [R.format_element(R.encode(t)) for t in B3_LABELS]
    return Graph(8, B3_EDGES, labels=labels)


def _b3_host() -> Graph:
    R = compile_ring("Z3 x Z3")
    S = [R.encode((1, 1)), R.encode((1, 2))]
    return build_gamma(R, validate_S(R, None, S))


def _validate(name: str, G: Graph) -> None:
    if name == "A2":
        assert (G.p, G.q) == (7, 18), "A2 must have 7 vertices and 18 edges"
    elif name == "E18":
        assert (G.p, G.q) == (8, 15), "E18 must have 8 vertices and 15 edges"
    elif name == "B3":
        host = _b3_host()
        R = compile_ring("Z3 x Z3")
        codes = [R.encode(t) for t in B3_LABELS]
        for u, v in G.edges:
            assert host.has_edge(codes[u], codes[v]), f"B3 edge {B3_LABELS[u]}-{B3_LABELS[v]} not in host"


@lru_cache(maxsize=None)
def _entry(name: str) -> NamedGraph:
    if name == "K5":
        G, prov = complete_graph(5), "complete graph on 5 vertices"
    elif name == "K33":
        G, prov = complete_bipartite(3, 3), "complete bipartite graph K3,3"
    elif name == "K44":
        G, prov = complete_bipartite(4, 4), "complete bipartite graph K4,4"
    elif name == "K36":
        G, prov = complete_bipartite(3, 6), "complete bipartite graph K3,6"
    elif name == "A2":
        G, prov = _a2(), "complete multipartite graph K1,2,2,2"
    elif name == "B3":
        G, prov = _b3(), "transcribed drawing of a subgraph of Gamma(Z3 x Z3, {(1,1),(1,2)})"
    elif name == "E18":
        G, prov = _e18(), "K4,4 minus an edge"
    else:
        raise UnknownName(name)
    _validate(name, G)
    return NamedGraph(name, G, prov)


def obstruction(name: str) -> NamedGraph:
    key = name.upper().replace(",", "").replace("_", "")
    if key not in CATALOG_ORDER:
        raise UnknownName(name)
    return _entry(key)


def catalog() -> list[NamedGraph]:
    return [obstruction(n) for n in CATALOG_ORDER]


def identify(G: Graph, names=CATALOG_ORDER) -> tuple[str, SubdivisionModel] | None:
    """Catalog graph isomorphic to ``G`` itself, with the isomorphism as a model."""
    for name in names:
        H = obstruction(name).graph
        if (H.p, H.q) != (G.p, G.q) or sorted(H.degrees()) != sorted(G.degrees()):
            continue
        iso = isomorphic(H, G)
        if iso is not None:
            branch = tuple(iso[h] for h in range(H.p))
            return name, SubdivisionModel(H, branch, {(a, b): (branch[a], branch[b]) for a, b in H.edges})
    return None


class DetectionStatus(str, enum.Enum):
    FOUND = "found"
    ABSENT = "absent"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class Detection:
    status: DetectionStatus
    name: str | None = None
    model: SubdivisionModel | None = None
    nodes_note: str = ""

    @property
    def found(self) -> bool:
        return self.status is DetectionStatus.FOUND


def detect_obstruction(G: Graph, names=CATALOG_ORDER, budget: int = 10**7) -> Detection:
    """First catalog graph (in catalog order) with a homeomorph in ``G``.

    ``ABSENT`` is returned only when every requested name was excluded
    exhaustively; if any search ran out of budget and nothing was found the
    status is ``BUDGET_EXCEEDED``.
    """
    wanted = {obstruction(n).name for n in names}
    exhausted = []
    for name in CATALOG_ORDER:
        if name not in wanted:
            continue
        try:
            model = find_subdivision(G, obstruction(name).graph, budget)
        except BudgetExceeded:
            exhausted.append(name)
            continue
        if model is not None:
            return Detection(DetectionStatus.FOUND, name, model)
    if exhausted:
        return Detection(DetectionStatus.BUDGET_EXCEEDED, nodes_note="undecided: " + ", ".join(exhausted))
    return Detection(DetectionStatus.ABSENT)
