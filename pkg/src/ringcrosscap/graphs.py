"""Finite graphs built from rings, plus the structural queries they need.

Vertices are ``0 .. p-1``.  Graphs built from a ring use the ring's element
codes as vertex indices and keep the formatted elements as labels, so the
vertex of ``(a, b)`` in ``R1 x R2`` is ``a * |R2| + b``.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .rings import FiniteRing, MultiplicativeData, comaximal, validate_S

__all__ = [
    "Graph",
    "StructureReport",
    "build_gamma",
    "build_gamma_bar",
    "build_unit_graph",
    "build_unitary_cayley",
    "build_comaximal",
    "tensor",
    "disjoint_union",
    "disjoint_copies",
    "complete_graph",
    "complete_bipartite",
    "structure_report",
    "isomorphic",
    "parse_edge_list",
]


class Graph:
    """Finite undirected graph without multiple edges.

    Loops are only allowed when ``loops=True`` (the barred graphs, which
    only serve as tensor-product factors).
    """

    def __init__(self, p: int, edges: Iterable[tuple[int, int]] = (), loops: bool = False,
                 labels: Sequence[str] | None = None):
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < p and 0 <= v < p):
                raise ValueError(f"edge ({u}, {v}) out of range for p={p}")
            if u == v and not loops:
                raise ValueError(f"loop at {u} in a graph without loops")
            es.add((min(u, v), max(u, v)))
        self.p = p
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(es))
        self.loops = loops
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != p:
            raise ValueError("one label per vertex required")

    @property
    def q(self) -> int:
        return len(self.edges)

    def __repr__(self):
        return f"Graph(p={self.p}, q={self.q})"

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.p == other.p and self.edges == other.edges
                and self.loops == other.loops)

    def __hash__(self):
        return hash((self.p, self.edges, self.loops))

    @cached_property
    def adj(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in range(self.p)]
        for u, v in self.edges:
            nb[u].append(v)
            if u != v:
                nb[v].append(u)
        return [sorted(x) for x in nb]

    @cached_property
    def adj_mask(self) -> list[int]:
        return [sum(1 << v for v in nb if v != u) for u, nb in enumerate(self.adj)]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        # a loop counts twice
        return len(self.adj[v]) + (1 if (v, v) in self._edge_set else 0)

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.p)]

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def without_loops(self) -> "Graph":
        return Graph(self.p, [(u, v) for u, v in self.edges if u != v], labels=self.labels)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def components(self) -> list[list[int]]:
        seen = [False] * self.p
        comps = []
        for s in range(self.p):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.p <= 1 or len(self.components()) == 1

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, renumbered in the order of ``vertices``."""
        index = {v: i for i, v in enumerate(vertices)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        labels = [self.label(v) for v in vertices] if self.labels is not None else None
        return Graph(len(vertices), es, loops=self.loops, labels=labels)

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.p, [(perm[u], perm[v]) for u, v in self.edges], loops=self.loops)

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.p, list(self.edges) + list(extra), loops=self.loops, labels=self.labels)

    def is_subgraph_of(self, other: "Graph") -> bool:
        """Edge containment on the same vertex set."""
        return self.p == other.p and self._edge_set <= other._edge_set

    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def two_coloring(self) -> list[int] | None:
        color = [-1] * self.p
        for s in range(self.p):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        return color

    def is_triangle_free(self) -> bool:
        m = self.adj_mask
        return not any(m[u] & m[v] for u, v in self.edges if u != v)

    def girth(self) -> int | None:
        """Length of a shortest cycle, ``None`` for forests."""
        best = None
        for s in range(self.p):
            dist = {s: 0}
            parent = {s: -1}
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if w == u:
                        return 1
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        c = dist[u] + dist[w] + 1
                        if best is None or c < best:
                            best = c
        return best

    def fingerprint(self) -> str:
        text = ";".join(f"{u},{v}" for u, v in self.edges)
        return f"{self.p}:{self.q}:" + hashlib.sha256(text.encode()).hexdigest()[:16]

    # text formats ---------------------------------------------------------

    def to_edge_list(self) -> str:
        lines = [f"graph {self.p} {self.q}"]
        lines += [f"e {u} {v}" for u, v in self.edges]
        if self.labels is not None:
            lines += [f"l {v} {lab}" for v, lab in enumerate(self.labels)]
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.p):
            lines.append(f'  {v} [label="{self.label(v)}"];')
        lines += [f"  {u} -- {v};" for u, v in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("graph "):
        raise ValueError("edge list must start with 'graph <p> <q>'")
    _, p, q = lines[0].split()
    p, q = int(p), int(q)
    edges, labels = [], {}
    for ln in lines[1:]:
        tag, rest = ln.split(None, 1)
        if tag == "e":
            u, v = rest.split()
            edges.append((int(u), int(v)))
        elif tag == "l":
            v, lab = rest.split(None, 1)
            labels[int(v)] = lab
        else:
            raise ValueError(f"unknown line {ln!r}")
    if len(edges) != q:
        raise ValueError(f"header promises {q} edges, found {len(edges)}")
    loops = any(u == v for u, v in edges)
    lab = [labels.get(v, str(v)) for v in range(p)] if labels else None
    return Graph(p, edges, loops=loops, labels=lab)


# ---------------------------------------------------------------------------
# ring graphs
# ---------------------------------------------------------------------------


def _ring_labels(R: FiniteRing) -> list[str]:
    return [R.format_element(x) for x in range(R.order)]


def _gamma_matrix(R: FiniteRing, data: MultiplicativeData) -> np.ndarray:
    inG = np.zeros(R.order, dtype=bool)
    inG[list(data.G)] = True
    adj = np.zeros((R.order, R.order), dtype=bool)
    for s in data.S:
        # x ~ y iff x + s*y in G
        adj |= inG[R.add[:, R.mul[s, :]]]
    return adj


def build_gamma(R: FiniteRing, data: MultiplicativeData | Iterable[int], include_loops: bool = False) -> Graph:
    """Generalized unit/unitary Cayley graph; ``data`` may be a bare S (G = U(R))."""
    if not isinstance(data, MultiplicativeData):
        data = validate_S(R, None, data)
    adj = _gamma_matrix(R, data)
    us, vs = np.nonzero(np.triu(adj, 0 if include_loops else 1))
    return Graph(R.order, zip(us.tolist(), vs.tolist()), loops=include_loops, labels=_ring_labels(R))


def build_gamma_bar(R: FiniteRing, data: MultiplicativeData | Iterable[int]) -> Graph:
    return build_gamma(R, data, include_loops=True)


def build_unit_graph(R: FiniteRing) -> Graph:
    return build_gamma(R, [R.one])


def build_unitary_cayley(R: FiniteRing) -> Graph:
    return build_gamma(R, [R.minus(R.one)])


def build_comaximal(R: FiniteRing) -> Graph:
    es = [(x, y) for x in range(R.order) for y in range(x + 1, R.order) if comaximal(R, x, y)]
    return Graph(R.order, es, labels=_ring_labels(R))


# ---------------------------------------------------------------------------
# graph operations
# ---------------------------------------------------------------------------


def tensor(G1: Graph, G2: Graph) -> Graph:
    """Tensor product; factors may carry loops, the result never does.

    Vertex ``(u1, u2)`` is numbered ``u1 * G2.p + u2``.
    """
    n2 = G2.p
    arcs2 = [(a, b) for a, b in G2.edges] + [(b, a) for a, b in G2.edges if a != b]
    es = set()
    for u1, v1 in G1.edges:
        for u2, v2 in arcs2:
            a, b = u1 * n2 + u2, v1 * n2 + v2
            if a != b:
                es.add((min(a, b), max(a, b)))
    labels = None
    if G1.labels is not None or G2.labels is not None:
        labels = [f"({G1.label(a)},{G2.label(b)})" for a in range(G1.p) for b in range(n2)]
    return Graph(G1.p * n2, es, labels=labels)


def disjoint_union(*graphs: Graph) -> Graph:
    es, off = [], 0
    for g in graphs:
        es += [(u + off, v + off) for u, v in g.edges]
        off += g.p
    return Graph(off, es, loops=any(g.loops for g in graphs))


def disjoint_copies(G: Graph, k: int) -> Graph:
    if k < 1:
        raise ValueError("need at least one copy")
    return disjoint_union(*([G] * k))


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("n >= 1 required")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} with parts ``0..m-1`` and ``m..m+n-1``."""
    if m < 1 or n < 1:
        raise ValueError("m, n >= 1 required")
    return Graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])


@dataclass(frozen=True)
class StructureReport:
    p: int
    q: int
    degrees: tuple[int, ...]
    min_degree: int
    components: int
    bipartite: bool
    triangle_free: bool
    degree_sequence: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "degree_sequence", tuple(sorted(self.degrees, reverse=True)))


def structure_report(G: Graph) -> StructureReport:
    degs = tuple(G.degrees())
    return StructureReport(
        p=G.p, q=G.q, degrees=degs, min_degree=min(degs) if degs else 0,
        components=len(G.components()), bipartite=G.is_bipartite(),
        triangle_free=G.is_triangle_free(),
    )


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------


def _refine(graphs: Sequence[Graph]) -> list[list[int]]:
    """Joint colour refinement, so equal colours mean the same thing in every graph."""
    colors = [[g.degree(v) for v in range(g.p)] for g in graphs]
    ncolors = -1
    while True:
        sigs = [[(c[v], tuple(sorted(c[w] for w in g.adj[v]))) for v in range(g.p)]
                for g, c in zip(graphs, colors)]
        table = {s: i for i, s in enumerate(sorted({s for sg in sigs for s in sg}))}
        colors = [[table[s] for s in sg] for sg in sigs]
        if len(table) == ncolors:
            return colors
        ncolors = len(table)


def isomorphic(G: Graph, H: Graph) -> dict[int, int] | None:
    """A vertex bijection G -> H preserving adjacency both ways, or None.

    Colour refinement on degrees narrows the candidate sets; backtracking
    with bitmask forward checking does the rest.
    """
    if G.p != H.p or G.q != H.q or G.has_loops() or H.has_loops():
        if G.p == H.p and G.q == H.q and (G.has_loops() or H.has_loops()):
            raise ValueError("isomorphism is defined for simple graphs")
        return None
    n = G.p
    if n == 0:
        return {}
    cg, ch = _refine([G, H])
    if sorted(cg) != sorted(ch):
        return None
    by_color: dict[int, int] = {}
    for v, c in enumerate(ch):
        by_color[c] = by_color.get(c, 0) | (1 << v)
    dom = [by_color[c] for c in cg]
    gadj, hadj = G.adj_mask, H.adj_mask
    full = (1 << n) - 1
    mapping = [-1] * n

    def solve(dom: list[int], left: int) -> bool:
        if not left:
            return True
        best, bestcount = -1, n + 1
        rest = left
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            c = bin(dom[v]).count("1")
            if c < bestcount:
                best, bestcount = v, c
                if c <= 1:
                    break
        if bestcount == 0:
            return False
        g = best
        cands = dom[g]
        left2 = left & ~(1 << g)
        while cands:
            h = (cands & -cands).bit_length() - 1
            cands &= cands - 1
            nd = dom[:]
            ok = True
            rest = left2
            hn, hnot = hadj[h], full & ~hadj[h] & ~(1 << h)
            gn = gadj[g]
            while rest:
                u = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                nd[u] &= hn if (gn >> u) & 1 else hnot
                if not nd[u]:
                    ok = False
                    break
            if ok:
                mapping[g] = h
                if solve(nd, left2):
                    return True
        mapping[g] = -1
        return False

    if not solve(dom, full):
        return None
    return dict(enumerate(mapping))
