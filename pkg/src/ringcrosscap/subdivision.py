"""Search for subdivisions (homeomorphs) of a pattern graph inside a host graph."""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .graphs import Graph

__all__ = ["SubdivisionModel", "BudgetExceeded", "find_subdivision", "blocks"]


class BudgetExceeded(RuntimeError):
    """The node budget ran out before the search could decide."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class SubdivisionModel:
    """Branch vertices plus one path per pattern edge.

    ``branch[h]`` is the image of pattern vertex ``h``; ``paths[(a, b)]``
    (with ``a < b``) runs from ``branch[a]`` to ``branch[b]``.
    """

    pattern: Graph
    branch: tuple[int, ...]
    paths: dict

    def check(self, G: Graph) -> bool:
        H = self.pattern
        if len(self.branch) != H.p or len(set(self.branch)) != H.p:
            return False
        if set(self.paths) != set(H.edges):
            return False
        seen = set(self.branch)
        for (a, b), path in self.paths.items():
            if path[0] != self.branch[a] or path[-1] != self.branch[b]:
                return False
            if any(not G.has_edge(x, y) for x, y in zip(path, path[1:])):
                return False
            inner = path[1:-1]
            if seen.intersection(inner) or len(set(inner)) != len(inner):
                return False
            seen.update(inner)
        return True

    def is_subgraph_embedding(self) -> bool:
        return all(len(path) == 2 for path in self.paths.values())

    def relabeled(self, mapping) -> "SubdivisionModel":
        return SubdivisionModel(
            self.pattern,
            tuple(mapping[v] for v in self.branch),
            {e: tuple(mapping[v] for v in path) for e, path in self.paths.items()},
        )

    def describe(self, G: Graph | None = None) -> str:
        name = (lambda v: G.label(v)) if G is not None else str
        lines = ["branch " + " ".join(name(v) for v in self.branch)]
        for e in sorted(self.paths):
            lines.append(f"path {e[0]} {e[1]}: " + " ".join(name(v) for v in self.paths[e]))
        return "\n".join(lines)


def blocks(G: Graph) -> list[list[int]]:
    """Vertex sets of the biconnected components (bridges count as blocks)."""
    index = [-1] * G.p
    low = [0] * G.p
    counter = 0
    stack: list[tuple[int, int]] = []
    out: list[list[int]] = []
    adj = G.adj
    for root in range(G.p):
        if index[root] >= 0 or not adj[root]:
            continue
        index[root] = low[root] = counter
        counter += 1
        work = [(root, -1, iter(adj[root]))]
        while work:
            v, parent, it = work[-1]
            advanced = False
            for w in it:
                if index[w] < 0:
                    stack.append((v, w))
                    index[w] = low[w] = counter
                    counter += 1
                    work.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent and index[w] < index[v]:
                    stack.append((v, w))
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if low[v] >= index[parent]:
                    comp = set()
                    while True:
                        e = stack.pop()
                        comp.update(e)
                        if e == (parent, v):
                            break
                    out.append(sorted(comp))
    return out


def _is_biconnected(H: Graph) -> bool:
    return H.p >= 3 and H.is_connected() and len(blocks(H)) == 1


def _twin_classes(H: Graph) -> list[list[int]]:
    """Classes of pattern vertices with equal open or equal closed neighbourhoods."""
    groups: dict[tuple, list[int]] = {}
    for h in range(H.p):
        groups.setdefault(("o", H.adj_mask[h]), []).append(h)
        groups.setdefault(("c", H.adj_mask[h] | (1 << h)), []).append(h)
    return [g for g in groups.values() if len(g) > 1]


class _Search:
    def __init__(self, G: Graph, H: Graph, budget: int, max_inner: int | None = None):
        self.G, self.H = G, H
        self.max_inner = G.p if max_inner is None else max_inner
        self.budget = budget
        self.nodes = 0
        self.gadj = G.adj_mask
        self.gdeg = G.degrees()
        self.hdeg = H.degrees()
        self.gneighbors = G.adj
        order = [max(range(H.p), key=lambda h: (self.hdeg[h], -h))]
        placed = {order[0]}
        while len(order) < H.p:
            h = max((x for x in range(H.p) if x not in placed),
                    key=lambda x: (sum(1 for y in H.adj[x] if y in placed), self.hdeg[x], -x))
            order.append(h)
            placed.add(h)
        self.order = order
        pos = {h: i for i, h in enumerate(order)}
        self.back_edges = [
            [y for y in sorted(H.adj[h], key=lambda y: pos[y]) if pos[y] < pos[h]] for h in order
        ]
        # twins may be permuted freely, so their images increase in placement order
        self.twin_prev = [-1] * H.p
        for cls in _twin_classes(H):
            chain = sorted(cls, key=lambda h: pos[h])
            for a, b in zip(chain, chain[1:]):
                self.twin_prev[b] = a
        self.image = [-1] * H.p
        self.pending = list(self.hdeg)
        self.used = 0
        self.placed_mask = 0
        self.paths: dict[tuple[int, int], tuple[int, ...]] = {}

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.nodes)

    def _reach(self, src: int) -> int:
        """Free vertices reachable from ``src`` (plus their boundary)."""
        free = ~self.used
        seen = 1 << src
        frontier = seen
        adj = self.gadj
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= adj[b.bit_length() - 1]
                f ^= b
            nxt &= ~seen
            seen |= nxt
            frontier = nxt & free
        return seen

    def _exits_ok(self) -> bool:
        free = ~self.used
        for h in self.order:
            v = self.image[h]
            if v < 0:
                break
            need = self.pending[h]
            if need and bin(self.gadj[v] & (free | self.placed_mask)).count("1") < need:
                return False
        return True

    def run(self) -> bool:
        return self._place(0)

    def _place(self, i: int) -> bool:
        if i == len(self.order):
            return True
        h = self.order[i]
        need = self.hdeg[h]
        allowed = (1 << self.G.p) - 1
        allowed &= ~self.used
        for y in self.back_edges[i]:
            allowed &= self._reach(self.image[y])
        tp = self.twin_prev[h]
        floor = self.image[tp] if tp >= 0 else -1
        for v in range(floor + 1, self.G.p):
            if not (allowed >> v) & 1 or self.gdeg[v] < need:
                continue
            if bin(self.gadj[v] & ~self.used).count("1") + bin(self.gadj[v] & self.placed_mask).count("1") < need:
                continue
            self.tick()
            self.image[h] = v
            self.used |= 1 << v
            self.placed_mask |= 1 << v
            if self._route(i, 0):
                return True
            self.used &= ~(1 << v)
            self.placed_mask &= ~(1 << v)
            self.image[h] = -1
        return False

    def _route(self, i: int, j: int) -> bool:
        back = self.back_edges[i]
        if j == len(back):
            return self._exits_ok() and self._place(i + 1)
        h, y = self.order[i], back[j]
        src, dst = self.image[y], self.image[h]
        key = (min(h, y), max(h, y))
        self.pending[h] -= 1
        self.pending[y] -= 1
        try:
            path = [src]
            return self._extend(i, j, key, path, dst)
        finally:
            self.pending[h] += 1
            self.pending[y] += 1

    def _extend(self, i, j, key, path, dst) -> bool:
        cur = path[-1]
        self.tick()
        if (self.gadj[cur] >> dst) & 1:
            full = path + [dst]
            self.paths[key] = tuple(full if key[0] == self._pattern_of(full[0]) else full[::-1])
            if self._route(i, j + 1):
                return True
            del self.paths[key]
        if len(path) > self.max_inner:
            return False
        reach = self._reach(dst)
        cand = self.gadj[cur] & ~self.used & reach
        if not cand:
            return False
        # neighbours closest to the target first
        dist = self._distances(dst)
        options = []
        while cand:
            b = cand & -cand
            w = b.bit_length() - 1
            cand ^= b
            if w in dist:
                options.append((dist[w], w))
        options.sort()
        for _, w in options:
            self.used |= 1 << w
            path.append(w)
            ok = self._extend(i, j, key, path, dst)
            path.pop()
            self.used &= ~(1 << w)
            if ok:
                return True
        return False

    def _pattern_of(self, v: int) -> int:
        return self.image.index(v)

    def _distances(self, dst: int) -> dict[int, int]:
        dist = {dst: 0}
        frontier = [dst]
        free = ~self.used
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in self.gneighbors[u]:
                    if w not in dist and (free >> w) & 1:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        return dist

    def model(self) -> SubdivisionModel:
        return SubdivisionModel(self.H, tuple(self.image), dict(self.paths))


def find_subdivision(G: Graph, H: Graph, budget: int = 10**7) -> SubdivisionModel | None:
    """Return a subdivision of ``H`` inside ``G`` or ``None`` when none exists.

    ``None`` is only returned after an exhaustive search; running out of
    budget raises :class:`BudgetExceeded`.  When ``H`` is 2-connected the
    search runs block by block, since any subdivision of it lies inside a
    single block of ``G``.  Plain subgraph copies are looked for first, then
    paths with at most one inner vertex, then unrestricted paths.
    """
    if H.p == 0:
        return SubdivisionModel(H, (), {})
    if G.has_loops():
        G = G.without_loops()
    hdeg = sorted(H.degrees(), reverse=True)
    if H.p > G.p or H.q > G.q:
        return None
    if _is_biconnected(H):
        parts = [b for b in blocks(G) if len(b) >= H.p]
    else:
        parts = [list(range(G.p))]
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    spent = 0
    try:
        for part in parts:
            sub = G.induced(part) if len(part) < G.p else G
            gdeg = sorted(sub.degrees(), reverse=True)
            if any(g < h for g, h in zip(gdeg, hdeg)):
                continue
            found = False
            for max_inner in (0, 1, None):
                search = _Search(sub, H, budget - spent, max_inner)
                try:
                    found = search.run()
                finally:
                    spent += search.nodes
                if found:
                    break
            if found:
                model = search.model()
                if len(part) < G.p:
                    model = model.relabeled(part)
                assert model.check(G)
                return model
    finally:
        sys.setrecursionlimit(old)
    return None
