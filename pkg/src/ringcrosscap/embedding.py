"""Signed rotation systems, face tracing and exact embedding search.

A general (possibly nonorientable) cellular embedding of a graph is encoded
by a rotation at every vertex plus a sign on every edge.  Faces are traced
on *flags*: each dart ``d`` has a left and a right flag ``2d`` / ``2d+1``
and three involutions act on them

* ``tau2``: other side of the same dart end,
* ``tau1``: across the corner to the neighbouring dart in the rotation,
* ``tau0``: to the other end of the edge (side flips unless the edge is
  twisted).

Faces are the orbits of ``<tau0, tau1>``; an orbit of a face of length L
holds exactly 2L flags, so every face is counted once.

Edge ``i = (u, v)`` with ``u < v`` owns dart ``2i`` (u -> v) and ``2i+1``
(v -> u).
"""

from __future__ import annotations

import enum
import sys
from collections import deque
from dataclasses import dataclass, field

from .graphs import Graph

__all__ = [
    "SignedScheme",
    "FaceTrace",
    "MalformedScheme",
    "trace_faces",
    "EmbeddingCertificate",
    "CertificateCheck",
    "verify_certificate",
    "Orientability",
    "SearchStatus",
    "SearchResult",
    "search_embedding",
    "spanning_forest",
]


class MalformedScheme(ValueError):
    pass


def spanning_forest(G: Graph) -> set[tuple[int, int]]:
    """BFS spanning forest rooted at the least vertex of each component."""
    tree = set()
    seen = [False] * G.p
    for s in range(G.p):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    tree.add((min(u, w), max(u, w)))
                    queue.append(w)
    return tree


@dataclass(frozen=True)
class SignedScheme:
    """Rotation (neighbours of each vertex in cyclic order) and edge signs."""

    rotation: tuple[tuple[int, ...], ...]
    signature: dict = field(default_factory=dict, compare=False, hash=False)

    def sign(self, u: int, v: int) -> int:
        return self.signature.get((min(u, v), max(u, v)), 1)

    def is_tree_normalized(self, G: Graph) -> bool:
        return all(self.sign(u, v) == 1 for u, v in spanning_forest(G))

    def normalized(self, G: Graph) -> "SignedScheme":
        """Equivalent scheme with +1 on the BFS spanning forest.

        Switching a vertex (reversing its rotation and negating its edges)
        preserves the embedding; a vertex is switched when its BFS path
        from the root carries an odd number of twisted edges.
        """
        flip = [1] * G.p
        tree = spanning_forest(G)
        seen = [False] * G.p
        for s in range(G.p):
            if seen[s]:
                continue
            seen[s] = True
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in G.adj[u]:
                    if not seen[w] and (min(u, w), max(u, w)) in tree:
                        seen[w] = True
                        flip[w] = flip[u] * self.sign(u, w)
                        queue.append(w)
        rotation = tuple(rot if flip[v] == 1 else tuple(reversed(rot)) for v, rot in enumerate(self.rotation))
        signature = {(u, v): self.sign(u, v) * flip[u] * flip[v] for u, v in G.edges}
        return SignedScheme(rotation, signature)

    def __eq__(self, other):
        if not isinstance(other, SignedScheme) or self.rotation != other.rotation:
            return False
        keys = set(self.signature) | set(other.signature)
        return all(self.signature.get(k, 1) == other.signature.get(k, 1) for k in keys)


@dataclass(frozen=True)
class FaceTrace:
    faces: list[list[tuple[int, int]]]
    F: int
    euler_genus: int
    orientable: bool


def _darts(G: Graph):
    tail, head = [], []
    index = {}
    for i, (u, v) in enumerate(G.edges):
        tail += [u, v]
        head += [v, u]
        index[(u, v)] = 2 * i
        index[(v, u)] = 2 * i + 1
    return tail, head, index


def _orientable(G: Graph, sign) -> bool:
    side = [0] * G.p
    seen = [False] * G.p
    for s in range(G.p):
        if seen[s]:
            continue
        seen[s] = True
        side[s] = 1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adj[u]:
                want = side[u] * sign(u, w)
                if not seen[w]:
                    seen[w] = True
                    side[w] = want
                    queue.append(w)
                elif side[w] != want:
                    return False
    return True


def trace_faces(G: Graph, scheme: SignedScheme) -> FaceTrace:
    """Trace every face of the embedding given by ``scheme``.

    Disconnected graphs are traced component by component; the Euler genus
    is then ``2c - p + q - F``, each isolated vertex contributing one face.
    """
    if G.has_loops():
        raise MalformedScheme("embeddings are defined for simple graphs")
    if len(scheme.rotation) != G.p:
        raise MalformedScheme("one rotation per vertex required")
    tail, head, index = _darts(G)
    nd = len(tail)
    succ = [-1] * nd
    pred = [-1] * nd
    for v, rot in enumerate(scheme.rotation):
        if sorted(rot) != G.adj[v]:
            raise MalformedScheme(f"rotation at {v} is not a cyclic order of its neighbours")
        for i, w in enumerate(rot):
            a, b = index[(v, w)], index[(v, rot[(i + 1) % len(rot)])]
            succ[a], pred[b] = b, a
    sig = [scheme.sign(u, v) for u, v in G.edges]
    if any(s not in (1, -1) for s in sig):
        raise MalformedScheme("signatures must be +1 or -1")

    seen = bytearray(2 * nd)
    faces = []
    for f0 in range(2 * nd):
        if seen[f0]:
            continue
        face = []
        f = f0
        while True:
            seen[f] = 1
            d = f >> 1
            face.append((tail[d], head[d]))
            g = f ^ 3 if sig[f >> 2] == 1 else f ^ 2
            seen[g] = 1
            d = g >> 1
            f = 2 * succ[d] + 1 if g & 1 == 0 else 2 * pred[d]
            if f == f0:
                break
        faces.append(face)
    isolated = sum(1 for v in range(G.p) if not G.adj[v])
    F = len(faces) + isolated
    c = len(G.components())
    return FaceTrace(faces, F, 2 * c - G.p + G.q - F, _orientable(G, scheme.sign))


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class EmbeddingCertificate:
    graph: Graph
    scheme: SignedScheme
    F: int
    euler_genus: int
    orientable: bool

    @property
    def fingerprint(self) -> str:
        return self.graph.fingerprint()

    @classmethod
    def from_scheme(cls, G: Graph, scheme: SignedScheme) -> "EmbeddingCertificate":
        t = trace_faces(G, scheme)
        return cls(G, scheme, t.F, t.euler_genus, t.orientable)

    def to_text(self) -> str:
        G, sc = self.graph, self.scheme
        lines = [f"graph {G.p} {G.q}"]
        lines += [f"e {u} {v}" for u, v in G.edges]
        for v, rot in enumerate(sc.rotation):
            lines.append(f"rot {v}:" + "".join(f" {w}" for w in rot))
        tree = spanning_forest(G)
        for u, v in G.edges:
            s = sc.sign(u, v)
            if (u, v) not in tree or s == -1:
                lines.append(f"sig {u} {v} {'+' if s == 1 else '-'}")
        lines.append(f"faces {self.F}")
        lines.append(f"euler-genus {self.euler_genus}")
        lines.append(f"orientable {'true' if self.orientable else 'false'}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "EmbeddingCertificate":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        _, p, q = lines[0].split()
        p, q = int(p), int(q)
        edges, rot, sig = [], {}, {}
        F = k = None
        orientable = None
        for ln in lines[1:]:
            tag, _, rest = ln.partition(" ")
            if tag == "e":
                u, v = rest.split()
                edges.append((int(u), int(v)))
            elif tag == "rot":
                v, _, nbs = rest.partition(":")
                rot[int(v)] = tuple(int(w) for w in nbs.split())
            elif tag == "sig":
                u, v, s = rest.split()
                u, v = int(u), int(v)
                sig[(min(u, v), max(u, v))] = 1 if s == "+" else -1
            elif tag == "faces":
                F = int(rest)
            elif tag == "euler-genus":
                k = int(rest)
            elif tag == "orientable":
                orientable = rest == "true"
            else:
                raise ValueError(f"unknown certificate line {ln!r}")
        if len(edges) != q or None in (F, k, orientable):
            raise ValueError("incomplete certificate")
        G = Graph(p, edges)
        scheme = SignedScheme(tuple(rot.get(v, ()) for v in range(p)), sig)
        return cls(G, scheme, F, k, orientable)


def verify_certificate(G: Graph, cert: EmbeddingCertificate) -> CertificateCheck:
    """Re-trace the certificate against ``G``; a false result names the reason."""
    if G.p != cert.graph.p or G.edges != cert.graph.edges:
        return CertificateCheck(False, "fingerprint-mismatch")
    try:
        t = trace_faces(G, cert.scheme)
    except MalformedScheme as exc:
        return CertificateCheck(False, f"malformed-scheme: {exc}")
    if t.F != cert.F:
        return CertificateCheck(False, "face-count-mismatch")
    if t.euler_genus != cert.euler_genus or t.euler_genus < 0:
        return CertificateCheck(False, "euler-genus-mismatch")
    if t.orientable != cert.orientable:
        return CertificateCheck(False, "orientability-mismatch")
    return CertificateCheck(True)


# ---------------------------------------------------------------------------
# exact search
# ---------------------------------------------------------------------------


class Orientability(str, enum.Enum):
    ORIENTABLE = "orientable"
    NONORIENTABLE = "nonorientable"
    EITHER = "either"


class SearchStatus(str, enum.Enum):
    FOUND = "found"
    PROVED_NONE = "proved-none"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    certificate: EmbeddingCertificate | None = None
    nodes: int = 0
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


class _Found(Exception):
    pass


class _OutOfBudget(Exception):
    pass


class _Search:
    """Branch and bound over normalized signed rotation systems.

    Rotations are not enumerated up front: faces are traced one at a time
    and whenever the walk needs an undecided corner (or an unsigned edge)
    the search branches on it.  A face is abandoned as soon as it is too
    long for the remaining darts to still produce the required number of
    faces of length at least ``minlen``.
    """

    def __init__(self, G: Graph, target_faces: int, mode: Orientability, budget: int, minlen: int):
        self.G = G
        self.mode = mode
        self.budget = budget
        self.nodes = 0
        self.target = target_faces
        self.minlen = minlen
        tail, head, _ = _darts(G)
        self.tail, self.head = tail, head
        nd = len(tail)
        self.nflags = 2 * nd
        self.out = [[] for _ in range(G.p)]
        for d in range(nd):
            self.out[tail[d]].append(d)
        self.deg = [len(o) for o in self.out]
        self.succ = [-1] * nd
        self.pred = [-1] * nd
        self.other = list(range(nd))
        self.clen = [1] * nd
        self.visited = bytearray(self.nflags)
        self.closed = 0
        self.used = 0

        self.root = max(range(G.p), key=lambda v: (self.deg[v], -v))
        ro = self.out[self.root]
        self.root_darts = ro[:3] if len(ro) >= 3 else None

        tree = spanning_forest(G)
        self.sig = [0] * G.q
        self.cotree = 0
        for i, e in enumerate(G.edges):
            if e in tree or mode is Orientability.ORIENTABLE:
                self.sig[i] = 1
            else:
                self.cotree += 1
        self.unsigned = self.cotree
        self.negatives = 0
        if mode is Orientability.NONORIENTABLE:
            self.sig_order = (-1, 1)
        else:
            self.sig_order = (1, -1)

        # forced rotations at vertices of degree 1 and 2
        for v in range(G.p):
            o = self.out[v]
            if len(o) == 1:
                self._link(o[0], o[0])
            elif len(o) == 2:
                self._link(o[0], o[1])
                self._link(o[1], o[0])

    # rotation bookkeeping -------------------------------------------------

    def _link(self, a: int, b: int):
        """Set succ[a] = b; returns an undo token or None when illegal."""
        other, clen = self.other, self.clen
        s, t = other[a], other[b]
        if s == b:
            if clen[a] != self.deg[self.tail[a]]:
                return None
            self.succ[a] = b
            self.pred[b] = a
            if self.root_darts is not None and self.tail[a] == self.root and not self._root_ok():
                self.succ[a] = -1
                self.pred[b] = -1
                return None
            return (a, b, None)
        token = (a, b, (s, other[s], clen[s], t, other[t], clen[t]))
        n = clen[a] + clen[b]
        other[s], other[t] = t, s
        clen[s] = clen[t] = n
        self.succ[a] = b
        self.pred[b] = a
        return token

    def _unlink(self, token):
        a, b, rec = token
        self.succ[a] = -1
        self.pred[b] = -1
        if rec is not None:
            s, os_, cs, t, ot, ct = rec
            self.other[t], self.clen[t] = ot, ct
            self.other[s], self.clen[s] = os_, cs

    def _root_ok(self) -> bool:
        # mirror images are equivalent: a1 must come before a2 after a0
        a0, a1, a2 = self.root_darts
        d = self.succ[a0]
        while d != a0:
            if d == a1:
                return True
            if d == a2:
                return False
            d = self.succ[d]
        return True  # pragma: no cover

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget

    # search -----------------------------------------------------------------

    def run(self):
        self._next_face()

    def _pick_start(self) -> int:
        visited, succ, pred = self.visited, self.succ, self.pred
        fallback = -1
        for f in range(self.nflags):
            if visited[f]:
                continue
            d = f >> 1
            if (succ[d] if f & 1 == 0 else pred[d]) >= 0:
                return f
            if fallback < 0:
                fallback = f
        return fallback

    def _next_face(self):
        if self.used == self.nflags:
            if self.mode is Orientability.NONORIENTABLE and self.negatives == 0:
                return
            self.solution = self.scheme()
            raise _Found
        lmax = (self.nflags - self.used) // 2 - self.minlen * (self.target - self.closed - 1)
        if lmax < self.minlen:
            return
        f0 = self._pick_start()
        self.visited[f0] = 1
        self._walk(f0, f0, 0, lmax)
        self.visited[f0] = 0

    def _close(self, length: int):
        self.closed += 1
        self.used += 2 * length
        try:
            self._next_face()
        finally:
            self.closed -= 1
            self.used -= 2 * length

    def _walk(self, f0: int, cur: int, length: int, lmax: int):
        visited, succ, pred, sig = self.visited, self.succ, self.pred, self.sig
        marks = []
        try:
            while True:
                e = cur >> 2
                s = sig[e]
                if s == 0:
                    self.unsigned -= 1
                    try:
                        for val in self.sig_order:
                            if (val == 1 and self.mode is Orientability.NONORIENTABLE
                                    and self.unsigned == 0 and self.negatives == 0):
                                continue
                            self._tick()
                            sig[e] = val
                            if val == -1:
                                self.negatives += 1
                            try:
                                self._walk(f0, cur, length, lmax)
                            finally:
                                if val == -1:
                                    self.negatives -= 1
                                sig[e] = 0
                    finally:
                        self.unsigned += 1
                    return
                g = cur ^ 3 if s == 1 else cur ^ 2
                visited[g] = 1
                marks.append(g)
                length += 1
                d = g >> 1
                left = (g & 1) == 0
                n = succ[d] if left else pred[d]
                if n >= 0:
                    h = 2 * n + 1 if left else 2 * n
                    if h == f0:
                        self._close(length)
                        return
                    if length >= lmax:
                        return
                    visited[h] = 1
                    marks.append(h)
                    cur = h
                    continue
                self._branch_corner(f0, d, left, length, lmax)
                return
        finally:
            for m in marks:
                visited[m] = 0

    def _branch_corner(self, f0: int, d: int, left: bool, length: int, lmax: int):
        w = self.tail[d]
        start = self.tail[f0 >> 1]
        head = self.head
        options = []
        for d2 in self.out[w]:
            if d2 == d:
                continue
            if left:
                if self.pred[d2] >= 0:
                    continue
                h = 2 * d2 + 1
            else:
                if self.succ[d2] >= 0:
                    continue
                h = 2 * d2
            closing = h == f0
            if not closing and length >= lmax:
                continue
            options.append((not closing, head[d2] != start, d2, h))
        options.sort()
        for closing_flag, _, d2, h in options:
            token = self._link(d, d2) if left else self._link(d2, d)
            if token is None:
                continue
            self._tick()
            try:
                if not closing_flag:
                    self._close(length)
                else:
                    self.visited[h] = 1
                    try:
                        self._walk(f0, h, length, lmax)
                    finally:
                        self.visited[h] = 0
            finally:
                self._unlink(token)

    def scheme(self) -> SignedScheme:
        G = self.G
        rotation = []
        for v in range(G.p):
            o = self.out[v]
            if not o:
                rotation.append(())
                continue
            rot, d = [], o[0]
            while True:
                rot.append(self.head[d])
                d = self.succ[d]
                if d == o[0]:
                    break
            rotation.append(tuple(rot))
        signature = {e: self.sig[i] for i, e in enumerate(G.edges)}
        return SignedScheme(tuple(rotation), signature)


def _tree_scheme(G: Graph) -> SignedScheme:
    return SignedScheme(tuple(tuple(G.adj[v]) for v in range(G.p)), {e: 1 for e in G.edges})


def search_embedding(G: Graph, k: int, orientability: Orientability | str = Orientability.EITHER,
                     budget: int = 10**7) -> SearchResult:
    """Look for a cellular embedding of connected ``G`` with Euler genus <= k.

    ``Found`` carries a verified certificate; ``ProvedNone`` means every
    normalized scheme was excluded (by the face-length bound or by
    exhaustion); ``BudgetExceeded`` means neither could be established
    within ``budget`` search nodes.  Identical inputs give identical
    certificates.
    """
    mode = Orientability(orientability)
    if G.has_loops():
        raise ValueError("embedding search needs a simple graph")
    if G.p == 0 or not G.is_connected():
        raise ValueError("embedding search needs a connected graph with p >= 1")
    if k < 0:
        return SearchResult(SearchStatus.PROVED_NONE, reason="negative genus")
    p, q = G.p, G.q
    if q == p - 1:
        # trees have one face and no cycle to twist
        if mode is Orientability.NONORIENTABLE:
            return SearchResult(SearchStatus.PROVED_NONE, reason="trees embed orientably only")
        cert = EmbeddingCertificate.from_scheme(G, _tree_scheme(G))
        return SearchResult(SearchStatus.FOUND, cert)
    target = 2 - p + q - k
    girth = G.girth()
    minlen = girth if min(G.degrees()) >= 2 else 3
    if target > 2 * q // minlen:
        return SearchResult(SearchStatus.PROVED_NONE,
                            reason=f"face bound: {target} faces of length >= {minlen} need > {2 * q} darts")
    search = _Search(G, max(target, 1), mode, budget, minlen)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        search.run()
    except _Found:
        scheme = search.solution
        cert = EmbeddingCertificate.from_scheme(G, scheme)
        assert verify_certificate(G, cert) and cert.euler_genus <= k
        return SearchResult(SearchStatus.FOUND, cert, search.nodes)
    except _OutOfBudget:
        return SearchResult(SearchStatus.BUDGET_EXCEEDED, nodes=search.nodes)
    finally:
        sys.setrecursionlimit(old)
    return SearchResult(SearchStatus.PROVED_NONE, nodes=search.nodes, reason="exhaustive search")
