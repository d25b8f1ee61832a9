"""Randomized structural properties of the ring graphs and the embedding engine.

Each property is a pair: a case generator that draws from a ``Draw`` source
and a checker that raises :class:`PropertyViolation` on failure.  A draw
source needs ``choice(seq)`` and ``randint(a, b)``; ``random.Random`` fits,
and the test suite wraps hypothesis' ``data.draw`` in the same interface.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .embedding import EmbeddingCertificate, SignedScheme, trace_faces, verify_certificate
from .graphs import Graph, build_gamma, build_gamma_bar, disjoint_copies, disjoint_union, isomorphic, tensor
from .rings import (
    LOCAL_CATALOG,
    FiniteRing,
    compile_ring,
    index2_maximal_ideals,
    is_local,
    product,
    subgroup_closure,
    validate_S,
)
from .topology import crosscap_exact, orientable_genus, stahl_compose

__all__ = ["PropertyViolation", "Property", "PROPERTIES", "run_property", "ring_pool"]


class PropertyViolation(AssertionError):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PropertyViolation(message)


@lru_cache(maxsize=None)
def _ring(text: str) -> FiniteRing:
    return compile_ring(text)


@lru_cache(maxsize=None)
def ring_pool(max_order: int = 18) -> tuple[str, ...]:
    from .classify import RingUniverse

    return tuple(RingUniverse(max_order=max_order).rings())


_LOCAL_KEYS = tuple(LOCAL_CATALOG)


def _subset(d, seq) -> list:
    return [x for x in seq if d.randint(0, 1)]


def _inverse_closed(d, R: FiniteRing, group) -> frozenset[int]:
    group = sorted(group)
    S = {x for x in _subset(d, group)}
    if not S:
        S = {d.choice(group)}
    return frozenset(S | {R.inverse[s] for s in S})


def _subgroup(d, R: FiniteRing) -> frozenset[int]:
    if d.randint(0, 2) == 0:
        return R.units
    units = sorted(R.units)
    return subgroup_closure(R, [d.choice(units) for _ in range(d.randint(0, 2))])


# ---------------------------------------------------------------------------
# cases over Gamma(R, G, S)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaCase:
    ring: str
    G: frozenset
    S: frozenset

    def __str__(self):
        R = _ring(self.ring)
        fmt = lambda xs: "{" + ",".join(R.format_element(x) for x in sorted(xs)) + "}"
        return f"{self.ring} G={fmt(self.G)} S={fmt(self.S)}"


def gen_gamma(d) -> GammaCase:
    ring = d.choice(ring_pool())
    R = _ring(ring)
    G = _subgroup(d, R)
    return GammaCase(ring, G, _inverse_closed(d, R, G))


def gen_gamma_units(d) -> GammaCase:
    ring = d.choice(ring_pool())
    R = _ring(ring)
    return GammaCase(ring, R.units, _inverse_closed(d, R, R.units))


def gen_gamma_index2(d) -> GammaCase:
    ring = d.choice([r for r in ring_pool() if index2_maximal_ideals(_ring(r))])
    R = _ring(ring)
    return GammaCase(ring, R.units, _inverse_closed(d, R, R.units))


def _relation(R: FiniteRing, G, S) -> list[set[int]]:
    """Closed neighbourhoods straight from the definition ``x + s*y in G``."""
    return [
        {y for y in range(R.order) if any(int(R.add[x, R.mul[s, y]]) in G for s in S)}
        for x in range(R.order)
    ]


def check_symmetry(case: GammaCase) -> None:
    R = _ring(case.ring)
    rel = _relation(R, case.G, case.S)
    for x in range(R.order):
        for y in rel[x]:
            _require(x in rel[y], f"{case}: {x}~{y} but not {y}~{x}")
    data = validate_S(R, case.G, case.S)
    G, Gbar = build_gamma(R, data), build_gamma_bar(R, data)
    want = {(x, y) for x in range(R.order) for y in rel[x] if x < y}
    _require(set(G.edges) == want, f"{case}: builder edges differ from the definition")
    want_bar = want | {(x, x) for x in range(R.order) if x in rel[x]}
    _require(set(Gbar.edges) == want_bar, f"{case}: barred builder differs from the definition")


def check_degree_bounds(case: GammaCase) -> None:
    R = _ring(case.ring)
    data = validate_S(R, case.G, case.S)
    G, Gbar = build_gamma(R, data), build_gamma_bar(R, data)
    nG, nS = len(case.G), len(case.S)
    closed = [set() for _ in range(R.order)]
    for u, v in Gbar.edges:
        closed[u].add(v)
        closed[v].add(u)
    for x in range(R.order):
        deg = G.degree(x)
        _require(nG - 1 <= deg <= nG * nS, f"{case}: deg({x})={deg} outside [{nG - 1}, {nG * nS}]")
        _require(len(closed[x]) >= nG, f"{case}: barred deg({x})={len(closed[x])} < {nG}")


def check_coset_lifting(case: GammaCase) -> None:
    R = _ring(case.ring)
    G = build_gamma(R, validate_S(R, None, case.S))
    J = sorted(R.jacobson)
    for a, b in G.edges:
        for j1 in J:
            for j2 in J:
                x, y = R.plus(a, j1), R.plus(b, j2)
                if x != y:
                    _require(G.has_edge(x, y), f"{case}: {a}~{b} but {x} !~ {y}")


def check_bipartite(case: GammaCase) -> None:
    R = _ring(case.ring)
    G = build_gamma(R, validate_S(R, None, case.S))
    ideals = index2_maximal_ideals(R)
    _require(bool(ideals), f"{case}: generator produced a ring without an index-2 ideal")
    _require(G.is_bipartite(), f"{case}: graph is not bipartite")
    for m in ideals:
        for u, v in G.edges:
            _require((u in m) != (v in m), f"{case}: edge {u}-{v} does not cross the ideal")
    local, m = is_local(R)
    if local:
        m1 = {R.plus(R.one, x) for x in m}
        want = {(min(u, v), max(u, v)) for u in m for v in m1}
        _require(set(G.edges) == want, f"{case}: not complete bipartite on m and 1+m")


# ---------------------------------------------------------------------------
# tensor products and disjoint copies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorCase:
    left: GammaCase
    right: GammaCase

    def __str__(self):
        return f"[{self.left}] x [{self.right}]"


def gen_tensor(d) -> TensorCase:
    def side(limit):
        key = d.choice([k for k in _LOCAL_KEYS if LOCAL_CATALOG[k].order <= limit])
        text = str(LOCAL_CATALOG[key])
        R = _ring(text)
        G = _subgroup(d, R)
        return GammaCase(text, G, _inverse_closed(d, R, G))

    a = side(9)
    return TensorCase(a, side(max(2, 36 // _ring(a.ring).order)))


def check_tensor(case: TensorCase) -> None:
    R1, R2 = _ring(case.left.ring), _ring(case.right.ring)
    R = compile_ring(product(R1.spec, R2.spec))
    code = lambda a, b: R.encode(R1.decode(a) + R2.decode(b))
    G = frozenset(code(a, b) for a in case.left.G for b in case.right.G)
    S = frozenset(code(a, b) for a in case.left.S for b in case.right.S)
    direct = build_gamma(R, validate_S(R, G, S))
    T = tensor(build_gamma_bar(R1, validate_S(R1, case.left.G, case.left.S)),
               build_gamma_bar(R2, validate_S(R2, case.right.G, case.right.S)))
    perm = [code(u // R2.order, u % R2.order) for u in range(T.p)]
    mapped = {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in T.edges}
    _require(mapped == set(direct.edges), f"{case}: tensor product differs from the product-ring graph")


@dataclass(frozen=True)
class CopiesCase:
    T: str
    S: frozenset  # in T
    ell: int

    def __str__(self):
        R = _ring(self.T)
        return f"Z2^{self.ell} x {self.T} S'={{{','.join(R.format_element(s) for s in sorted(self.S))}}}"


def gen_copies(d) -> CopiesCase:
    key = d.choice([k for k in _LOCAL_KEYS if LOCAL_CATALOG[k].order <= 9])
    text = str(LOCAL_CATALOG[key])
    R = _ring(text)
    return CopiesCase(text, _inverse_closed(d, R, R.units), d.randint(1, 2))


def _lifted(T: FiniteRing, S, ell: int):
    R = compile_ring(product(*([LOCAL_CATALOG["Z2"]] * ell), T.spec))
    lift = frozenset(R.encode((1,) * ell + T.decode(s)) for s in S)
    return R, lift


def check_copies(case: CopiesCase) -> None:
    T = _ring(case.T)
    R1, S1 = _lifted(T, case.S, 1)
    base = build_gamma(R1, validate_S(R1, None, S1))
    _require(not build_gamma_bar(R1, validate_S(R1, None, S1)).has_loops(),
             f"{case}: precondition Gamma = barred Gamma fails")
    Rl, Sl = _lifted(T, case.S, case.ell)
    G = build_gamma(Rl, validate_S(Rl, None, Sl))
    want = disjoint_copies(base, 2 ** (case.ell - 1))
    _require(isomorphic(G, want) is not None, f"{case}: not isomorphic to {2 ** (case.ell - 1)} copies")


# ---------------------------------------------------------------------------
# component composition vs direct search
# ---------------------------------------------------------------------------


def _random_connected(d, p: int) -> Graph:
    edges = set()
    for v in range(1, p):
        u = d.randint(0, v - 1)
        edges.add((u, v))
    for u in range(p):
        for v in range(u + 1, p):
            if d.randint(0, 3):
                edges.add((u, v))
    return Graph(p, edges)


@dataclass(frozen=True)
class UnionCase:
    parts: tuple[Graph, ...]

    def __str__(self):
        return " + ".join(f"<{g.p} vertices: {list(g.edges)}>" for g in self.parts)


def gen_union(d) -> UnionCase:
    # a second component has at most 5 vertices: two bridged 6-vertex
    # nonplanar blocks cost the direct search minutes
    first = _random_connected(d, d.randint(1, 6))
    if d.randint(0, 1):
        return UnionCase((first,))
    return UnionCase((first, _random_connected(d, d.randint(1, 5))))


def check_union(case: UnionCase) -> None:
    pairs = []
    for H in case.parts:
        r = crosscap_exact(H, use_formulas=False)
        g = orientable_genus(H)
        _require(r.exact and g is not None, f"{case}: component not decided")
        pairs.append((r.value, g))
    composed = stahl_compose(pairs)
    union = disjoint_union(*case.parts)
    u = crosscap_exact(union, use_formulas=False)
    _require(u.exact and u.value == composed, f"{case}: union {u.render()} vs composition {composed}")
    # bridge the components and search the connected graph directly
    offsets = [0]
    for H in case.parts[:-1]:
        offsets.append(offsets[-1] + H.p)
    joined = union.with_edges([(offsets[i], offsets[i + 1]) for i in range(len(offsets) - 1)])
    direct = crosscap_exact(joined, use_formulas=False, use_obstructions=False)
    _require(direct.exact and direct.value == composed,
             f"{case}: direct search {direct.render()} vs composition {composed}")


# ---------------------------------------------------------------------------
# certificates and face tracing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchemeCase:
    graph: Graph
    scheme: SignedScheme

    def __str__(self):
        return f"<{self.graph.p} vertices: {list(self.graph.edges)}> rot={self.scheme.rotation}"


def gen_scheme(d) -> SchemeCase:
    p = d.randint(1, 8)
    edges = [(u, v) for u in range(p) for v in range(u + 1, p) if d.randint(0, 2) == 0]
    G = Graph(p, edges)
    rotation = []
    for v in range(p):
        rest = list(G.adj[v])
        rot = []
        while rest:
            rot.append(rest.pop(d.randint(0, len(rest) - 1)))
        rotation.append(tuple(rot))
    signs = {e: (1 if d.randint(0, 1) else -1) for e in G.edges}
    return SchemeCase(G, SignedScheme(tuple(rotation), signs))


def check_roundtrip(case: SchemeCase) -> None:
    cert = EmbeddingCertificate.from_scheme(case.graph, case.scheme)
    text = cert.to_text()
    again = EmbeddingCertificate.from_text(text)
    _require(again.to_text() == text, f"{case}: text round-trip is not bit-exact")
    _require(bool(verify_certificate(case.graph, again)), f"{case}: parsed certificate fails verification")
    norm = EmbeddingCertificate.from_scheme(case.graph, case.scheme.normalized(case.graph))
    _require((norm.F, norm.euler_genus, norm.orientable) == (cert.F, cert.euler_genus, cert.orientable),
             f"{case}: tree normalization changed the embedding")


def check_darts(case: SchemeCase) -> None:
    G = case.graph
    t = trace_faces(G, case.scheme)
    uses = Counter((min(u, v), max(u, v)) for face in t.faces for u, v in face)
    _require(sum(len(f) for f in t.faces) == 2 * G.q, f"{case}: face lengths do not sum to 2q")
    _require(all(uses[e] == 2 for e in G.edges) and set(uses) == set(G.edges),
             f"{case}: some edge side is not covered exactly once")
    c = len(G.components())
    _require(t.euler_genus == 2 * c - G.p + G.q - t.F and t.euler_genus >= 0, f"{case}: Euler formula broken")
    if t.orientable:
        _require(t.euler_genus % 2 == 0, f"{case}: odd Euler genus on an orientable scheme")


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Property:
    name: str
    description: str
    generate: Callable
    check: Callable


PROPERTIES: tuple[Property, ...] = (
    Property("adjacency-symmetry", "x+sy in G is a symmetric relation; builders match it", gen_gamma, check_symmetry),
    Property("degree-bounds", "|G|-1 <= deg <= |G||S|, barred deg >= |G|", gen_gamma, check_degree_bounds),
    Property("coset-lifting", "adjacency lifts to whole cosets of J(R)", gen_gamma_units, check_coset_lifting),
    Property("index2-bipartite", "an index-2 maximal ideal forces a bipartition", gen_gamma_index2, check_bipartite),
    Property("tensor-product", "product ring graph equals the tensor of barred graphs", gen_tensor, check_tensor),
    Property("disjoint-copies", "Z2^l x T gives 2^(l-1) copies of the Z2 x T graph", gen_copies, check_copies),
    Property("component-composition", "two-case composition equals direct search", gen_union, check_union),
    Property("certificate-roundtrip", "certificate text round-trips and re-verifies", gen_scheme, check_roundtrip),
    Property("dart-conservation", "every edge side lies on exactly one face", gen_scheme, check_darts),
)


def run_property(prop: Property, cases: int = 200, seed: int = 0) -> tuple[int, str | None]:
    """Run ``cases`` seeded cases; returns (cases run, first failure message)."""
    rng = random.Random(f"{prop.name}:{seed}")
    for i in range(cases):
        case = prop.generate(rng)
        try:
            prop.check(case)
        except PropertyViolation as exc:
            return i + 1, str(exc)
    return cases, None
