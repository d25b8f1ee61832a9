"""Surface bounds, crosscap formulas, planarity and exact crosscap numbers.

Conventions: planar graphs have crosscap number 0, Euler genus of a
nonorientable embedding equals its number of crosscaps, and budgets are
search-node counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .embedding import (
    EmbeddingCertificate,
    Orientability,
    SearchStatus,
    SignedScheme,
    search_embedding,
    verify_certificate,
)
from .graphs import Graph, complete_bipartite, complete_graph
from .subdivision import BudgetExceeded, SubdivisionModel, find_subdivision

__all__ = [
    "TooFewVertices",
    "OutOfRange",
    "InexactInput",
    "InternalDisagreement",
    "crosscap_lower_bound_edges",
    "min_degree_consistency",
    "kn_crosscap",
    "kmn_crosscap",
    "stahl_compose",
    "component_bracket",
    "union_certificate",
    "Planarity",
    "planarity",
    "Bound",
    "CrosscapResult",
    "crosscap_exact",
    "orientable_genus",
    "recognize_complete",
]


class TooFewVertices(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class InexactInput(ValueError):
    pass


class InternalDisagreement(AssertionError):
    """Two independent deciders returned different answers."""


# ---------------------------------------------------------------------------
# bounds and formulas
# ---------------------------------------------------------------------------


def crosscap_lower_bound_edges(p: int, q: int, n: int = 1, triangle_free: bool = False) -> int:
    """Edge-count lower bound on the crosscap number, rounded up, floored at 0."""
    if p < 3:
        raise TooFewVertices(f"edge bound needs p >= 3, got p = {p}")
    per_face = 2 if triangle_free else 3
    return max(0, -(-q // per_face) - p + n + 1)


def min_degree_consistency(G: Graph, k: int) -> bool:
    """True iff the minimum degree satisfies delta <= 6 + (6k - 6(n+1)) / p."""
    if G.p < 3:
        raise TooFewVertices(f"degree bound needs p >= 3, got p = {G.p}")
    n = len(G.components())
    delta = min(G.degrees())
    # compare delta * p <= 6p + 6k - 6(n+1) to stay in integers
    return delta * G.p <= 6 * G.p + 6 * k - 6 * (n + 1)


def kn_crosscap(n: int) -> int:
    if n < 3:
        raise OutOfRange(f"K_n formula needs n >= 3, got {n}")
    if n == 7:
        return 3
    return -(-((n - 3) * (n - 4)) // 6)


def kmn_crosscap(m: int, n: int) -> int:
    if m < 2 or n < 2:
        raise OutOfRange(f"K_m,n formula needs m, n >= 2, got {m}, {n}")
    return -(-((m - 2) * (n - 2)) // 2)


def stahl_compose(pairs) -> int:
    """Crosscap number of a disjoint union from exact (crosscap, genus) pairs.

    The two-case composition rule is stated for the convention in which a
    planar graph has nonorientable genus 1 (the projective plane is the
    smallest nonorientable surface).  Planar components are therefore fed
    in with value 1, and a union of planar components is planar (value 0).
    """
    pairs = list(pairs)
    if not pairs:
        raise InexactInput("no components")
    for pair in pairs:
        if pair is None or any(x is None or not isinstance(x, int) or x < 0 for x in pair):
            raise InexactInput(f"component value {pair!r} is not exact")
    if all(c == 0 for c, _ in pairs):
        return 0
    shifted = [(c if c > 0 else 1, g) for c, g in pairs]
    n = len(shifted)
    if all(c > 2 * g for c, g in shifted):
        return 1 - n + sum(c for c, _ in shifted)
    return 2 * n - sum(max(2 - 2 * g, 2 - c) for c, g in shifted)


def component_bracket(crosscaps) -> tuple[int, int]:
    """Bracket ``1 - n + sum <= crosscap <= sum`` valid without orientable genera."""
    cs = list(crosscaps)
    if all(c == 0 for c in cs):
        return 0, 0
    shifted = [max(c, 1) for c in cs]
    return max(1 - len(cs) + sum(shifted), 1), sum(cs)


def recognize_complete(G: Graph) -> tuple[str, tuple[int, ...]] | None:
    """``("K", (n,))`` or ``("K", (m, n))`` when G is complete / complete bipartite."""
    if not G.is_connected() or G.p < 2:
        return None
    if G.q == G.p * (G.p - 1) // 2:
        return "K", (G.p,)
    colors = G.two_coloring()
    if colors is not None:
        m = sum(1 for c in colors if c == 0)
        n = G.p - m
        if m * n == G.q:
            return "K", tuple(sorted((m, n)))
    return None


# ---------------------------------------------------------------------------
# planarity
# ---------------------------------------------------------------------------


def union_certificate(G: Graph, parts: list[tuple[list[int], EmbeddingCertificate]]) -> EmbeddingCertificate:
    """Glue per-component certificates into one certificate for ``G``."""
    rotation: list[tuple[int, ...]] = [()] * G.p
    signature = {}
    for verts, cert in parts:
        for local, rot in enumerate(cert.scheme.rotation):
            rotation[verts[local]] = tuple(verts[w] for w in rot)
        for u, v in cert.graph.edges:
            a, b = verts[u], verts[v]
            signature[(min(a, b), max(a, b))] = cert.scheme.sign(u, v)
    return EmbeddingCertificate.from_scheme(G, SignedScheme(tuple(rotation), signature))


@dataclass(frozen=True)
class Planarity:
    planar: bool | None
    certificate: EmbeddingCertificate | None = None
    pattern: str | None = None
    model: SubdivisionModel | None = None

    @property
    def unknown(self) -> bool:
        return self.planar is None


def _embed_components(G: Graph, k_of, mode, budget):
    """Search every component; returns (status, parts)."""
    parts = []
    for comp in G.components():
        H = G.induced(comp)
        r = search_embedding(H, k_of(H), mode, budget)
        if r.status is not SearchStatus.FOUND:
            return r.status, None
        parts.append((comp, r.certificate))
    return SearchStatus.FOUND, parts


def planarity(G: Graph, budget: int = 10**7) -> Planarity:
    """Planar with a genus-0 certificate, or nonplanar with a Kuratowski model.

    Both an embedding search and a Kuratowski subdivision search are run;
    if they disagree :class:`InternalDisagreement` is raised.
    """
    if G.has_loops():
        G = G.without_loops()
    status, parts = _embed_components(G, lambda H: 0, Orientability.ORIENTABLE, budget)
    model, pattern = None, None
    try:
        for pattern, H in (("K5", complete_graph(5)), ("K33", complete_bipartite(3, 3))):
            model = find_subdivision(G, H, budget)
            if model is not None:
                break
        kuratowski_known = True
    except BudgetExceeded:
        kuratowski_known = False
    embedding_known = status is not SearchStatus.BUDGET_EXCEEDED
    embedded = status is SearchStatus.FOUND
    if embedding_known and kuratowski_known and embedded == (model is not None):
        raise InternalDisagreement(
            f"embedding search says planar={embedded}, Kuratowski search found {pattern if model else 'nothing'}"
        )
    if embedded:
        cert = union_certificate(G, parts)
        assert verify_certificate(G, cert) and cert.euler_genus == 0
        return Planarity(True, certificate=cert)
    if model is not None:
        return Planarity(False, pattern=pattern, model=model)
    if embedding_known:
        return Planarity(False)
    return Planarity(None)


# ---------------------------------------------------------------------------
# exact crosscap number
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bound:
    value: int
    reason: str


@dataclass
class CrosscapResult:
    """Bracket on the crosscap number with the justification of each side."""

    lower: Bound
    upper: Bound | None
    certificate: EmbeddingCertificate | None = None
    obstruction: tuple[str, SubdivisionModel] | None = None
    orientable_genus: int | None = None
    components: list["CrosscapResult"] = field(default_factory=list)
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower.value == self.upper.value

    @property
    def unknown(self) -> bool:
        return not self.exact

    @property
    def value(self) -> int | None:
        return self.lower.value if self.exact else None

    def render(self) -> str:
        up = f"{self.upper.value} ({self.upper.reason})" if self.upper else "unknown"
        head = f"exact {self.value}" if self.exact else "bracket"
        return f"{head}: lower {self.lower.value} ({self.lower.reason}), upper {up}"


def orientable_genus(G: Graph, budget: int = 10**7, start: int = 0) -> int | None:
    """Orientable genus of connected ``G``, or None if the budget runs out."""
    k = 2 * max(0, start)
    if G.p >= 3 and G.q >= 3:
        k = max(k, 2 * math.ceil(max(0, -(-G.q // 3) - G.p + 2) / 2))
    while True:
        r = search_embedding(G, k, Orientability.ORIENTABLE, budget)
        if r.status is SearchStatus.FOUND:
            return r.certificate.euler_genus // 2
        if r.status is SearchStatus.BUDGET_EXCEEDED:
            return None
        k += 2


def _connected_crosscap(G: Graph, budget: int, use_formulas: bool, use_obstructions: bool,
                        want_genus: bool) -> CrosscapResult:
    from .obstructions import NONPROJECTIVE, detect_obstruction

    lower = Bound(0, "trivial")
    upper: Bound | None = None
    cert = None
    nodes = 0
    if G.p >= 3:
        b = crosscap_lower_bound_edges(G.p, G.q, 1, G.is_triangle_free())
        if b > lower.value:
            lower = Bound(b, "edge-count bound")
    formula = None
    shape = recognize_complete(G)
    if use_formulas and shape is not None:
        dims = shape[1]
        try:
            formula = kn_crosscap(dims[0]) if len(dims) == 1 else kmn_crosscap(*dims)
        except OutOfRange:
            formula = None
        if formula is not None:
            name = f"K{dims[0]}" if len(dims) == 1 else f"K{dims[0]},{dims[1]}"
            if formula > lower.value:
                lower = Bound(formula, f"formula {name}")
            upper = Bound(formula, f"formula {name}")

    # planar?
    if lower.value == 0:
        r = search_embedding(G, 0, Orientability.ORIENTABLE, budget)
        nodes += r.nodes
        if r.found:
            return CrosscapResult(lower, Bound(0, "certificate"), r.certificate, orientable_genus=0, nodes=nodes)
        if r.status is SearchStatus.PROVED_NONE:
            lower = Bound(1, "nonplanar (search)")
    k = max(lower.value, 1)
    obstruction_hit = None
    while upper is None or k <= upper.value:
        r = search_embedding(G, k, Orientability.NONORIENTABLE, budget)
        nodes += r.nodes
        if r.found:
            cert = r.certificate
            upper = Bound(cert.euler_genus, "certificate")
            break
        if r.status is SearchStatus.BUDGET_EXCEEDED:
            break
        lower = Bound(k + 1, f"exhaustive search refutes {k} crosscaps")
        k += 1
    if upper is not None and lower.value > upper.value:
        raise InternalDisagreement(f"lower bound {lower} exceeds upper bound {upper}")
    if lower.value < 2 and use_obstructions and not (upper is not None and upper.value == lower.value):
        det = detect_obstruction(G, NONPROJECTIVE, budget)
        if det.found:
            lower = Bound(2, f"obstruction {det.name}")
            obstruction_hit = (det.name, det.model)
    genus = None
    if want_genus:
        genus = orientable_genus(G, budget, start=0)
        if genus is not None and (upper is None or 2 * genus + 1 < upper.value):
            upper = Bound(2 * genus + 1, "2*genus+1")
    return CrosscapResult(lower, upper, cert, obstruction_hit, genus, nodes=nodes)


def crosscap_exact(G: Graph, budget: int = 10**7, use_formulas: bool = True,
                   use_obstructions: bool = True) -> CrosscapResult:
    """Exact crosscap number when it can be certified, otherwise a bracket.

    Components are handled separately; a disconnected graph is composed
    with the two-case component rule, which needs the orientable genus of
    each component.  Without it the result is the weaker bracket.
    """
    if G.has_loops():
        G = G.without_loops()
    comps = [c for c in G.components()]
    if len(comps) == 1:
        return _connected_crosscap(G, budget, use_formulas, use_obstructions, want_genus=False)
    results = []
    for comp in comps:
        H = G.induced(comp)
        results.append(_connected_crosscap(H, budget, use_formulas, use_obstructions, want_genus=True))
    if all(r.exact for r in results) and all(r.orientable_genus is not None for r in results):
        value = stahl_compose([(r.value, r.orientable_genus) for r in results])
        return CrosscapResult(Bound(value, "component composition"), Bound(value, "component composition"),
                              components=results, nodes=sum(r.nodes for r in results))
    lo = [r.lower.value for r in results]
    hi = [r.upper.value if r.upper else None for r in results]
    lower = component_bracket(lo)[0] if any(lo) else 0
    upper = None if None in hi else Bound(component_bracket(hi)[1], "component sum")
    return CrosscapResult(Bound(lower, "component bracket"), upper, components=results,
                          nodes=sum(r.nodes for r in results))
