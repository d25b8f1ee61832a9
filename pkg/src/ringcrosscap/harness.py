"""Reproduction suite: one check per acceptance item, keyed by a short id.

Every item yields PASS, FAIL, UNKNOWN (a search ran out of budget) or
SKIPPED (optional work that was not requested or could not finish).
"""

from __future__ import annotations

import enum
import re
import subprocess
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from .classify import (
    PLANAR,
    PROJECTIVE,
    AuditRecord,
    RingUniverse,
    canonicalize,
    compute_class,
    cross_validate,
    format_verdicts,
    size_bound_audit,
)
from .embedding import EmbeddingCertificate, Orientability, SearchStatus, search_embedding, verify_certificate
from .graphs import (
    Graph,
    build_comaximal,
    build_gamma,
    build_gamma_bar,
    complete_bipartite,
    complete_graph,
    isomorphic,
    tensor,
)
from .obstructions import a2_ring_graph, e18_ring_graph, obstruction
from .properties import PROPERTIES, run_property
from .rings import LOCAL_CATALOG, compile_ring, inverse_closed_subsets, is_local, validate_S
from .subdivision import BudgetExceeded, find_subdivision
from .topology import (
    crosscap_exact,
    crosscap_lower_bound_edges,
    kmn_crosscap,
    kn_crosscap,
    min_degree_consistency,
)

__all__ = [
    "Status",
    "RunConfig",
    "ItemResult",
    "ITEMS",
    "SECTIONS",
    "run_suite",
    "exit_code",
    "golden_certificate",
    "GOLDEN",
    "verify_files_fresh",
    "format_results",
]


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNKNOWN = "UNKNOWN"
    SKIPPED = "SKIPPED"


@dataclass
class RunConfig:
    budget: int = 10**7
    workers: int = 1
    out: Path | None = None
    include_slow: bool = False
    sections: tuple[str, ...] | None = None
    items: tuple[str, ...] | None = None
    cases: int = 200
    seed: int = 0
    max_order: int = 18
    verbosity: int = 0

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.workers < 1:
            raise ValueError("worker count must be at least 1")
        if self.out is not None:
            self.out = Path(self.out)

    def universe(self) -> RingUniverse:
        return RingUniverse(max_order=self.max_order)


@dataclass
class ItemResult:
    key: str
    section: str
    title: str
    status: Status
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        return f"{self.status.value:7} {self.key:4} [{self.section}] {self.title} ({self.seconds:.1f}s)"

    def tsv(self) -> str:
        return "\t".join([self.key, self.section, self.status.value, f"{self.seconds:.2f}", self.title])


# ---------------------------------------------------------------------------
# golden certificates (stored once, re-verified on every run)
# ---------------------------------------------------------------------------

#: file name -> (ring, family, S as element strings, what the drawing shows)
GOLDEN = {
    "gamma-Z3xZ3-S22.cert": ("Z3 x Z3", "gamma", ("(2,2)",), "projective drawing of Gamma(Z3 x Z3, {(2,2)})"),
    "gamma-Z3xZ3-S12-S22.cert": ("Z3 x Z3", "gamma", ("(1,2)", "(2,2)"), "projective drawing of Gamma(Z3 x Z3, {(1,2),(2,2)})"),
    "comaximal-Z2xZ4.cert": ("Z2 x Z4", "comaximal", (), "projective drawing of C(Z2 x Z4)"),
}


def _golden_graph(name: str) -> Graph:
    ring, family, S, _ = GOLDEN[name]
    R = compile_ring(ring)
    if family == "comaximal":
        return build_comaximal(R)
    return build_gamma(R, validate_S(R, None, [R.parse_element(s) for s in S]))


def golden_certificate(name: str) -> EmbeddingCertificate:
    text = resources.files("ringcrosscap").joinpath("data").joinpath("certificates").joinpath(name).read_text()
    return EmbeddingCertificate.from_text(text)


def verify_files_fresh(paths) -> list[tuple[str, bool, str]]:
    """Re-verify certificate files in a separate interpreter."""
    paths = [str(p) for p in paths]
    if not paths:
        return []
    code = (
        "import sys\n"
        "from ringcrosscap.embedding import EmbeddingCertificate, verify_certificate\n"
        "for path in sys.argv[1:]:\n"
        "    c = EmbeddingCertificate.from_text(open(path).read())\n"
        "    r = verify_certificate(c.graph, c)\n"
        "    print(('ok' if r.ok else 'bad') + '\\t' + path + '\\t' + r.reason)\n"
    )
    proc = subprocess.run([sys.executable, "-c", code, *paths], capture_output=True, text=True)
    results = {}
    for line in proc.stdout.splitlines():
        flag, path, reason = (line.split("\t") + ["", ""])[:3]
        results[path] = (flag == "ok", reason)
    return [(p, *results.get(p, (False, proc.stderr.strip()[-200:] or "no output"))) for p in paths]


# ---------------------------------------------------------------------------
# item context
# ---------------------------------------------------------------------------


class Context:
    def __init__(self, config: RunConfig):
        self.config = config
        self.records: list[AuditRecord] = []
        self.emitted: list[Path] = []
        self.details: list[str] = []
        self.failed = False
        self.unknown = False
        self.skipped = False
        self.verdicts = None

    @property
    def budget(self) -> int:
        return self.config.budget

    def note(self, text: str) -> None:
        self.details.append(text)

    def ok(self, cond: bool, text: str) -> bool:
        self.details.append(("ok    " if cond else "FAIL  ") + text)
        if not cond:
            self.failed = True
        return cond

    def undecided(self, text: str) -> None:
        self.details.append("UNKN  " + text)
        self.unknown = True

    def skip(self, text: str) -> None:
        self.details.append("skip  " + text)
        self.skipped = True

    def status(self) -> Status:
        if self.failed:
            return Status.FAIL
        if self.unknown:
            return Status.UNKNOWN
        if self.skipped:
            return Status.SKIPPED
        return Status.PASS

    def record(self, ring: str, family: str, S: str, k: int) -> None:
        self.records.append(AuditRecord(ring, family, S, k))

    def emit(self, name: str, text: str) -> None:
        if self.config.out is None:
            return
        path = self.config.out / "witnesses" / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        self.emitted.append(path)


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "-", text).strip("-")


def _s_label(R, S) -> str:
    return "{" + ",".join(R.format_element(s) for s in sorted(S)) + "}"


def _gamma(R, S) -> Graph:
    return build_gamma(R, validate_S(R, None, S))


# ---------------------------------------------------------------------------
# items
# ---------------------------------------------------------------------------


def item_formulas(ctx: Context) -> None:
    cases = [
        ("K5", complete_graph(5), kn_crosscap(5)),
        ("K6", complete_graph(6), kn_crosscap(6)),
        ("K3,3", complete_bipartite(3, 3), kmn_crosscap(3, 3)),
        ("K3,4", complete_bipartite(3, 4), kmn_crosscap(3, 4)),
    ]
    for name, G, formula in cases:
        ctx.ok(formula == 1, f"formula gives crosscap({name}) = {formula}, expected 1")
        t = time.perf_counter()
        r = crosscap_exact(G, ctx.budget, use_formulas=False)
        dt = time.perf_counter() - t
        if not r.exact:
            ctx.undecided(f"search for {name}: {r.render()}")
            continue
        ctx.ok(r.value == formula, f"search: crosscap({name}) = {r.value} [{r.render()}]")
        ctx.ok(dt <= 60, f"{name} searched in {dt:.2f}s (limit 60s)")
        if r.certificate is not None:
            ctx.emit(f"formula-{_slug(name)}.cert", r.certificate.to_text())


def item_k44(ctx: Context) -> None:
    t = time.perf_counter()
    G = complete_bipartite(4, 4)
    lb = crosscap_lower_bound_edges(G.p, G.q, 1, G.is_triangle_free())
    ctx.ok(G.is_triangle_free() and lb == 16 // 2 - 8 + 2 == 2, f"triangle-free edge bound gives {lb}")
    r = search_embedding(G, 2, Orientability.NONORIENTABLE, ctx.budget)
    if r.status is SearchStatus.BUDGET_EXCEEDED:
        ctx.undecided("no Euler-genus-2 certificate within budget")
        return
    ok = r.found and r.certificate.euler_genus == 2 and not r.certificate.orientable
    ctx.ok(ok and bool(verify_certificate(G, r.certificate)),
           f"nonorientable Euler-genus-2 certificate found ({r.nodes} nodes)")
    if ok:
        ctx.emit("K44-euler-genus-2.cert", r.certificate.to_text())
    ctx.ok(kmn_crosscap(4, 4) == 2, "formula value for K4,4 is 2")
    ctx.ok(time.perf_counter() - t <= 600, "within 10 minutes")


def item_k7(ctx: Context) -> None:
    if not ctx.config.include_slow:
        ctx.skip("exact crosscap of K7 runs only with --include-slow")
        return
    G = complete_graph(7)
    for k in (1, 2):
        r = search_embedding(G, k, Orientability.NONORIENTABLE, ctx.budget)
        if r.status is SearchStatus.BUDGET_EXCEEDED:
            ctx.skip(f"refuting {k} crosscaps ran out of budget")
            return
        ctx.ok(r.status is SearchStatus.PROVED_NONE, f"K7 has no embedding with {k} crosscaps ({r.reason})")
    r = search_embedding(G, 3, Orientability.NONORIENTABLE, ctx.budget)
    if r.status is SearchStatus.BUDGET_EXCEEDED:
        ctx.skip("no 3-crosscap certificate within budget")
        return
    ctx.ok(r.found and r.certificate.euler_genus == 3 == kn_crosscap(7), "K7 embeds with 3 crosscaps")
    if r.found:
        ctx.emit("K7-crosscap-3.cert", r.certificate.to_text())


def item_z5_z7(ctx: Context) -> None:
    R = compile_ring("Z5")
    sets = [S for S in inverse_closed_subsets(R) if S != frozenset({1})]
    ctx.ok(len(sets) == 6, f"Z5 has {len(sets)} inverse-closed S other than {{1}}")
    for S in sets:
        c = compute_class(_gamma(R, S), ctx.budget)
        label = _s_label(R, S)
        good = c.cls == PROJECTIVE and c.certificate is not None and c.certificate.euler_genus == 1
        if c.cls == "unknown":
            ctx.undecided(f"Gamma(Z5,{label}): {c.note}")
            continue
        ctx.ok(good, f"Gamma(Z5,{label}) is {c.cls} [{c.witness_text()}]")
        if good:
            ctx.emit(f"gamma-Z5-S{_slug(label)}.cert", c.certificate.to_text())
            ctx.record("Z5", "gamma", label, 1)
    c = compute_class(_gamma(R, [1]), ctx.budget)
    ctx.ok(c.cls == PLANAR, f"Gamma(Z5,{{1}}) is {c.cls}")

    R7 = compile_ring("Z7")
    A2 = obstruction("A2").graph
    ctx.ok(isomorphic(a2_ring_graph(), A2) is not None, "Gamma(Z7,{1}) is isomorphic to A2 = K1,2,2,2")
    r = search_embedding(a2_ring_graph(), 1, Orientability.NONORIENTABLE, ctx.budget)
    if r.status is SearchStatus.BUDGET_EXCEEDED:
        ctx.undecided("projective search on Gamma(Z7,{1}) ran out of budget")
    else:
        ctx.ok(r.status is SearchStatus.PROVED_NONE, f"Gamma(Z7,{{1}}) at one crosscap: {r.status.value} ({r.reason})")
    K7 = complete_graph(7)
    for S in inverse_closed_subsets(R7):
        if len(S) < 2 and S != frozenset({6}):
            continue
        G = _gamma(R7, S)
        label = _s_label(R7, S)
        ctx.ok(G.edges == K7.edges and not min_degree_consistency(G, 1),
               f"Gamma(Z7,{label}) = K7 and the minimum-degree test rules out one crosscap")


Z33_PROJECTIVE = ({(2, 2)}, {(1, 2), (2, 2)}, {(2, 1), (2, 2)})


def item_z3xz3(ctx: Context) -> None:
    R = compile_ring("Z3 x Z3")
    enc = lambda ts: frozenset(R.encode(t) for t in ts)
    all_sets = inverse_closed_subsets(R)
    ctx.note(f"{len(all_sets)} inverse-closed S in U(Z3 x Z3) (every unit is its own inverse)")
    expected = {enc(s) for s in Z33_PROJECTIVE}
    projective = set()
    for S in all_sets:
        G = _gamma(R, S)
        c = compute_class(G, ctx.budget)
        label = _s_label(R, S)
        if c.cls == "unknown":
            ctx.undecided(f"Gamma(Z3xZ3,{label}): {c.note}")
            continue
        ctx.note(f"Gamma(Z3xZ3,{label}): {c.cls} [{c.witness_text()}]")
        if c.cls == PROJECTIVE:
            projective.add(S)
            ctx.ok(bool(verify_certificate(G, c.certificate)), f"certificate for {label} re-verifies")
            ctx.emit(f"gamma-Z3xZ3-S{_slug(label)}.cert", c.certificate.to_text())
            ctx.record("Z3 x Z3", "gamma", label, 1)
    ctx.ok(projective == expected,
           "projective exactly for {(2,2)}, {(1,2),(2,2)}, {(2,1),(2,2)}: got "
           + ", ".join(sorted(_s_label(R, S) for S in projective)))

    K44 = complete_bipartite(4, 4)
    left = enc([(0, 0), (0, 1), (0, 2), (1, 0)])
    right = enc([(1, 1), (1, 2), (2, 1), (2, 2)])
    pairs = [enc([(1, 1), (2, 2)]), enc([(1, 2), (2, 1)])]
    for S in pairs:
        G = _gamma(R, S)
        ctx.ok(all(G.has_edge(a, b) for a in left for b in right),
               f"explicit K4,4 between {{(0,0),(0,1),(0,2),(1,0)}} and the four units for S={_s_label(R, S)}")
    for S in pairs + [S for S in all_sets if len(S) >= 3]:
        try:
            model = find_subdivision(_gamma(R, S), K44, ctx.budget)
        except BudgetExceeded:
            ctx.undecided(f"K4,4 search for {_s_label(R, S)} ran out of budget")
            continue
        ctx.ok(model is not None, f"K4,4 found in Gamma(Z3xZ3,{_s_label(R, S)})")
    S_b3 = enc([(1, 1), (1, 2)])
    try:
        model = find_subdivision(_gamma(R, S_b3), obstruction("B3").graph, ctx.budget)
        ctx.ok(model is not None, "B3 homeomorph found in Gamma(Z3xZ3,{(1,1),(1,2)})")
        if model is not None:
            ctx.emit("gamma-Z3xZ3-S11-S12.B3.model", model.describe(_gamma(R, S_b3)) + "\n")
    except BudgetExceeded:
        ctx.undecided("B3 search ran out of budget")
    for a, b in (([(1, 1), (2, 1)], [(1, 1), (1, 2)]), ([(2, 1), (2, 2)], [(1, 2), (2, 2)])):
        ok = isomorphic(_gamma(R, enc(a)), _gamma(R, enc(b))) is not None
        ctx.ok(ok, f"Gamma(Z3xZ3,{_s_label(R, enc(a))}) is isomorphic to Gamma(Z3xZ3,{_s_label(R, enc(b))})")
    for name in ("gamma-Z3xZ3-S22.cert", "gamma-Z3xZ3-S12-S22.cert"):
        _check_golden(ctx, name)


def _check_golden(ctx: Context, name: str) -> None:
    cert = golden_certificate(name)
    G = _golden_graph(name)
    r = verify_certificate(G, cert)
    fig = GOLDEN[name][3]
    ctx.ok(bool(r) and cert.euler_genus == 1 and not cert.orientable,
           f"stored certificate {name} ({fig}) re-verifies as a projective embedding {r.reason}".rstrip())


def _verdicts(ctx: Context, members=None):
    if members is None and ctx.verdicts is not None:
        return ctx.verdicts
    v = cross_validate(ctx.config.universe(), ctx.budget, ctx.config.workers, members)
    if members is None:
        ctx.verdicts = v
    return v


def item_universe(ctx: Context) -> None:
    t = time.perf_counter()
    verdicts = _verdicts(ctx)
    dt = time.perf_counter() - t
    unknown = [v for v in verdicts if v.unknown]
    bad = [v for v in verdicts if not v.agreement and not v.unknown]
    for v in unknown:
        ctx.undecided(f"{v.ring} {v.family} S={v.S}: {v.witness}")
    for v in bad:
        ctx.ok(False, f"{v.ring} {v.family} S={v.S}: theory {v.theory}, computed {v.computed}")
    agree = sum(v.agreement for v in verdicts)
    ctx.ok(not bad and not unknown, f"{agree}/{len(verdicts)} members agree")
    ctx.ok(dt <= 1800, f"universe classified in {dt:.1f}s (limit 30 min)")
    for v in verdicts:
        if v.computed == PROJECTIVE:
            ctx.record(v.ring, v.family, v.S, 1)
    ctx.emit("universe.tsv", format_verdicts(verdicts, "tsv"))


def item_local_order8_9(ctx: Context) -> None:
    K44, K36 = complete_bipartite(4, 4), complete_bipartite(3, 6)
    exact_cache: dict[str, object] = {}
    for ring in ("Z8", "Z2[x]/(x^3)"):
        R = compile_ring(ring)
        local, m = is_local(R)
        ctx.ok(local and len(m) == 4, f"{ring} is local with |m| = {len(m) if m else None}")
        for S in inverse_closed_subsets(R):
            G = _gamma(R, S)
            label = _s_label(R, S)
            if not ctx.ok(isomorphic(G, K44) is not None, f"Gamma({ring},{label}) is K4,4"):
                continue
            key = G.fingerprint()
            if key not in exact_cache:
                exact_cache[key] = crosscap_exact(G, ctx.budget, use_formulas=False)
            r = exact_cache[key]
            if not r.exact:
                ctx.undecided(f"Gamma({ring},{label}): {r.render()}")
                continue
            ctx.ok(r.value == 2, f"Gamma({ring},{label}) has crosscap number {r.value}")
            ctx.record(ring, "gamma", label, r.value)
    for ring in ("Z9", "Z3[x]/(x^2)"):
        R = compile_ring(ring)
        for S in inverse_closed_subsets(R):
            label = _s_label(R, S)
            try:
                model = find_subdivision(_gamma(R, S), K36, ctx.budget)
            except BudgetExceeded:
                ctx.undecided(f"K3,6 search in Gamma({ring},{label}) ran out of budget")
                continue
            ctx.ok(model is not None, f"K3,6 homeomorph in Gamma({ring},{label}), so crosscap >= 2")


def _orbit_sets(R):
    seen, out = set(), []
    for u in sorted(R.units):
        if u not in seen:
            orb = frozenset({u, R.inverse[u]})
            seen |= orb
            out.append(orb)
    return out


def _edge_family(ctx: Context, ring: str, p_want: int, q_want: int, bound_want: int | None, all_s: bool) -> None:
    """Vertex and edge counts of Gamma(R, S) over S; q_want is the minimum over S."""
    R = compile_ring(ring)
    sets = inverse_closed_subsets(R) if all_s else _orbit_sets(R) + [R.units]
    qs = []
    for S in sets:
        G = _gamma(R, S)
        if not G.is_bipartite() or G.p != p_want:
            ctx.ok(False, f"Gamma({ring},{_s_label(R, S)}): p={G.p}, bipartite={G.is_bipartite()}")
            return
        qs.append(G.q)
    q_min = min(qs)
    ctx.ok(q_min == q_want and G.is_triangle_free(),
           f"{ring}: p={p_want}, bipartite, q >= {q_min} over {len(sets)} sets S (expected {q_want})")
    bound = crosscap_lower_bound_edges(p_want, q_min, 1, True)
    want = bound_want if bound_want is not None else 2
    cond = bound == want if bound_want is not None else bound >= 2
    ctx.ok(cond, f"{ring}: edge bound q/2 - p + 2 = {bound} (expected {'' if bound_want else '>= '}{want})")


def item_edge_counts(ctx: Context) -> None:
    ctx.note("products with Z2 (first family)")
    for T, pq, b in (("Z5", (10, 20), 2), ("Z7", (14, 42), 9), ("Z9", (18, 54), 11), ("Z3[x]/(x^2)", (18, 54), 11)):
        _edge_family(ctx, f"Z2 x {T}", *pq, b, all_s=True)
    ctx.note("products of a small local ring with Z4 or Z2[x]/(x^2)")
    for R1 in ("Z3", "Z4", "Z2[x]/(x^2)", "GF(4)"):
        for R2 in ("Z4", "Z2[x]/(x^2)"):
            n1 = compile_ring(R1)
            pq, b = ((12, 24), 2) if n1.order == 3 else (((16, 48), 10) if R1 == "GF(4)" else ((16, 32), 2))
            _edge_family(ctx, f"{R1} x {R2}", *pq, b, all_s=True)
    ctx.note("barred Gamma(Z3,{s}) tensored with K4")
    R3 = compile_ring("Z3 x GF(4)")
    for s in (1, 2):
        Z3 = compile_ring("Z3")
        T = tensor(build_gamma_bar(Z3, validate_S(Z3, None, [s])), complete_graph(4))
        regular = set(T.degrees()) == {6}
        direct = _gamma(R3, [R3.encode((s, 1))])
        iso = isomorphic(T, direct) is not None
        bound = crosscap_lower_bound_edges(T.p, T.q, 1, T.is_triangle_free())
        ctx.ok(regular and iso and bound >= 2,
               f"s={s}: 6-regular={regular}, isomorphic to Gamma(Z3 x GF(4),{{({s},-1)}})={iso}, "
               f"p={T.p}, q={T.q}, edge bound {bound}")
    ctx.note("Z2 x R1 x R2 with |R1|, |R2| in {3, 4}")
    small = ("Z3", "Z4", "Z2[x]/(x^2)", "GF(4)")
    for i, R1 in enumerate(small):
        for R2 in small[i:]:
            n = compile_ring(R1).order * compile_ring(R2).order
            p_want = 2 * n
            q_want = {9: 36, 12: 48, 16: 64}[n]
            R = compile_ring(f"Z2 x {R1} x {R2}")
            q_min = min(_gamma(R, S).q for S in _orbit_sets(R))
            bip = all(_gamma(R, S).is_bipartite() for S in _orbit_sets(R) + [R.units])
            exact = n == 9
            cond = (q_min == q_want) if exact else (q_min >= q_want)
            bound = crosscap_lower_bound_edges(p_want, q_want, 1, True)
            ctx.ok(cond and bip and R.order == p_want and bound >= 2,
                   f"Z2 x {R1} x {R2}: p={R.order}, min q={q_min} ({'=' if exact else '>='} {q_want}), "
                   f"bipartite={bip}, edge bound {bound}")


COMAXIMAL_PLANAR = ("Z2", "Z3", "Z4", "Z2[x]/(x^2)", "GF(4)", "Z2 x Z2", "Z2 x Z3", "Z2 x Z2 x Z2")
COMAXIMAL_PROJECTIVE = ("Z2 x Z4", "Z2 x Z2[x]/(x^2)", "Z5")


def item_comaximal(ctx: Context) -> None:
    members = [m for m in ctx.config.universe().members() if m.family == "comaximal"]
    verdicts = ctx.verdicts if ctx.verdicts is not None else _verdicts(ctx, members)
    verdicts = [v for v in verdicts if v.family == "comaximal"]
    canon = lambda ring: canonicalize(ring).factors
    planar_want = {canon(r) for r in COMAXIMAL_PLANAR}
    proj_want = {canon(r) for r in COMAXIMAL_PROJECTIVE}
    in_universe = {canon(v.ring) for v in verdicts}
    for v in verdicts:
        if v.unknown:
            ctx.undecided(f"C({v.ring}): {v.witness}")
    planar = {canon(v.ring) for v in verdicts if v.computed == PLANAR}
    proj = {canon(v.ring) for v in verdicts if v.computed == PROJECTIVE}
    ctx.ok(planar == planar_want & in_universe,
           f"planar co-maximal graphs: {len(planar)} rings, the 8-ring list restricted to the universe")
    ctx.ok(proj == proj_want, "projective co-maximal graphs: " + ", ".join(sorted(" x ".join(f) for f in proj)))
    for v in verdicts:
        if v.computed == PROJECTIVE:
            ctx.record(v.ring, "comaximal", "-", 1)

    K44 = complete_bipartite(4, 4)
    G = build_comaximal(compile_ring("Z2 x Z2 x Z2 x Z2"))
    try:
        model = find_subdivision(G, K44, ctx.budget)
        kind = "none" if model is None else ("subgraph" if model.is_subgraph_embedding() else "subdivision")
        ctx.ok(model is not None, f"K4,4 in C(Z2^4) found as a {kind}")
        if model is not None:
            ctx.emit("comaximal-Z2x4.K44.model", model.describe(G) + "\n")
    except BudgetExceeded:
        ctx.undecided("K4,4 search in C(Z2^4) ran out of budget")

    R = compile_ring("Z2 x Z2 x Z4")
    G = build_comaximal(R)
    left = [R.encode(t) for t in ((1, 1, 0), (1, 1, 1), (1, 1, 2), (1, 1, 3))]
    right = [R.encode(t) for t in ((0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 0, 3))]
    ctx.ok(all(G.has_edge(a, b) for a in left for b in right), "the listed K4,4 is a subgraph of C(Z2 x Z2 x Z4)")
    try:
        model = find_subdivision(G, K44, ctx.budget)
        ctx.ok(model is not None and model.is_subgraph_embedding(), "search finds K4,4 as a subgraph of C(Z2 x Z2 x Z4)")
    except BudgetExceeded:
        ctx.undecided("K4,4 search in C(Z2 x Z2 x Z4) ran out of budget")

    G = build_comaximal(compile_ring("Z2 x Z2 x Z3"))
    bound = crosscap_lower_bound_edges(G.p, G.q, 1, G.is_triangle_free())
    ctx.ok(G.q == 35 and bound >= 2, f"C(Z2 x Z2 x Z3) has {G.q} edges, edge bound {bound}")
    _check_golden(ctx, "comaximal-Z2xZ4.cert")


def _sweep_records(ctx: Context) -> None:
    """Exact crosscap numbers of small nonplanar ring graphs, for the audit."""
    budget = min(ctx.budget, 2 * 10**6)
    seen = set()
    universe = RingUniverse(max_order=min(ctx.config.max_order, 12), exhaustive_s_order=9)
    for m in universe.members():
        if m.family == "comaximal":
            continue
        R = compile_ring(m.ring)
        S = m.S if m.family == "gamma" else ([R.one] if m.family == "unit" else [int(R.neg[R.one])])
        G = _gamma(R, S)
        key = (m.ring, G.fingerprint())
        if key in seen:
            continue
        seen.add(key)
        r = crosscap_exact(G, budget)
        if r.exact and r.value > 0:
            ctx.record(m.ring, "gamma", _s_label(R, S), r.value)


def item_audit(ctx: Context) -> None:
    _sweep_records(ctx)
    report = size_bound_audit(ctx.records)
    ks = sorted({r.k for r in ctx.records})
    ctx.ok(report.checked > 0, f"{report.checked} exact results audited (k values {ks})")
    for v in report.violations:
        ctx.ok(False, v)
    ctx.ok(report.ok, f"{len(report.violations)} violations")


def item_properties(ctx: Context) -> None:
    for prop in PROPERTIES:
        t = time.perf_counter()
        n, err = run_property(prop, ctx.config.cases, ctx.config.seed)
        ctx.ok(err is None and n >= ctx.config.cases,
               f"{prop.name}: {n} cases ({time.perf_counter() - t:.1f}s)" + (f": {err}" if err else ""))


@dataclass(frozen=True)
class Item:
    key: str
    section: str
    title: str
    run: Callable[[Context], None]


ITEMS: tuple[Item, ...] = (
    Item("c1", "formulas", "complete graph crosscap formulas agree with search", item_formulas),
    Item("c2", "formulas", "K4,4 needs exactly two crosscaps", item_k44),
    Item("c3", "formulas", "K7 needs exactly three crosscaps (slow)", item_k7),
    Item("c4", "gamma", "fields Z5 and Z7", item_z5_z7),
    Item("c5", "gamma", "all S over Z3 x Z3", item_z3xz3),
    Item("c6", "gamma", "theory and computation agree on the ring universe", item_universe),
    Item("c7", "gamma", "local rings of order 8 and 9", item_local_order8_9),
    Item("c8", "gamma", "edge counts and edge bounds of the non-local cases", item_edge_counts),
    Item("c9", "comaximal", "co-maximal graphs", item_comaximal),
    Item("c10", "audit", "size bounds on every exact crosscap result", item_audit),
    Item("c11", "properties", "randomized property suites", item_properties),
)

#: named sections with numeric aliases following the order of the source text
SECTIONS = {
    "formulas": ("formulas",),
    "gamma": ("gamma",),
    "comaximal": ("comaximal",),
    "audit": ("audit",),
    "properties": ("properties",),
    "2": ("formulas", "properties"),
    "3": ("audit",),
    "4": ("gamma",),
    "5": ("comaximal",),
}


def _selected(config: RunConfig) -> list[Item]:
    items = list(ITEMS)
    if config.sections:
        wanted = set()
        for s in config.sections:
            if s not in SECTIONS:
                raise ValueError(f"unknown section {s!r}; choose from {', '.join(SECTIONS)}")
            wanted.update(SECTIONS[s])
        items = [it for it in items if it.section in wanted]
    if config.items:
        keys = {k.lower() for k in config.items}
        unknown = keys - {it.key for it in ITEMS}
        if unknown:
            raise ValueError(f"unknown items: {', '.join(sorted(unknown))}")
        items = [it for it in items if it.key in keys]
    return items


def _run_item(item: Item, ctx: Context) -> ItemResult:
    t = time.perf_counter()
    try:
        item.run(ctx)
    except Exception as exc:  # a crash is a failure, never a silent pass
        ctx.ok(False, f"{type(exc).__name__}: {exc}")
    return ItemResult(item.key, item.section, item.title, ctx.status(), list(ctx.details),
                      time.perf_counter() - t)


def _pool_job(args):
    key, config = args
    item = next(it for it in ITEMS if it.key == key)
    ctx = Context(config)
    res = _run_item(item, ctx)
    return res, ctx.records, ctx.emitted, ctx.verdicts


def run_suite(config: RunConfig, progress: Callable[[ItemResult], None] | None = None) -> list[ItemResult]:
    """Run the selected items; results come back in canonical item order."""
    items = _selected(config)
    shared = Context(config)
    results: dict[str, ItemResult] = {}
    late = [it for it in items if it.key == "c10"]
    early = [it for it in items if it.key != "c10"]
    if config.workers > 1 and len(early) > 1:
        from dataclasses import replace

        inner = replace(config, workers=1)
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for res, records, emitted, _ in pool.map(_pool_job, [(it.key, inner) for it in early]):
                results[res.key] = res
                shared.records += records
                shared.emitted += emitted
                if progress:
                    progress(res)
    else:
        for it in early:
            ctx = Context(config)
            ctx.verdicts = shared.verdicts
            res = _run_item(it, ctx)
            shared.records += ctx.records
            shared.emitted += ctx.emitted
            shared.verdicts = ctx.verdicts
            results[res.key] = res
            if progress:
                progress(res)
    for it in late:
        ctx = Context(config)
        ctx.records = list(shared.records)
        res = _run_item(it, ctx)
        shared.emitted += ctx.emitted
        results[res.key] = res
        if progress:
            progress(res)
    ordered = [results[it.key] for it in items]
    certs = [p for p in shared.emitted if p.suffix == ".cert"]
    if certs:
        t = time.perf_counter()
        fresh = verify_files_fresh(certs)
        bad = [f"{p}: {why}" for p, ok, why in fresh if not ok]
        status = Status.FAIL if bad else Status.PASS
        ordered.append(ItemResult("cert", "witnesses", f"{len(certs)} emitted certificates re-verify in a fresh process",
                                  status, ["FAIL  " + b for b in bad], time.perf_counter() - t))
    return ordered


def exit_code(results: list[ItemResult]) -> int:
    statuses = {r.status for r in results}
    if Status.FAIL in statuses:
        return 1
    if Status.UNKNOWN in statuses:
        return 2
    return 0


def format_results(results: list[ItemResult], fmt: str = "text", verbose: bool = False) -> str:
    if fmt == "tsv":
        return "\n".join(["item\tsection\tstatus\tseconds\ttitle"] + [r.tsv() for r in results]) + "\n"
    lines = []
    for r in results:
        lines.append(r.line())
        if verbose or r.status in (Status.FAIL, Status.UNKNOWN):
            lines += ["        " + d for d in r.details]
    counts = {s: sum(r.status is s for r in results) for s in Status}
    lines.append(" ".join(f"{s.value}={n}" for s, n in counts.items()))
    return "\n".join(lines) + "\n"
