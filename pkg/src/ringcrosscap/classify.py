"""Classification predicates for planar and projective ring graphs, and their
cross-validation against the search engine."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .embedding import EmbeddingCertificate, Orientability, SearchStatus, search_embedding
from .graphs import (
    Graph,
    build_comaximal,
    build_gamma,
    build_unit_graph,
    build_unitary_cayley,
)
from .obstructions import NONPROJECTIVE, detect_obstruction, identify
from .rings import LOCAL_CATALOG, FiniteRing, compile_ring, inverse_closed_subsets, validate_S
from .subdivision import SubdivisionModel
from .topology import planarity, union_certificate

__all__ = [
    "NonCanonicalSpec",
    "CanonicalForm",
    "canonicalize",
    "theory_planar_gamma",
    "theory_projective_gamma",
    "theory_gamma_class",
    "theory_unit_unitary",
    "theory_comaximal",
    "ComputedClass",
    "compute_class",
    "AuditRecord",
    "AuditReport",
    "size_bound_audit",
    "RingUniverse",
    "UniverseMember",
    "ClassificationVerdict",
    "classify_member",
    "cross_validate",
    "format_verdicts",
    "FAMILIES",
]

FAMILIES = ("gamma", "unit", "cayley", "comaximal")
PLANAR, PROJECTIVE, NEITHER, UNKNOWN = "planar", "projective", "neither", "unknown"


class NonCanonicalSpec(ValueError):
    """The ring is not a product of recognised catalog local rings."""


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

_CATALOG_KEYS = tuple(LOCAL_CATALOG)


@lru_cache(maxsize=None)
def _catalog_ring(key: str) -> FiniteRing:
    return compile_ring(LOCAL_CATALOG[key])


def _closure_from(add_one, times_g, zero: int, size: int):
    """Elements reachable from 0 by ``a -> a + 1`` and ``a -> a * g``; BFS order with parents."""
    order = [zero]
    parent = {zero: None}
    i = 0
    while i < len(order):
        a = order[i]
        i += 1
        for op, b in (("+", add_one(a)), ("*", times_g(a))):
            if b not in parent:
                parent[b] = (a, op)
                order.append(b)
        if len(order) == size:
            break
    return order, parent


@lru_cache(maxsize=None)
def _catalog_generator(key: str):
    """A single ring generator of a catalog ring with its BFS construction."""
    C = _catalog_ring(key)
    for g in range(C.order):
        order, parent = _closure_from(lambda a: int(C.add[a, C.one]), lambda a: int(C.mul[a, g]), 0, C.order)
        if len(order) == C.order:
            return g, tuple(order), parent
    raise AssertionError(f"catalog ring {key} is not generated by one element")  # pragma: no cover


def _match_factor(add, mul, elems: list[int], unit: int, key: str) -> dict[int, int] | None:
    """Ring isomorphism catalog ring ``key`` -> factor (as dict of codes) or None."""
    C = _catalog_ring(key)
    if C.order != len(elems):
        return None
    g, order, parent = _catalog_generator(key)
    zero = int(mul[unit, 0])
    for image in elems:
        phi = {0: zero}
        ok = True
        for b in order[1:]:
            a, op = parent[b]
            val = int(add[phi[a], unit]) if op == "+" else int(mul[phi[a], image])
            phi[b] = val
        if len(set(phi.values())) != C.order:
            continue
        for x in range(C.order):
            for y in range(C.order):
                if phi[int(C.add[x, y])] != add[phi[x], phi[y]] or phi[int(C.mul[x, y])] != mul[phi[x], phi[y]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return phi
    return None


@dataclass(frozen=True)
class CanonicalForm:
    """R identified with a product of catalog local rings (factors sorted)."""

    factors: tuple[str, ...]
    coords: tuple[tuple[int, ...], ...]  # element code of R -> catalog codes per factor

    @property
    def spec(self) -> str:
        return " x ".join(self.factors)

    @property
    def order(self) -> int:
        return len(self.coords)

    def element(self, x: int) -> tuple[int, ...]:
        return self.coords[x]

    def subset(self, S) -> frozenset[tuple[int, ...]]:
        return frozenset(self.coords[s] for s in S)

    def ones(self) -> tuple[int, ...]:
        return tuple(_catalog_ring(k).one for k in self.factors)

    def count(self, key: str) -> int:
        return sum(1 for f in self.factors if f == key)


def _factor_key(key: str):
    return (_catalog_ring(key).order, _CATALOG_KEYS.index(key))


@lru_cache(maxsize=256)
def _canonicalize_cached(R: FiniteRing) -> CanonicalForm:
    add, mul = R.add, R.mul
    n = R.order
    idem = [e for e in range(n) if mul[e, e] == e]
    primitive = [e for e in idem if e != 0 and all(mul[e, f] in (0, e) for f in idem)]
    found = []
    for e in primitive:
        elems = sorted({int(mul[e, x]) for x in range(n)})
        match = None
        for key in _CATALOG_KEYS:
            phi = _match_factor(add, mul, elems, e, key)
            if phi is not None:
                match = (key, e, {v: k for k, v in phi.items()})
                break
        if match is None:
            raise NonCanonicalSpec(f"local factor of order {len(elems)} of {R} is not in the catalog")
        found.append(match)
    found.sort(key=lambda m: (_factor_key(m[0]), m[1]))
    coords = tuple(tuple(inv[int(mul[e, x])] for _, e, inv in found) for x in range(n))
    return CanonicalForm(tuple(m[0] for m in found), coords)


def canonicalize(R: FiniteRing | str) -> CanonicalForm:
    if isinstance(R, str):
        R = compile_ring(R)
    return _canonicalize_cached(R)


# ---------------------------------------------------------------------------
# theory predicates
# ---------------------------------------------------------------------------

_T_PLANAR = {"Z3", "Z4", "Z2[x]/(x^2)"}
_Z33_PLANAR = ({(1, 1)}, {(1, 2)}, {(2, 1)})
# closed under swapping the two factors, the only nontrivial automorphism
_Z33_PROJECTIVE = ({(2, 2)}, {(1, 2), (2, 2)}, {(2, 1), (2, 2)})

_COMAXIMAL_PLANAR = {
    ("Z2",), ("Z3",), ("Z4",), ("Z2[x]/(x^2)",), ("GF(4)",),
    ("Z2", "Z2"), ("Z2", "Z3"), ("Z2", "Z2", "Z2"),
}
_COMAXIMAL_PROJECTIVE = {("Z2", "Z4"), ("Z2", "Z2[x]/(x^2)"), ("Z5",)}


def _canon_S(R, S) -> tuple[CanonicalForm, frozenset]:
    cf = canonicalize(R)
    if S is None:
        return cf, None
    S = list(S)
    if S and isinstance(S[0], tuple):
        return cf, frozenset(S)
    if isinstance(R, str):
        R = compile_ring(R)
    return cf, cf.subset(S)


def theory_planar_gamma(R, S) -> bool:
    """Planarity of Gamma(R, S) as predicted by the planar classification."""
    cf, S = _canon_S(R, S)
    ell = cf.count("Z2")
    rest = tuple(f for f in cf.factors if f != "Z2")
    if not rest or (len(rest) == 1 and rest[0] in _T_PLANAR):
        return True
    if cf.factors == ("GF(4)",):
        return True
    if ell > 0 and rest == ("GF(4)",) and S == {cf.ones()}:
        return True
    if cf.factors == ("Z5",) and S == {(1,)}:
        return True
    if cf.factors == ("Z3", "Z3") and S in _Z33_PLANAR:
        return True
    return False


def theory_projective_gamma(R, S) -> bool:
    """Crosscap number one for Gamma(R, S) as predicted by the classification."""
    cf, S = _canon_S(R, S)
    if cf.factors == ("Z5",):
        return S != {(1,)}
    if cf.factors == ("Z3", "Z3"):
        return S in _Z33_PROJECTIVE
    return False


def theory_gamma_class(R, S) -> str:
    if theory_planar_gamma(R, S):
        return PLANAR
    return PROJECTIVE if theory_projective_gamma(R, S) else NEITHER


@dataclass(frozen=True)
class UnitUnitary:
    unit_graph_projective: bool
    unitary_cayley_projective: bool
    gamma_units_projective: bool


def theory_unit_unitary(R) -> UnitUnitary:
    cf = canonicalize(R)
    return UnitUnitary(
        False,
        cf.factors in (("Z5",), ("Z3", "Z3")),
        cf.factors == ("Z5",),
    )


def theory_comaximal(R) -> str:
    cf = canonicalize(R)
    if cf.factors in _COMAXIMAL_PLANAR:
        return PLANAR
    if cf.factors in _COMAXIMAL_PROJECTIVE:
        return PROJECTIVE
    return NEITHER


# ---------------------------------------------------------------------------
# computed class
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComputedClass:
    cls: str
    certificate: EmbeddingCertificate | None = None
    obstruction: tuple[str, SubdivisionModel] | None = None
    note: str = ""

    def witness_text(self) -> str:
        if self.certificate is not None:
            kind = "planar" if self.certificate.euler_genus == 0 else "projective"
            return f"{kind} certificate"
        if self.obstruction is not None:
            if self.note.endswith("(isomorphic)"):
                return self.note
            return f"{self.obstruction[0]} homeomorph"
        return self.note


QUICK_BUDGET = 100_000


def compute_class(G: Graph, budget: int = 10**7) -> ComputedClass:
    """Planar / projective / neither from the search engine, with a witness."""
    if G.has_loops():
        G = G.without_loops()
    pl = planarity(G, budget)
    if pl.unknown:
        return ComputedClass(UNKNOWN, note="planarity undecided within budget")
    if pl.planar:
        return ComputedClass(PLANAR, certificate=pl.certificate)
    parts, bad = [], []
    for comp in G.components():
        H = G.induced(comp)
        r = search_embedding(H, 0, Orientability.ORIENTABLE, budget)
        if r.status is SearchStatus.BUDGET_EXCEEDED:
            return ComputedClass(UNKNOWN, note="component planarity undecided")
        if r.found:
            parts.append((comp, r.certificate))
        else:
            bad.append((comp, H))
    if len(bad) > 1:
        return ComputedClass(NEITHER, note=f"{len(bad)} nonplanar components")
    comp, H = bad[0]
    # cheap attempts first: a short search, then a named non-projective homeomorph
    r = search_embedding(H, 1, Orientability.NONORIENTABLE, min(budget, QUICK_BUDGET))
    if r.status is SearchStatus.BUDGET_EXCEEDED:
        det = detect_obstruction(H, NONPROJECTIVE, min(budget, QUICK_BUDGET))
        if det.found:
            model = det.model.relabeled(comp) if len(comp) < G.p else det.model
            return ComputedClass(NEITHER, obstruction=(det.name, model))
        r = search_embedding(H, 1, Orientability.NONORIENTABLE, budget)
    if r.found:
        cert = union_certificate(G, parts + [(comp, r.certificate)])
        return ComputedClass(PROJECTIVE, certificate=cert)
    if r.status is SearchStatus.BUDGET_EXCEEDED:
        return ComputedClass(UNKNOWN, note="projective search exceeded budget")
    note = r.reason if r.reason.startswith("face bound") else "projective plane refuted by exhaustive search"
    named = identify(H, NONPROJECTIVE)
    if named is not None:
        model = named[1].relabeled(comp) if len(comp) < G.p else named[1]
        return ComputedClass(NEITHER, obstruction=(named[0], model), note=f"{named[0]} (isomorphic)")
    return ComputedClass(NEITHER, note=note)


# ---------------------------------------------------------------------------
# size-bound audit
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditRecord:
    ring: str
    family: str
    S: str
    k: int


@dataclass
class AuditReport:
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def size_bound_audit(records) -> AuditReport:
    """Check order and unit/radical bounds for every exact crosscap value k > 0.

    Every family gets ``|R| <= 32k``.  The size dichotomy and the unit and
    radical bounds for k = 1 are checked on the Gamma families only.
    """
    report = AuditReport()
    for rec in records:
        if rec.k <= 0:
            continue
        report.checked += 1
        R = compile_ring(rec.ring)
        n = R.order
        tag = f"{rec.ring} [{rec.family} S={rec.S}] k={rec.k}"
        if n > 32 * rec.k:
            report.violations.append(f"{tag}: |R|={n} > 32k")
        if rec.family == "comaximal":
            continue
        ell_max = canonicalize(R).count("Z2")
        dichotomy = n <= 6 * rec.k - 12 or any(
            n // 2**ell <= 16 and 2 ** (ell - 1) <= rec.k for ell in range(ell_max + 1)
        )
        if not dichotomy:
            report.violations.append(f"{tag}: size dichotomy fails")
        if rec.k == 1:
            if len(R.units) > 6:
                report.violations.append(f"{tag}: |U(R)|={len(R.units)} > 6")
            if len(R.jacobson) > 3:
                report.violations.append(f"{tag}: |J(R)|={len(R.jacobson)} > 3")
    return report


# ---------------------------------------------------------------------------
# universe and cross-validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniverseMember:
    ring: str
    family: str
    S: tuple[int, ...] | None  # element codes, None for families with a fixed S

    def key(self):
        return (self.ring, FAMILIES.index(self.family), self.S or ())


@dataclass(frozen=True)
class RingUniverse:
    catalog: tuple[str, ...] = _CATALOG_KEYS
    max_order: int = 18
    max_factors: int = 4
    families: tuple[str, ...] = FAMILIES
    s_families: tuple[str, ...] = ("one", "minus-one", "units")
    exhaustive_s_order: int = 9

    def rings(self) -> list[str]:
        keys = sorted(self.catalog, key=_factor_key)
        out = []
        for r in range(1, self.max_factors + 1):
            for combo in itertools.combinations_with_replacement(keys, r):
                order = math.prod(_catalog_ring(k).order for k in combo)
                if order <= self.max_order:
                    out.append(" x ".join(str(LOCAL_CATALOG[k]) for k in combo))
        return sorted(out)

    def s_sets(self, R: FiniteRing) -> list[tuple[int, ...]]:
        sets = []
        if "one" in self.s_families:
            sets.append(frozenset({R.one}))
        if "minus-one" in self.s_families:
            sets.append(frozenset({int(R.neg[R.one])}))
        if "units" in self.s_families:
            sets.append(frozenset(R.units))
        if R.order <= self.exhaustive_s_order:
            sets.extend(inverse_closed_subsets(R))
        out = []
        for s in sets:
            t = tuple(sorted(s))
            if t not in out:
                out.append(t)
        return out

    def members(self) -> list[UniverseMember]:
        out = []
        for ring in self.rings():
            R = compile_ring(ring)
            for fam in self.families:
                if fam == "gamma":
                    out.extend(UniverseMember(ring, fam, s) for s in self.s_sets(R))
                else:
                    out.append(UniverseMember(ring, fam, None))
        return sorted(out, key=UniverseMember.key)


@dataclass(frozen=True)
class ClassificationVerdict:
    ring: str
    family: str
    S: str
    theory: str
    theory_basis: str
    computed: str
    witness: str
    agreement: bool
    computed_detail: ComputedClass | None = field(default=None, compare=False)

    @property
    def unknown(self) -> bool:
        return self.computed == UNKNOWN

    def tsv(self, witness_path: str = "") -> str:
        return "\t".join([self.ring, self.family, self.S, self.theory, self.computed,
                          witness_path or self.witness, "yes" if self.agreement else "no"])


def member_graph(member: UniverseMember) -> tuple[FiniteRing, Graph]:
    R = compile_ring(member.ring)
    if member.family == "gamma":
        G = build_gamma(R, validate_S(R, None, member.S))
    elif member.family == "unit":
        G = build_unit_graph(R)
    elif member.family == "cayley":
        G = build_unitary_cayley(R)
    elif member.family == "comaximal":
        G = build_comaximal(R)
    else:
        raise ValueError(f"unknown family {member.family!r}")
    return R, G


def _theory_for(R: FiniteRing, member: UniverseMember) -> tuple[str, str]:
    if member.family == "comaximal":
        return theory_comaximal(R), "comaximal planar and projective lists"
    if member.family == "unit":
        S = [R.one]
    elif member.family == "cayley":
        S = [int(R.neg[R.one])]
    else:
        S = member.S
    cls = theory_gamma_class(R, S)
    if member.family == "unit" and cls == PROJECTIVE:  # pragma: no cover
        raise AssertionError("unit graphs are never projective")
    basis = "planar classification" if cls == PLANAR else "projective classification"
    return cls, basis


def _s_text(R: FiniteRing, member: UniverseMember) -> str:
    if member.family == "unit":
        return "{1}"
    if member.family == "cayley":
        return "{-1}"
    if member.family == "comaximal":
        return "-"
    return "{" + ",".join(R.format_element(s) for s in member.S) + "}"


def classify_member(member: UniverseMember, budget: int = 10**7) -> ClassificationVerdict:
    R, G = member_graph(member)
    theory, basis = _theory_for(R, member)
    computed = compute_class(G, budget)
    return ClassificationVerdict(
        member.ring,
        member.family,
        _s_text(R, member),
        theory,
        basis,
        computed.cls,
        computed.witness_text(),
        computed.cls == theory,
        computed,
    )


def _classify_job(args):
    member, budget = args
    return classify_member(member, budget)


def cross_validate(universe: RingUniverse | None = None, budget: int = 10**7, workers: int = 1,
                   members=None) -> list[ClassificationVerdict]:
    """Classify every universe member by theory and by computation.

    The result is sorted canonically, independent of ``workers``.
    """
    universe = universe or RingUniverse()
    members = sorted(members if members is not None else universe.members(), key=UniverseMember.key)
    jobs = [(m, budget) for m in members]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(_classify_job, jobs, chunksize=4))
    else:
        verdicts = [_classify_job(j) for j in jobs]
    return verdicts


def format_verdicts(verdicts, fmt: str = "text") -> str:
    if fmt == "tsv":
        header = "ring\tfamily\tS\ttheory\tcomputed\twitness\tagreement"
        return "\n".join([header] + [v.tsv() for v in verdicts]) + "\n"
    lines = []
    for v in verdicts:
        mark = "agree" if v.agreement else ("UNKNOWN" if v.unknown else "DISAGREE")
        lines.append(f"{mark:8} {v.ring:28} {v.family:9} S={v.S:30} theory={v.theory:10} "
                     f"computed={v.computed:10} [{v.witness}]")
    n_agree = sum(v.agreement for v in verdicts)
    lines.append(f"{n_agree}/{len(verdicts)} agree, {sum(v.unknown for v in verdicts)} unknown")
    return "\n".join(lines) + "\n"
