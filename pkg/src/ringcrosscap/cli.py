"""Command-line entry point.

Exit codes: 0 when every verdict passes, 1 on any failure (including bad
input), 2 when something is undecided within budget but nothing failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness
from .classify import (
    FAMILIES,
    RingUniverse,
    UniverseMember,
    canonicalize,
    classify_member,
    cross_validate,
    format_verdicts,
)
from .graphs import (
    Graph,
    build_comaximal,
    build_gamma,
    build_gamma_bar,
    build_unit_graph,
    build_unitary_cayley,
    disjoint_copies,
    parse_edge_list,
    structure_report,
)
from .obstructions import CATALOG_ORDER, UnknownName, catalog, detect_obstruction, obstruction
from .rings import RingError, compile_ring, index2_maximal_ideals, is_local, subgroup_closure, validate_S
from .topology import crosscap_exact

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with 2, which means "unknown" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAIL, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def split_elements(text: str) -> list[str]:
    """Split ``"(1,2), (2,2)"`` or ``"1 4"`` at top-level commas and spaces."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and (ch == "," or ch.isspace() or ch == ";"):
            if cur.strip():
                out.append(cur.strip())
            cur = ""
            continue
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def _elements(R, text: str | None) -> list[int] | None:
    if text is None:
        return None
    return [R.parse_element(t) for t in split_elements(text.strip("{} "))]


def graph_from_args(args) -> tuple[Graph, str]:
    """Build the graph named by --file, --named or --ring/--family/--S/--G."""
    if getattr(args, "file", None):
        G = parse_edge_list(Path(args.file).read_text())
        name = Path(args.file).name
    elif getattr(args, "named", None):
        entry = obstruction(args.named)
        G, name = entry.graph, entry.name
    elif getattr(args, "ring", None):
        R = compile_ring(args.ring)
        family = args.family
        if family in ("gamma", "gamma-bar"):
            S = _elements(R, args.S)
            if S is None:
                raise UsageError("--S is required for the gamma family")
            Gset = _elements(R, args.G)
            if Gset is not None:
                Gset = subgroup_closure(R, Gset)
            data = validate_S(R, Gset, S)
            G = build_gamma(R, data) if family == "gamma" else build_gamma_bar(R, data)
            name = f"{family}({R}, S={{{args.S}}})"
        elif family == "unit":
            G, name = build_unit_graph(R), f"unit({R})"
        elif family == "cayley":
            G, name = build_unitary_cayley(R), f"cayley({R})"
        elif family == "comaximal":
            G, name = build_comaximal(R), f"comaximal({R})"
        else:
            raise UsageError(f"unknown family {family!r}")
    else:
        raise UsageError("give a graph with --file, --named or --ring")
    copies = getattr(args, "copies", 1) or 1
    if copies > 1:
        G, name = disjoint_copies(G, copies), f"{copies} x {name}"
    return G, name


def _out_path(args, name: str) -> Path | None:
    if not args.out:
        return None
    path = Path(args.out) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _slug(text: str) -> str:
    return harness._slug(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_ring(args) -> int:
    R = compile_ring(args.spec)
    local, m = is_local(R)
    J = R.jacobson
    ideals = index2_maximal_ideals(R)
    try:
        canon = canonicalize(R).spec
    except Exception:  # canonical form only exists for products of catalog rings
        canon = "outside the local catalog"
    rows = [
        ("ring", str(R)),
        ("order", str(R.order)),
        ("units", str(len(R.units))),
        ("jacobson", str(len(J))),
        ("local", "yes" if local else "no"),
        ("maximal-ideal", str(len(m)) if local else "-"),
        ("index2-maximal-ideals", str(len(ideals))),
        ("canonical", canon),
    ]
    if args.format == "tsv":
        print("\n".join(f"{k}\t{v}" for k, v in rows))
    else:
        width = max(len(k) for k, _ in rows)
        print("\n".join(f"{k:<{width}}  {v}" for k, v in rows))
        if args.verbose:
            print("units:    " + " ".join(R.format_element(u) for u in sorted(R.units)))
            print("jacobson: " + " ".join(R.format_element(j) for j in sorted(J)))
    return EXIT_OK


def cmd_graph(args) -> int:
    G, name = graph_from_args(args)
    if args.format == "dot":
        text = G.to_dot(_slug(name) or "G")
    elif args.format == "tsv":
        text = G.to_edge_list()
    else:
        rep = structure_report(G)
        text = (
            f"graph {name}\n"
            f"vertices {rep.p}\nedges {rep.q}\ncomponents {rep.components}\n"
            f"min-degree {rep.min_degree}\ndegree-sequence {' '.join(map(str, rep.degree_sequence))}\n"
            f"bipartite {'yes' if rep.bipartite else 'no'}\n"
            f"triangle-free {'yes' if rep.triangle_free else 'no'}\n"
            f"fingerprint {G.fingerprint()}\n"
        )
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    path = _out_path(args, f"{_slug(name)}.{'dot' if args.format == 'dot' else 'edges'}")
    if path:
        path.write_text(G.to_dot(_slug(name) or "G") if args.format == "dot" else G.to_edge_list())
    return EXIT_OK


def _verdict_code(verdicts) -> int:
    if any(not v.agreement and not v.unknown for v in verdicts):
        return EXIT_FAIL
    if any(v.unknown for v in verdicts):
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.universe:
        universe = RingUniverse(max_order=args.max_order)
        members = [m for m in universe.members() if args.family is None or m.family == args.family]
        verdicts = cross_validate(universe, args.budget, args.workers, members)
        fmt = "tsv" if args.format == "tsv" else "text"
        text = format_verdicts(verdicts, fmt)
        sys.stdout.write(text)
        path = _out_path(args, "classification.tsv")
        if path:
            path.write_text(format_verdicts(verdicts, "tsv"))
        return _verdict_code(verdicts)
    if not args.ring:
        raise UsageError("classify needs --ring (or --universe)")
    family = args.family or "gamma"
    R = compile_ring(args.ring)
    S = None
    if family == "gamma":
        if args.S is None:
            raise UsageError("--S is required for the gamma family")
        S = tuple(sorted(set(_elements(R, args.S))))
        validate_S(R, None, S)
    v = classify_member(UniverseMember(str(R), family, S), args.budget)
    detail = v.computed_detail
    witness_path = ""
    if detail is not None and args.out:
        stem = _slug(f"{family}-{R}-{v.S}")
        if detail.certificate is not None:
            path = _out_path(args, stem + ".cert")
            path.write_text(detail.certificate.to_text())
            witness_path = str(path)
        elif detail.obstruction is not None:
            _, G = _member_graph(R, family, S)
            path = _out_path(args, stem + f".{detail.obstruction[0]}.model")
            path.write_text(detail.obstruction[1].describe(G) + "\n")
            witness_path = str(path)
    if args.format == "tsv":
        print("ring\tfamily\tS\ttheory\tcomputed\twitness\tagreement")
        print(v.tsv(witness_path))
    else:
        print(f"ring      {v.ring}\nfamily    {v.family}\nS         {v.S}")
        print(f"theory    {v.theory} ({v.theory_basis})")
        print(f"computed  {v.computed} [{v.witness}]")
        if witness_path:
            print(f"witness   {witness_path}")
        print(f"agreement {'yes' if v.agreement else ('unknown' if v.unknown else 'NO')}")
    return _verdict_code([v])


def _member_graph(R, family, S):
    from .classify import member_graph

    return member_graph(UniverseMember(str(R), family, S))


def cmd_crosscap(args) -> int:
    G, name = graph_from_args(args)
    r = crosscap_exact(G, args.budget, use_formulas=not args.no_formulas)
    lines = [f"graph {name}: {G.p} vertices, {G.q} edges", r.render()]
    if r.obstruction is not None:
        lines.append(f"obstruction {r.obstruction[0]}")
    for i, c in enumerate(r.components):
        lines.append(f"  component {i}: {c.render()}; orientable genus {c.orientable_genus}")
    if args.format == "tsv":
        up = r.upper.value if r.upper else ""
        print("graph\tp\tq\tlower\tupper\texact")
        print(f"{name}\t{G.p}\t{G.q}\t{r.lower.value}\t{up}\t{'yes' if r.exact else 'no'}")
    else:
        print("\n".join(lines))
    if args.out:
        stem = _slug(name)
        if r.certificate is not None:
            _out_path(args, stem + ".cert").write_text(r.certificate.to_text())
        if r.obstruction is not None:
            _out_path(args, f"{stem}.{r.obstruction[0]}.model").write_text(r.obstruction[1].describe(G) + "\n")
    return EXIT_OK if r.exact else EXIT_UNKNOWN


def cmd_obstruction(args) -> int:
    if args.name in (None, "list"):
        for entry in catalog():
            print(f"{entry.name}\t{entry.graph.p}\t{entry.graph.q}\t{entry.provenance}")
        return EXIT_OK
    entry = obstruction(args.name)
    if args.ring or args.file:
        G, name = graph_from_args(args)
        det = detect_obstruction(G, [entry.name], args.budget)
        if det.found:
            kind = "subgraph" if det.model.is_subgraph_embedding() else "subdivision"
            print(f"{entry.name} found in {name} as a {kind}")
            print(det.model.describe(G))
            path = _out_path(args, f"{_slug(name)}.{entry.name}.model")
            if path:
                path.write_text(det.model.describe(G) + "\n")
            return EXIT_OK
        if det.status.value == "absent":
            print(f"no {entry.name} homeomorph in {name}")
            return EXIT_OK
        print(f"{entry.name} search in {name} ran out of budget")
        return EXIT_UNKNOWN
    G = entry.graph
    if args.format == "dot":
        print(G.to_dot(entry.name), end="")
    elif args.format == "tsv":
        print(G.to_edge_list(), end="")
    else:
        print(f"{entry.name}: {G.p} vertices, {G.q} edges ({entry.provenance})")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    config = harness.RunConfig(
        budget=args.budget,
        workers=args.workers,
        out=Path(args.out) if args.out else None,
        include_slow=args.include_slow,
        sections=tuple(args.section) if args.section else None,
        items=tuple(args.item) if args.item else None,
        cases=args.cases,
        seed=args.seed,
        max_order=args.max_order,
        verbosity=args.verbose,
    )
    fmt = "tsv" if args.format == "tsv" else "text"
    stream = fmt == "text"

    def progress(res):
        if stream:
            print(res.line(), flush=True)
            if args.verbose or res.status in (harness.Status.FAIL, harness.Status.UNKNOWN):
                for d in res.details:
                    print("        " + d, flush=True)

    results = harness.run_suite(config, progress)
    if stream:
        cert = [r for r in results if r.key == "cert"]
        for r in cert:
            progress(r)
        counts = {s: sum(r.status is s for r in results) for s in harness.Status}
        print(" ".join(f"{s.value}={n}" for s, n in counts.items()))
    else:
        sys.stdout.write(harness.format_results(results, "tsv"))
    if config.out:
        config.out.mkdir(parents=True, exist_ok=True)
        (config.out / "verify-paper.txt").write_text(harness.format_results(results, "text", verbose=True))
        (config.out / "verify-paper.tsv").write_text(harness.format_results(results, "tsv"))
    return harness.exit_code(results)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_graph_source(p):
    p.add_argument("--ring", help='ring spec, e.g. "Z3 x Z3"')
    p.add_argument("--family", choices=list(FAMILIES) + ["gamma-bar"], default="gamma")
    p.add_argument("--S", help='elements of S, e.g. "(1,2),(2,2)" or "1 4"')
    p.add_argument("--G", help="generators of the subgroup G (default: all units)")
    p.add_argument("--file", help="edge-list file")
    p.add_argument("--named", help="catalog graph: " + ", ".join(CATALOG_ORDER))
    p.add_argument("--copies", type=int, default=1, help="disjoint copies of the graph")


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    # subcommands accept the global flags too, but must not reset values given earlier
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=d(10**7), help="search node budget (default 10^7)")
    common.add_argument("--workers", type=int, default=d(1), help="worker processes (default 1)")
    common.add_argument("--out", default=d(None), help="directory for certificates, models and reports")
    common.add_argument("--format", choices=("text", "tsv", "dot"), default=d("text"))
    common.add_argument("-v", "--verbose", action="count", default=d(0))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(False)
    parser = _Parser(prog="ringcrosscap", parents=[_global_flags(True)],
                     description="Crosscap numbers and projectivity of graphs built from finite rings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ring", parents=[common], help="order, units, radical and locality of a ring")
    p.add_argument("spec")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("graph", parents=[common], help="build a graph and print its structure")
    _add_graph_source(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("classify", parents=[common], help="planar / projective / neither, theory vs computation")
    p.add_argument("--ring")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--S")
    p.add_argument("--universe", action="store_true", help="classify every member of the default ring universe")
    p.add_argument("--max-order", type=int, default=18)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("crosscap", parents=[common], help="exact crosscap number or a certified bracket")
    _add_graph_source(p)
    p.add_argument("--no-formulas", action="store_true", help="search even for complete (bipartite) graphs")
    p.set_defaults(func=cmd_crosscap)

    p = sub.add_parser("obstruction", parents=[common], help="show a catalog graph or search for it")
    p.add_argument("name", nargs="?", help="catalog name or 'list'")
    _add_graph_source(p)
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("verify-paper", parents=[common], help="run the reproduction suite")
    p.add_argument("--section", action="append",
                   help="section name or number (" + ", ".join(harness.SECTIONS) + "); repeatable")
    p.add_argument("--item", action="append", help="item id such as c5; repeatable")
    p.add_argument("--include-slow", action="store_true", help="also run the exact K7 item")
    p.add_argument("--cases", type=int, default=200, help="randomized cases per property (default 200)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-order", type=int, default=18)
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget < 1 or args.workers < 1:
        print("error: --budget and --workers must be at least 1", file=sys.stderr)
        return EXIT_FAIL
    try:
        return args.func(args)
    except (RingError, UsageError, UnknownName, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
