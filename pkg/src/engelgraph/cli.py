"""Command-line front end: analyse a group, run verification suites, trace the
reduction ladder, find Engel paths and export graphs as DOT."""

from __future__ import annotations

import argparse
import json
import sys
from collections import deque
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import catalog
from .digraph import eccentricities_within_components, export_dot, undirected_components
from .graphs import BudgetError, build_kind, build_prime_graph, default_budget
from .group import Group
from .perm import Permutation
from .structure import (compute_J, fitting, fstar_equals_fitting, hypercenter, is_almost_simple,
                        is_frobenius, is_nilpotent, is_simple, is_soluble, j_equals_jstar)
from .suites import (FAST, SUITES, GraphStats, Workspace, render_text, run_suites,
                     trace_proof)
from .words import NO_ARC, depths_from

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input; reported with exit code 2."""


# -- analysis report ---------------------------------------------------------------


@dataclass
class AnalysisReport:
    name: str
    order: int
    degree: int
    z_infty_order: int
    fitting_order: int
    flags: dict = field(default_factory=dict)
    gamma: dict = field(default_factory=dict)
    commuting: list = field(default_factory=list)
    prime_graph: dict = field(default_factory=dict)
    j_order: int = 0
    jstar_note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        g = self.gamma
        lines = [
            f"group: {self.name}  order {self.order}  degree {self.degree}",
            f"|Zinf| = {self.z_infty_order}  |F| = {self.fitting_order}  |J| = {self.j_order}",
            "flags: " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in sorted(self.flags.items())),
            f"Gamma: {g['vertex_count']} vertices, {g['arc_count']} arcs, {g['scc_count']} strong components",
            f"  strongly connected: {'yes' if g['strongly_connected'] else 'no'}"
            f"  diameter: {g['diameter']}" + ("  (degenerate)" if g["degenerate"] else ""),
        ]
        if g["witness_pair"]:
            lines.append(f"  witness: {g['witness_pair'][0]} -> {g['witness_pair'][1]}")
        sizes = ", ".join(f"{c['component_size']}(diam {c['diameter']})" for c in self.commuting)
        lines.append(f"commuting components: {sizes or 'none'}")
        comps = " | ".join(",".join(map(str, c)) for c in self.prime_graph["components"])
        lines.append(f"prime graph components: {comps}")
        lines.append(f"J vs J*: {self.jstar_note}")
        return "\n".join(lines) + "\n"


def _gamma_section(G: Group, st: GraphStats) -> dict:
    return {
        "vertex_count": st.vertex_count,
        "arc_count": st.arc_count,
        "scc_count": st.scc_count,
        "strongly_connected": st.strongly_connected,
        "diameter": st.diameter if st.diameter is not None else "infinite",
        "witness_pair": [G.label(i) for i in st.witness_pair] if st.witness_pair else None,
        "degenerate": st.degenerate,
    }


def _commuting_section(G: Group, ws: Workspace) -> list[dict]:
    D = build_kind(G, "commuting", ws.budget)
    if len(D) == 0:
        return []
    ecc = eccentricities_within_components(D, ws.jobs)
    comps = undirected_components(D)
    out = [{"component_size": int(len(c)), "diameter": int(ecc[c].max())} for c in comps]
    return sorted(out, key=lambda c: (-c["component_size"], c["diameter"]))


def analyze_group(G: Group, budget: int | None = None, jobs: int = 1) -> AnalysisReport:
    ws = Workspace(budget, jobs)
    st = ws.stats(G, "gamma")
    pg = build_prime_graph(G)
    Z = hypercenter(G)
    J = compute_J(G)
    jj = j_equals_jstar(G)
    return AnalysisReport(
        name=G.name,
        order=len(G),
        degree=G.degree,
        z_infty_order=len(Z),
        fitting_order=len(fitting(G)),
        flags={
            "nilpotent": is_nilpotent(G),
            "soluble": is_soluble(G),
            "simple": is_simple(G),
            "almost_simple": is_almost_simple(G),
            "frobenius": is_frobenius(G) is not None,
            "fstar_eq_f": fstar_equals_fitting(G),
        },
        gamma=_gamma_section(G, st),
        commuting=_commuting_section(G, ws),
        prime_graph={
            "primes": list(pg.primes),
            "edges": [list(e) for e in pg.edges],
            "components": [list(c) for c in pg.components],
        },
        j_order=len(J),
        jstar_note="J = J*" if jj else "J != J*",
    )


# -- Engel paths -------------------------------------------------------------------


def _parse_element(G: Group, text: str) -> int:
    try:
        return G.index(Permutation.from_cycles(text, G.degree))
    except (ValueError, KeyError) as exc:
        raise UsageError(f"{text!r} is not an element of {G.name}: {exc}") from None


def engel_path(G: Group, x: int, y: int) -> list[tuple[int, int, int]] | None:
    """Shortest path ``x -> ... -> y`` in Gamma(G) as ``(source, target, depth)`` arcs.

    Raises ``UsageError`` when an endpoint lies in the hypercenter.
    """
    Z = hypercenter(G)
    for v in (x, y):
        if v in Z:
            raise UsageError(f"{G.label(v)} is not a vertex: it lies in Zinf({G.name})")
    excluded = Z.mask
    parent = {x: None}
    depth_of = {}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u == y:
            break
        depths = depths_from(G, u)
        for v in np.flatnonzero((depths != NO_ARC) & ~excluded).tolist():
            if v != u and v not in parent:
                parent[v] = u
                depth_of[v] = int(depths[v])
                queue.append(v)
    if y not in parent:
        return None
    path = []
    v = y
    while parent[v] is not None:
        path.append((parent[v], v, depth_of[v]))
        v = parent[v]
    return path[::-1]


# -- commands ----------------------------------------------------------------------


def _load(spec_text: str) -> Group:
    try:
        return catalog.build(catalog.parse_spec(spec_text))
    except catalog.GroupFileError as exc:
        raise UsageError(str(exc)) from None
    except (ValueError, FileNotFoundError) as exc:
        raise UsageError(str(exc)) from None


def cmd_analyze(args) -> int:
    G = _load(args.group)
    if args.format == "dot":
        D = build_kind(G, "gamma", args.budget)
        sys.stdout.write(export_dot(D, lambda i: G.label(int(D.vertex_ids[i])), name=f"Gamma({G.name})"))
        return EXIT_OK
    report = analyze_group(G, args.budget, args.jobs)
    sys.stdout.write(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    names = "all" if args.suite == "all" else [args.suite]
    if names != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    results = run_suites(names, args.tier, args.budget, args.jobs)
    if args.format == "json":
        sys.stdout.write(json.dumps([r.to_dict() for r in results], indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(render_text(results))
    return EXIT_FAIL if any(r.failed for r in results) else EXIT_OK


def cmd_trace_proof(args) -> int:
    G = _load(args.group)
    tr = trace_proof(G, Workspace(args.budget, args.jobs))
    sys.stdout.write(tr.render() + "\n")
    return EXIT_OK if tr.holds else EXIT_FAIL


def cmd_engel_path(args) -> int:
    G = _load(args.group)
    x = _parse_element(G, args.source)
    y = _parse_element(G, args.target)
    if x == y:
        raise UsageError("source and target coincide")
    path = engel_path(G, x, y)
    if path is None:
        print(f"unreachable: no directed path from {G.label(x)} to {G.label(y)} in Gamma({G.name})")
        return EXIT_OK
    print(f"path of length {len(path)} in Gamma({G.name})")
    for a, b, d in path:
        print(f"  {G.label(a)} -> {G.label(b)}  depth {d}")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    G = _load(args.group)
    try:
        D = build_kind(G, args.kind, args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if D.degenerate:
        print(f"warning: {args.kind} graph of {G.name} has {len(D)} vertices (degenerate)", file=sys.stderr)
    text = export_dot(D, lambda i: G.label(int(D.vertex_ids[i])), name=f"{args.kind}({G.name})")
    try:
        Path(args.out).write_text(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"wrote {len(D)} nodes and {D.arc_count()} arcs to {args.out}")
    return EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="engelgraph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--jobs", type=_positive, default=1, help="worker threads")
        p.add_argument("--budget", type=_non_negative, default=None,
                       help="arc-test budget (default: ENGELGRAPH_BUDGET or built-in)")

    p = sub.add_parser("analyze", help="structural report for one group")
    p.add_argument("--group", required=True, help="catalog name (S4, PSL2(7), C2xS4, ...) or .json file")
    p.add_argument("--format", choices=["json", "text", "dot"], default="json")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)}, or all")
    p.add_argument("--tier", choices=list(catalog.TIERS), default=FAST)
    p.add_argument("--format", choices=["text", "json"], default="text")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trace-proof", help="which case of the reduction ladder applies")
    p.add_argument("--group", required=True)
    common(p)
    p.set_defaults(func=cmd_trace_proof)

    p = sub.add_parser("engel-path", help="shortest directed path in Gamma(G)")
    p.add_argument("--group", required=True)
    p.add_argument("--from", dest="source", required=True, help='cycle notation, e.g. "(1,2)"')
    p.add_argument("--to", dest="target", required=True)
    p.set_defaults(func=cmd_engel_path)

    p = sub.add_parser("export-dot", help="write a graph as DOT")
    p.add_argument("--group", required=True)
    p.add_argument("--kind", required=True, help="gamma, gamma_n:<n>, delta, lambda or commuting")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if getattr(args, "budget", None) is None and hasattr(args, "budget"):
            args.budget = default_budget()
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetError, ValueError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
