"""Command-line interface.

Exit codes: 0 found/success, 1 not found or budget exhausted, 2 input error,
3 proven nonexistent.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import export
from .chains import AllEliminated, ColorPair, critical_vertices, eliminate_critical_color, find_backbone, kempe_chains
from .clique import (
    UnusedColorError,
    find_kempe_clique,
    iter_correct_colorings,
    search_correct_coloring,
    verify_strong_immersion,
)
from .coloring import BudgetExceeded, Coloring, ColoringError, chromatic_number
from .corpus import check_corpus_graph, corpus_names, load_corpus_graph
from .graph import FAMILIES, Graph, GraphError, generate, read_graph, read_graph_stream, to_dimacs
from .minor import grow_minor_from_clique, verify_minor_model

EXIT_OK, EXIT_MISS, EXIT_INPUT, EXIT_NONE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _env(name: str, default=None):
    return os.environ.get(f"KEMPE_{name}", default)


def _int_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {text!r}") from None
    return a, b


def _q_range(text: str) -> list[int]:
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-"))
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad q-range {text!r}; use '5-8' or '5,6'") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("graph source")
    src.add_argument("--graph", default=_env("GRAPH"), help="DIMACS/edge-list path, '-' for stdin, or corpus:NAME")
    src.add_argument("--family", choices=sorted(FAMILIES), help="generator family")
    src.add_argument("--n", type=int)
    src.add_argument("--k", type=int)
    src.add_argument("--p", type=float)
    common.add_argument("--coloring", help="JSON array of 1-based colors, inline or as a file path")
    common.add_argument("--q", type=int, default=int(_env("Q")) if _env("Q") else None)
    common.add_argument("--seed", type=int, default=int(_env("SEED", 0)))
    common.add_argument("--budget", type=int, default=int(_env("BUDGET")) if _env("BUDGET") else None)
    common.add_argument("--workers", type=int, default=int(_env("WORKERS", 1)))
    common.add_argument("--format", choices=("text", "json", "dot"), default=_env("FORMAT", "text"))
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="kempe", description="Kempe chain and Kempe clique laboratory")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("chi", parents=[common], help="exact chromatic number and witness")
    sub.add_parser("critical", parents=[common], help="critical vertices per color")
    p = sub.add_parser("chains", parents=[common], help="Kempe chains of a color pair")
    p.add_argument("--pair", type=_int_pair, required=True)
    p = sub.add_parser("backbone", parents=[common], help="backbone between two critical anchors")
    p.add_argument("--anchors", type=_int_pair, required=True)
    p = sub.add_parser("eliminate", parents=[common], help="swap away the critical vertices of one color")
    p.add_argument("--colors", type=_int_pair, required=True)
    sub.add_parser("clique", parents=[common], help="Kempe clique of a coloring")
    p = sub.add_parser("search", parents=[common], help="search for a correct coloring")
    p.add_argument("--strategy", choices=("exhaustive", "kempe-walk"), default=_env("STRATEGY", "exhaustive"))
    p.add_argument("--restarts", type=int, default=64)
    sub.add_parser("immersion-verify", parents=[common], help="check the clique of a coloring is a strong immersion")
    p = sub.add_parser("minor", parents=[common], help="grow a complete minor model from a Kempe clique")
    p.add_argument("--limit", type=int, default=100, help="correct colorings to try when no --coloring is given")
    sub.add_parser("gen", parents=[common], help="emit a generated graph")
    p = sub.add_parser("corpus", parents=[common], help="list or validate bundled graphs")
    p.add_argument("action", choices=("list", "check"))
    p = sub.add_parser("harness", parents=[common], help="run the reproduction suite")
    p.add_argument("--checks", help="comma-separated check numbers (default: all)")
    p.add_argument("--instances", action="store_true", help="also probe named instances over a q-range")
    p.add_argument("--q-range", type=_q_range, help="q values for instance probes (default chi..chi+3)")
    return parser


# --- inputs ---------------------------------------------------------------------


def load_source(args) -> Graph:
    if args.graph and args.family:
        raise UsageError("give either --graph or --family, not both")
    if args.family:
        params = {"n": args.n, "k": args.k, "p": args.p, "seed": args.seed}
        return generate(args.family, **params)
    if not args.graph:
        raise UsageError("a graph is required: --graph PATH|-|corpus:NAME or --family")
    if args.graph == "-":
        return read_graph_stream(sys.stdin)
    if args.graph.startswith("corpus:"):
        return load_corpus_graph(args.graph.split(":", 1)[1])
    return read_graph(args.graph)


def load_coloring(args, g: Graph) -> Coloring:
    if not args.coloring:
        k, w = chromatic_number(g)
        return w if args.q is None else Coloring(max(args.q, k), w.colors)
    text = args.coloring.strip()
    if not text.startswith("["):
        path = Path(text)
        if not path.is_file():
            raise UsageError(f"no such coloring file: {path}")
        text = path.read_text()
    c = Coloring.from_json(text, args.q)
    if len(c) != g.n:
        raise UsageError(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    return c


# --- commands -------------------------------------------------------------------


def cmd_chi(args, g):
    k, w = chromatic_number(g, **({"budget": args.budget} if args.budget else {}))
    if args.format == "json":
        return EXIT_OK, export.dumps(export.report("chi", g, chi=k, coloring=list(w.colors)))
    if args.format == "dot":
        return EXIT_OK, export.coloring_dot(g, w)
    return EXIT_OK, f"{k}\n{json.dumps(list(w.colors))}\n"


def cmd_critical(args, g):
    c = load_coloring(args, g)
    crit = critical_vertices(g, c)
    if args.format == "json":
        return EXIT_OK, export.dumps(export.report("critical", g, q=c.q, critical=crit.to_dict()))
    if args.format == "dot":
        return EXIT_OK, export.coloring_dot(g, c)
    lines = [f"color {k}: {' '.join(map(str, crit[k])) or '-'}" for k in range(1, c.q + 1)]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_chains(args, g):
    c = load_coloring(args, g)
    chains = kempe_chains(g, c, ColorPair.of(*args.pair))
    if args.format == "json":
        return EXIT_OK, export.dumps(export.report("chains", g, q=c.q, chains=[ch.to_dict() for ch in chains]))
    return EXIT_OK, "".join(" ".join(map(str, ch.members)) + "\n" for ch in chains)


def cmd_backbone(args, g):
    c = load_coloring(args, g)
    bb = find_backbone(g, c, *args.anchors)
    code = EXIT_OK if bb else EXIT_MISS
    if args.format == "json":
        return code, export.dumps(export.report("backbone", g, backbone=bb.to_dict() if bb else None))
    if args.format == "dot":
        return code, export.coloring_dot(g, c, [bb] if bb else [], args.anchors)
    if bb is None:
        return code, "no backbone: anchors lie in different chains\n"
    return code, f"length {bb.length}: {' '.join(map(str, bb.path))}\n"


def cmd_eliminate(args, g):
    c = load_coloring(args, g)
    res = eliminate_critical_color(g, c, *args.colors)
    kind = "AllEliminated" if isinstance(res, AllEliminated) else "BackboneFound"
    payload = {"outcome": kind, "swaps": res.swaps, "coloring": list(res.coloring.colors)}
    if not isinstance(res, AllEliminated):
        payload["backbone"] = res.backbone.to_dict()
    if args.format == "json":
        return EXIT_OK, export.dumps(export.report("eliminate", g, **payload))
    text = f"{kind} after {res.swaps} swap(s)\n"
    if "backbone" in payload:
        text += f"backbone: {' '.join(map(str, res.backbone.path))}\n"
    return EXIT_OK, text


def _clique_for(args, g):
    c = load_coloring(args, g)
    return c, find_kempe_clique(g, c)


def cmd_clique(args, g):
    try:
        c, clique = _clique_for(args, g)
    except UnusedColorError as exc:
        if args.format == "json":
            return EXIT_MISS, export.dumps(export.report("clique", g, status="UnusedColor", message=str(exc)))
        return EXIT_MISS, f"not a correct coloring: {exc}\n"
    code = EXIT_OK if clique else EXIT_MISS
    if args.format == "json":
        return code, export.dumps(export.report("clique", g, q=c.q, clique=clique.to_dict() if clique else None))
    if args.format == "dot":
        return code, export.clique_dot(g, c, clique) if clique else export.coloring_dot(g, c)
    if clique is None:
        return code, "no Kempe clique\n"
    lines = [f"clique Q_{c.q}: anchors " + " ".join(f"{k}:{v}" for k, v in sorted(clique.anchors.items()))]
    for p in sorted(clique.backbones):
        bb = clique.backbones[p]
        lines.append(f"  ({p}) length {bb.length}: {' '.join(map(str, bb.path))}")
    return code, "\n".join(lines) + "\n"


def cmd_search(args, g):
    if args.q is None:
        raise UsageError("search needs --q")
    out = search_correct_coloring(
        g, args.q, args.strategy, budget=args.budget, seed=args.seed, restarts=args.restarts, workers=args.workers
    )
    if args.format == "json":
        return out.exit_code, export.dumps(export.report("search", g, **out.to_dict()))
    if args.format == "dot" and out.clique is not None:
        return out.exit_code, export.clique_dot(g, out.coloring, out.clique)
    text = f"{out.status} (q={args.q}, {args.strategy})\n"
    if out.coloring is not None:
        text += json.dumps(list(out.coloring.colors)) + "\n"
    s = out.stats
    text += f"examined {s.colorings_examined}, tested {s.colorings_tested}, swaps {s.swaps}, restarts {s.restarts}\n"
    return out.exit_code, text


def cmd_immersion(args, g):
    c, clique = _clique_for(args, g)
    if clique is None:
        return EXIT_MISS, "no Kempe clique to verify\n"
    rep = verify_strong_immersion(g, clique)
    code = EXIT_OK if rep.ok else EXIT_MISS
    if args.format == "json":
        return code, export.dumps(export.report("immersion-verify", g, clique=clique.to_dict(), report=rep.to_dict()))
    text = f"edge_disjoint={rep.edge_disjoint} anchors_internal_free={rep.anchors_internal_free}\n"
    return code, text + "".join(f"  {v}\n" for v in rep.violations)


def cmd_minor(args, g):
    if args.coloring:
        c, clique = _clique_for(args, g)
        attempts = [(c, clique)] if clique else []
    else:
        q = args.q if args.q is not None else chromatic_number(g)[0]
        attempts = ((c, cl) for _, (_, c, cl) in zip(range(args.limit), iter_correct_colorings(g, q)))
    for c, clique in attempts:
        model = grow_minor_from_clique(g, c, clique)
        if model is None:
            continue
        rep = verify_minor_model(g, model)
        if args.format == "json":
            body = {**model.to_dict(), "coloring": list(c.colors), **rep.to_dict()}
            return EXIT_OK, export.dumps(export.report("minor", g, model=body))
        if args.format == "dot":
            return EXIT_OK, export.minor_dot(g, model)
        sets = "\n".join(f"  set {k}: {sorted(v)}" for k, v in sorted(model.branch_sets.items()))
        return EXIT_OK, f"K_{model.q} minor, valid={rep.valid}, h >= {rep.hadwiger_lower_bound}\n{sets}\n"
    if args.format == "json":
        return EXIT_MISS, export.dumps(export.report("minor", g, model=None))
    return EXIT_MISS, "growth heuristic found no minor model\n"


def cmd_gen(args, g):
    if args.format == "json":
        return EXIT_OK, export.dumps({"name": g.name, "n": g.n, "edges": [list(e) for e in g.edges()]})
    if args.format == "dot":
        lines = [f"graph G {{"] + [f"  {u} -- {v};" for u, v in g.edges()] + ["}"]
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, to_dimacs(g)


def cmd_corpus(args):
    if args.action == "list":
        if args.format == "json":
            return EXIT_OK, export.dumps({"schema": export.SCHEMA_VERSION, "corpus": corpus_names()})
        return EXIT_OK, "".join(n + "\n" for n in corpus_names())
    results = {}
    for name in corpus_names():
        try:
            g = load_corpus_graph(name, validate=False)
            results[name] = check_corpus_graph(name, g)
        except GraphError as exc:
            results[name] = [str(exc)]
    code = EXIT_OK if not any(results.values()) else EXIT_MISS
    if args.format == "json":
        return code, export.dumps({"schema": export.SCHEMA_VERSION, "corpus": results})
    return code, "".join(f"{'ok  ' if not p else 'FAIL'} {n} {'; '.join(p)}\n" for n, p in results.items())


def cmd_harness(args):
    from .harness import instance_report, run_checks

    numbers = None
    if args.checks:
        try:
            numbers = [int(x) for x in args.checks.split(",")]
        except ValueError:
            raise UsageError(f"bad --checks value {args.checks!r}") from None
    results = run_checks(numbers)
    instances = []
    if args.instances:
        budget = args.budget if args.budget is not None else 20000
        for name in corpus_names():
            instances.append(instance_report(load_corpus_graph(name), args.q_range, budget, args.seed, workers=args.workers))
    passed = sum(r.passed for r in results)
    code = EXIT_OK if passed == len(results) else EXIT_MISS
    if args.format == "json":
        body = {"checks": [r.to_dict() for r in results], "passed": passed, "total": len(results)}
        if args.instances:
            body["instances"] = instances
        return code, export.dumps({"schema": export.SCHEMA_VERSION, "command": "harness", **body})
    lines = [r.line() for r in results]
    for inst in instances:
        lines.append(f"instance {inst['graph']['name']}: chi={inst['chi']} ({inst['strategy']})")
        for entry in inst["results"]:
            lines.append(f"  q={entry['q']}: {entry['outcome']['status']}")
    lines.append(f"{passed}/{len(results)} checks passed")
    return code, "\n".join(lines) + "\n"


COMMANDS = {
    "chi": cmd_chi,
    "critical": cmd_critical,
    "chains": cmd_chains,
    "backbone": cmd_backbone,
    "eliminate": cmd_eliminate,
    "clique": cmd_clique,
    "search": cmd_search,
    "immersion-verify": cmd_immersion,
    "minor": cmd_minor,
    "gen": cmd_gen,
}


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "corpus":
            code, text = cmd_corpus(args)
        elif args.command == "harness":
            code, text = cmd_harness(args)
        else:
            g = load_source(args)
            code, text = COMMANDS[args.command](args, g)
    except (UsageError, GraphError, ColoringError, ValueError) as exc:
        print(f"kempe {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"kempe {args.command}: {exc}", file=sys.stderr)
        return EXIT_MISS
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
