"""JSON reports and Graphviz DOT rendering."""

from __future__ import annotations

import json
from typing import Iterable

from .chains import Backbone, critical_vertices
from .clique import KempeClique
from .coloring import Coloring
from .graph import Graph
from .minor import MinorModel

SCHEMA_VERSION = "1"

PALETTE = (
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
)
RIBBON = "#7b2fbe"


def fill(color: int) -> str:
    return PALETTE[(color - 1) % len(PALETTE)]


def graph_summary(g: Graph) -> dict:
    return {"name": g.name, "n": g.n, "edges": g.edge_count}


def report(command: str, g: Graph | None, **payload) -> dict:
    out = {"schema": SCHEMA_VERSION, "command": command}
    if g is not None:
        out["graph"] = graph_summary(g)
    out.update(payload)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _dot_id(name: str) -> str:
    return '"' + (name or "G").replace('"', "'") + '"'


def coloring_dot(
    g: Graph,
    c: Coloring,
    backbones: Iterable[Backbone] = (),
    anchors: Iterable[int] | None = None,
) -> str:
    """Color classes as node fills; critical vertices boxed; backbone edges
    drawn as thick purple ribbons."""
    crit = set(critical_vertices(g, c).vertices())
    framed = crit if anchors is None else set(anchors)
    ribbon = {e for b in backbones for e in b.edges()}
    lines = [f"graph {_dot_id(g.name)} {{", "  node [style=filled, fontname=Helvetica];"]
    for v in g.vertices:
        shape = "box" if v in framed else "circle"
        lines.append(f'  {v} [label="{v}:{c[v]}", fillcolor="{fill(c[v])}", shape={shape}];')
    for u, v in g.edges():
        if (u, v) in ribbon:
            lines.append(f'  {u} -- {v} [color="{RIBBON}", penwidth=4];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def clique_dot(g: Graph, c: Coloring, clique: KempeClique) -> str:
    return coloring_dot(g, c, clique.backbones.values(), clique.anchors.values())


def minor_dot(g: Graph, model: MinorModel) -> str:
    lines = [f"graph {_dot_id(g.name)} {{", "  node [style=filled, fontname=Helvetica];"]
    placed = set()
    for k in sorted(model.branch_sets):
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f'    label="set {k}"; color="{fill(k)}";')
        for v in sorted(model.branch_sets[k]):
            shape = "box" if v == model.seed_map.get(k) else "circle"
            lines.append(f'    {v} [fillcolor="{fill(k)}", shape={shape}];')
            placed.add(v)
        lines.append("  }")
    for v in g.vertices:
        if v not in placed:
            lines.append(f'  {v} [fillcolor="white"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
