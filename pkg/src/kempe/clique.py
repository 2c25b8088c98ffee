"""Kempe cliques, the search for correct colorings, and immersion checks."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .chains import Backbone, ColorPair, all_pairs, chain_labels, chain_path, critical_vertices, swap_colors
from .coloring import Coloring, ColoringError, canonical_form, dsatur, enumerate_proper_colorings, find_proper_coloring, require_proper
from .graph import Graph

DEFAULT_WALK_BUDGET = 10**6
DEFAULT_RESTARTS = 64
STAGNATION_FACTOR = 50

FOUND = "Found"
NONEXISTENT = "ProvenNonexistent"
EXHAUSTED = "BudgetExhausted"
EXIT_CODES = {FOUND: 0, EXHAUSTED: 1, NONEXISTENT: 3}


class UnusedColorError(ColoringError):
    """A palette color is unused, so the coloring cannot be correct."""


class MalformedClique(ValueError):
    pass


@dataclass(frozen=True)
class KempeClique:
    q: int
    anchors: dict[int, int]
    backbones: dict[ColorPair, Backbone]

    def validate(self, g: Graph | None = None) -> None:
        if sorted(self.anchors) != list(range(1, self.q + 1)):
            raise MalformedClique(f"anchors must cover colors 1..{self.q}")
        if len(set(self.anchors.values())) != self.q:
            raise MalformedClique("anchors are not distinct")
        if len(self.backbones) != self.q * (self.q - 1) // 2:
            raise MalformedClique(f"expected {self.q * (self.q - 1) // 2} backbones, got {len(self.backbones)}")
        for p in all_pairs(self.q):
            bb = self.backbones.get(p)
            if bb is None:
                raise MalformedClique(f"missing backbone for pair ({p})")
            if bb.pair != p or {bb.path[0], bb.path[-1]} != {self.anchors[p.i], self.anchors[p.j]}:
                raise MalformedClique(f"backbone ({p}) does not join its anchors")
            if len(set(bb.path)) != len(bb.path):
                raise MalformedClique(f"backbone ({p}) is not a simple path")
            if g is not None and any(not g.has_edge(u, v) for u, v in bb.edges()):
                raise MalformedClique(f"backbone ({p}) uses a non-edge")

    def lengths(self) -> dict[ColorPair, int]:
        return {p: b.length for p, b in self.backbones.items()}

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "anchors": {str(c): v for c, v in sorted(self.anchors.items())},
            "backbones": [self.backbones[p].to_dict() for p in sorted(self.backbones)],
        }


def _anchor_choice(g: Graph, colors: Sequence[int], q: int) -> dict[int, int] | None:
    """Backtracking over one critical vertex per color, fewest candidates first."""
    cands: dict[int, list[int]] = {k: [] for k in range(1, q + 1)}
    for v in g.vertices:
        if len({colors[u] for u in g.adj[v]}) >= q - 1:
            cands[colors[v]].append(v)
    if any(not vs for vs in cands.values()):
        return None
    labels = {p: chain_labels(g, colors, p) for p in all_pairs(q)}
    order = sorted(cands, key=lambda k: (len(cands[k]), k))
    chosen: dict[int, int] = {}

    def extend(depth: int) -> bool:
        if depth == len(order):
            return True
        k = order[depth]
        for v in cands[k]:
            ok = True
            for k2, w in chosen.items():
                lab = labels[ColorPair.of(k, k2)]
                if lab[v] != lab[w]:
                    ok = False
                    break
            if ok:
                chosen[k] = v
                if extend(depth + 1):
                    return True
                del chosen[k]
        return False

    return dict(sorted(chosen.items())) if extend(0) else None


def _materialize(g: Graph, colors: Sequence[int], q: int, anchors: dict[int, int]) -> KempeClique:
    backbones = {}
    for p in all_pairs(q):
        route = chain_path(g, colors, p, anchors[p.i], anchors[p.j])
        backbones[p] = Backbone(p, (anchors[p.i], anchors[p.j]), route)
    return KempeClique(q, anchors, backbones)


def find_kempe_clique(g: Graph, c: Coloring) -> KempeClique | None:
    """A Kempe clique of the coloring, if one exists.

    Colors are tried in ascending order of candidate count and candidates in
    vertex-id order, so the returned clique is deterministic. Backbones are
    the BFS-shortest chain paths between the chosen anchors.
    """
    require_proper(g, c)
    missing = sorted(set(range(1, c.q + 1)) - c.used_colors())
    if missing:
        raise UnusedColorError(f"colors {missing} are unused; a correct coloring needs all {c.q}")
    anchors = _anchor_choice(g, c.colors, c.q)
    return None if anchors is None else _materialize(g, c.colors, c.q, anchors)


def is_correct_coloring(g: Graph, c: Coloring) -> bool:
    try:
        return find_kempe_clique(g, c) is not None
    except UnusedColorError:
        return False


# --- search -------------------------------------------------------------------


@dataclass
class SearchStats:
    colorings_examined: int = 0
    colorings_tested: int = 0
    swaps: int = 0
    restarts: int = 0
    budget: int | None = None

    def to_dict(self) -> dict:
        return {
            "colorings_examined": self.colorings_examined,
            "colorings_tested": self.colorings_tested,
            "swaps": self.swaps,
            "restarts": self.restarts,
            "budget": self.budget,
        }


@dataclass
class SearchOutcome:
    status: str
    q: int
    strategy: str
    seed: int | None = None
    coloring: Coloring | None = None
    clique: KempeClique | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def found(self) -> bool:
        return self.status == FOUND

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        out = {"q": self.q, "strategy": self.strategy, "seed": self.seed, "status": self.status}
        if self.coloring is not None:
            out["coloring"] = list(self.coloring.colors)
        if self.clique is not None:
            out["clique"] = self.clique.to_dict()
        out["stats"] = self.stats.to_dict()
        return out


def iter_correct_colorings(g: Graph, q: int) -> Iterator[tuple[int, Coloring, KempeClique]]:
    """Correct colorings in canonical stream order, with their stream index."""
    for idx, c in enumerate(enumerate_proper_colorings(g, q)):
        if len(set(c.colors)) < q:
            continue
        anchors = _anchor_choice(g, c.colors, q)
        if anchors is not None:
            yield idx, c, _materialize(g, c.colors, q, anchors)


def _exhaustive(g: Graph, q: int, budget: int | None) -> SearchOutcome:
    stats = SearchStats(budget=budget)
    for c in enumerate_proper_colorings(g, q):
        if budget is not None and stats.colorings_examined >= budget:
            return SearchOutcome(EXHAUSTED, q, "exhaustive", stats=stats)
        stats.colorings_examined += 1
        if len(set(c.colors)) < q:
            continue
        stats.colorings_tested += 1
        anchors = _anchor_choice(g, c.colors, q)
        if anchors is not None:
            return SearchOutcome(FOUND, q, "exhaustive", None, c, _materialize(g, c.colors, q, anchors), stats)
    return SearchOutcome(NONEXISTENT, q, "exhaustive", stats=stats)


@dataclass
class _RestartResult:
    index: int
    colors: tuple[int, ...] | None
    anchors: dict[int, int] | None
    examined: int
    tested: int
    swaps: int


def _walk_restart(g: Graph, q: int, seed: int, index: int, cap: int) -> _RestartResult:
    rng = random.Random(f"kempe-walk/{seed}/{index}")
    colors = dsatur(g, rng)
    if max(colors) > q:
        start = find_proper_coloring(g, q, rng)
        colors = list(start.colors)
    pairs = all_pairs(q)
    seen: set[tuple[int, ...]] = set()
    limit = STAGNATION_FACTOR * g.n
    stagnant = examined = tested = swaps = 0

    def probe() -> dict[int, int] | None:
        nonlocal examined, tested, stagnant
        examined += 1
        key = canonical_form(colors)
        if key in seen:
            # same class as an earlier coloring: same verdict
            stagnant += 1
            return None
        seen.add(key)
        stagnant = 0
        if len(set(colors)) < q:
            return None
        tested += 1
        return _anchor_choice(g, colors, q)

    anchors = probe()
    while anchors is None and pairs and swaps < cap and stagnant < limit:
        pair = rng.choice(pairs)
        labels = chain_labels(g, colors, pair)
        if not labels:
            continue
        roots = sorted(set(labels.values()))
        root = rng.choice(roots)
        colors = swap_colors(colors, pair, [v for v, r in labels.items() if r == root])
        swaps += 1
        anchors = probe()
    found = tuple(colors) if anchors is not None else None
    return _RestartResult(index, found, anchors, examined, tested, swaps)


def _kempe_walk(g: Graph, q: int, budget: int, seed: int, restarts: int, workers: int) -> SearchOutcome:
    stats = SearchStats(budget=budget)
    if find_proper_coloring(g, q) is None:
        return SearchOutcome(NONEXISTENT, q, "kempe-walk", seed, stats=stats)
    cap = -(-budget // restarts)
    if workers > 1:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_walk_restart, *zip(*[(g, q, seed, r, cap) for r in range(restarts)]))
    else:
        pool = None
        results = (_walk_restart(g, q, seed, r, cap) for r in range(restarts))
    try:
        for res in results:
            stats.restarts += 1
            stats.colorings_examined += res.examined
            stats.colorings_tested += res.tested
            stats.swaps += res.swaps
            if res.colors is not None:
                c = Coloring(q, res.colors)
                return SearchOutcome(FOUND, q, "kempe-walk", seed, c, _materialize(g, res.colors, q, res.anchors), stats)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return SearchOutcome(EXHAUSTED, q, "kempe-walk", seed, stats=stats)


def search_correct_coloring(
    g: Graph,
    q: int,
    strategy: str = "exhaustive",
    budget: int | None = None,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    workers: int = 1,
) -> SearchOutcome:
    """Look for a proper ``q``-coloring that carries a Kempe clique.

    ``exhaustive`` walks the canonical coloring stream and can prove
    nonexistence; ``budget`` caps the colorings examined. ``kempe-walk``
    performs seeded random Kempe swaps from DSATUR starts; ``budget`` is the
    total swap allowance split evenly over ``restarts``, and a restart ends
    early after ``50 * n`` swaps without reaching a new color class.
    """
    if q < 1:
        raise ColoringError(f"palette size must be >= 1, got {q}")
    if strategy == "exhaustive":
        return _exhaustive(g, q, budget)
    if strategy == "kempe-walk":
        if g.n == 0:
            return _exhaustive(g, q, None)
        return _kempe_walk(g, q, DEFAULT_WALK_BUDGET if budget is None else budget, seed, restarts, workers)
    raise ValueError(f"unknown strategy {strategy!r}")


# --- immersion ------------------------------------------------------------------


@dataclass(frozen=True)
class ImmersionReport:
    edge_disjoint: bool
    anchors_internal_free: bool
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.edge_disjoint and self.anchors_internal_free

    def to_dict(self) -> dict:
        return {
            "edge_disjoint": self.edge_disjoint,
            "anchors_internal_free": self.anchors_internal_free,
            "violations": list(self.violations),
        }


def verify_strong_immersion(g: Graph, clique: KempeClique) -> ImmersionReport:
    """Check that backbones share no edge and no anchor sits inside a backbone."""
    clique.validate(g)
    violations = []
    owner: dict[tuple[int, int], ColorPair] = {}
    disjoint = True
    for p in sorted(clique.backbones):
        for e in clique.backbones[p].edges():
            if e in owner:
                disjoint = False
                violations.append(f"edge {e[0]}-{e[1]} shared by ({owner[e]}) and ({p})")
            else:
                owner[e] = p
    anchor_set = set(clique.anchors.values())
    free = True
    for p in sorted(clique.backbones):
        for v in clique.backbones[p].internal():
            if v in anchor_set:
                free = False
                violations.append(f"anchor {v} is internal to backbone ({p})")
    return ImmersionReport(disjoint, free, tuple(violations))
