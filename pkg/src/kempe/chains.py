"""Critical vertices, Kempe chains, Kempe swaps and backbones."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .coloring import Coloring, ColoringError, require_proper
from .graph import Graph


@dataclass(frozen=True, order=True)
class ColorPair:
    i: int
    j: int

    def __post_init__(self) -> None:
        if not self.i < self.j:
            raise ColoringError(f"color pair must satisfy i < j, got ({self.i}, {self.j})")

    @classmethod
    def of(cls, a: int, b: int) -> ColorPair:
        if a == b:
            raise ColoringError(f"color pair needs two distinct colors, got ({a}, {b})")
        return cls(min(a, b), max(a, b))

    def check_palette(self, q: int) -> None:
        if self.i < 1 or self.j > q:
            raise ColoringError(f"pair ({self.i}, {self.j}) outside palette 1..{q}")

    def __contains__(self, color: int) -> bool:
        return color == self.i or color == self.j

    def other(self, color: int) -> int:
        return self.j if color == self.i else self.i

    def __str__(self) -> str:
        return f"{self.i},{self.j}"


def all_pairs(q: int) -> list[ColorPair]:
    return [ColorPair(i, j) for i in range(1, q + 1) for j in range(i + 1, q + 1)]


@dataclass(frozen=True)
class CriticalSet:
    q: int
    by_color: dict[int, tuple[int, ...]]

    def __getitem__(self, color: int) -> tuple[int, ...]:
        return self.by_color.get(color, ())

    def vertices(self) -> list[int]:
        return sorted(v for vs in self.by_color.values() for v in vs)

    def missing_colors(self) -> list[int]:
        return [c for c in range(1, self.q + 1) if not self.by_color.get(c)]

    def to_dict(self) -> dict:
        return {str(c): list(self[c]) for c in range(1, self.q + 1)}


def neighbor_color_count(g: Graph, colors: Sequence[int], v: int) -> int:
    return len({colors[u] for u in g.adj[v]})


def is_critical(g: Graph, c: Coloring, v: int) -> bool:
    # proper coloring: own color never appears among neighbors
    return neighbor_color_count(g, c.colors, v) >= c.q - 1


def critical_vertices(g: Graph, c: Coloring) -> CriticalSet:
    require_proper(g, c)
    by_color: dict[int, list[int]] = {k: [] for k in range(1, c.q + 1)}
    for v in g.vertices:
        if neighbor_color_count(g, c.colors, v) >= c.q - 1:
            by_color[c[v]].append(v)
    return CriticalSet(c.q, {k: tuple(vs) for k, vs in by_color.items()})


def chain_labels(g: Graph, colors: Sequence[int], pair: ColorPair) -> dict[int, int]:
    """Map each vertex colored ``pair.i`` or ``pair.j`` to the smallest id in its chain."""
    label: dict[int, int] = {}
    for s in g.vertices:
        if colors[s] not in pair or s in label:
            continue
        label[s] = s
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if u not in label and colors[u] in pair:
                    label[u] = s
                    queue.append(u)
    return label


@dataclass(frozen=True)
class KempeChain:
    pair: ColorPair
    members: tuple[int, ...]
    graph_key: str = field(compare=False, repr=False)
    coloring_key: str = field(compare=False, repr=False)

    def __contains__(self, v: int) -> bool:
        return v in self.member_set

    @property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def to_dict(self) -> dict:
        return {"pair": [self.pair.i, self.pair.j], "members": list(self.members)}


def kempe_chains(g: Graph, c: Coloring, p: ColorPair) -> list[KempeChain]:
    """Chains of pair ``p``, ordered by smallest member id."""
    require_proper(g, c)
    p.check_palette(c.q)
    groups: dict[int, list[int]] = {}
    for v, root in chain_labels(g, c.colors, p).items():
        groups.setdefault(root, []).append(v)
    gk, ck = g.fingerprint(), c.fingerprint()
    return [KempeChain(p, tuple(sorted(groups[r])), gk, ck) for r in sorted(groups)]


def chain_of(g: Graph, c: Coloring, v: int, other: int) -> KempeChain:
    """The ``(c[v], other)``-chain containing ``v``."""
    p = ColorPair.of(c[v], other)
    p.check_palette(c.q)
    labels = chain_labels(g, c.colors, p)
    members = sorted(u for u, r in labels.items() if r == labels[v])
    return KempeChain(p, tuple(members), g.fingerprint(), c.fingerprint())


def swap_colors(colors: Sequence[int], pair: ColorPair, members) -> list[int]:
    out = list(colors)
    for v in members:
        out[v] = pair.other(out[v])
    return out


def kempe_swap(g: Graph, c: Coloring, chain: KempeChain) -> Coloring:
    """Exchange the two colors on one chain. The chain must come from ``(g, c)``."""
    if chain.graph_key != g.fingerprint() or chain.coloring_key != c.fingerprint():
        raise ColoringError("stale chain: it was computed for a different graph or coloring")
    return Coloring(c.q, tuple(swap_colors(c.colors, chain.pair, chain.members)))


@dataclass(frozen=True)
class Backbone:
    pair: ColorPair
    anchors: tuple[int, int]
    path: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.path) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(min(a, b), max(a, b)) for a, b in zip(self.path, self.path[1:])]

    def internal(self) -> tuple[int, ...]:
        return self.path[1:-1]

    def to_dict(self) -> dict:
        return {
            "pair": [self.pair.i, self.pair.j],
            "anchors": list(self.anchors),
            "path": list(self.path),
            "length": self.length,
        }


def chain_path(g: Graph, colors: Sequence[int], pair: ColorPair, src: int, dst: int) -> tuple[int, ...] | None:
    """BFS-shortest path from ``src`` to ``dst`` through vertices colored in ``pair``.

    Neighbors are scanned in ascending id, so ties go to the smallest next vertex.
    """
    parent = {src: src}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            out = [v]
            while v != src:
                v = parent[v]
                out.append(v)
            return tuple(reversed(out))
        for u in g.adj[v]:
            if u not in parent and colors[u] in pair:
                parent[u] = v
                queue.append(u)
    return None


def find_backbone(g: Graph, c: Coloring, xi: int, xj: int) -> Backbone | None:
    """Backbone between two critical anchors of distinct colors, or ``None``
    when they lie in different chains."""
    require_proper(g, c)
    for x in (xi, xj):
        if not 0 <= x < g.n:
            raise ColoringError(f"anchor {x} is not a vertex")
        if not is_critical(g, c, x):
            raise ColoringError(f"anchor {x} is not critical")
    if c[xi] == c[xj]:
        raise ColoringError(f"anchors {xi} and {xj} share color {c[xi]}")
    pair = ColorPair.of(c[xi], c[xj])
    route = chain_path(g, c.colors, pair, xi, xj)
    return None if route is None else Backbone(pair, (xi, xj), route)


@dataclass(frozen=True)
class BackboneFound:
    backbone: Backbone
    coloring: Coloring
    swaps: int
    history: tuple[int, ...] = ()  # critical count of color a after each swap


@dataclass(frozen=True)
class AllEliminated:
    coloring: Coloring
    swaps: int
    history: tuple[int, ...] = ()


def eliminate_critical_color(g: Graph, c: Coloring, a: int, b: int) -> BackboneFound | AllEliminated:
    """Try to remove every critical vertex of color ``a`` by ``(a, b)`` swaps.

    The lowest-id critical ``a``-vertex is taken each round. If its chain holds
    a critical ``b``-vertex the backbone between them is returned; otherwise
    the chain is swapped, turning its critical ``a``-vertices into ``b``-vertices.
    """
    require_proper(g, c)
    pair = ColorPair.of(a, b)
    pair.check_palette(c.q)
    colors = list(c.colors)
    history: list[int] = []
    swaps = 0
    while True:
        cur = Coloring(c.q, tuple(colors))
        crit = critical_vertices(g, cur)
        if not crit[a]:
            return AllEliminated(cur, swaps, tuple(history))
        x = crit[a][0]
        labels = chain_labels(g, colors, pair)
        members = [v for v, r in labels.items() if r == labels[x]]
        partners = sorted(v for v in members if v in crit[b])
        if partners:
            route = chain_path(g, colors, pair, x, partners[0])
            return BackboneFound(Backbone(pair, (x, partners[0]), route), cur, swaps, tuple(history))
        colors = swap_colors(colors, pair, members)
        swaps += 1
        after = Coloring(c.q, tuple(colors))
        history.append(len(critical_vertices(g, after)[a]))
