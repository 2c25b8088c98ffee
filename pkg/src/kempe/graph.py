"""Immutable simple undirected graphs, file formats and generators."""

from __future__ import annotations

import hashlib
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

log = logging.getLogger(__name__)


class GraphError(ValueError):
    """Raised for malformed input or invalid generator parameters."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        for v, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"neighbors of {v} not sorted/unique")
            for u in nbrs:
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                if not 0 <= u < self.n:
                    raise GraphError(f"neighbor {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Graph:
        """Build a graph on ``0..n-1``; duplicate edges are merged with a warning."""
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        dupes = 0
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbrs[u]:
                dupes += 1
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
        if dupes:
            log.warning("dropped %d duplicate edge(s)", dupes)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), name)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    @property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        cached = self.__dict__.get("_nbr_sets")
        if cached is None:
            cached = tuple(frozenset(a) for a in self.adj)
            object.__setattr__(self, "_nbr_sets", cached)
        return cached

    def fingerprint(self) -> str:
        h = hashlib.blake2b(digest_size=12)
        h.update(str(self.n).encode())
        for u, v in self.edges():
            h.update(f",{u}-{v}".encode())
        return h.hexdigest()

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.edge_count}>"


# --- file formats -----------------------------------------------------------


def parse_dimacs(text: str, name: str = "") -> Graph:
    """Parse DIMACS ``.col`` text (``p edge N M`` header, 1-based ``e u v`` lines)."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "p":
                if n is not None:
                    raise GraphError("duplicate problem line")
                if len(parts) != 4 or parts[1] not in ("edge", "col"):
                    raise GraphError("expected 'p edge N M'")
                n = int(parts[2])
                int(parts[3])
            elif parts[0] == "e":
                if n is None:
                    raise GraphError("edge before problem line")
                if len(parts) != 3:
                    raise GraphError("expected 'e u v'")
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
                edges.append((u, v))
            else:
                raise GraphError(f"unknown line type {parts[0]!r}")
        except (ValueError, GraphError) as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    if n is None:
        raise GraphError("missing problem line")
    return Graph.from_edges(n, edges, name)


def parse_edge_list(text: str, name: str = "") -> Graph:
    """Parse ``u v`` lines with 0-based ids; ``#`` starts a comment."""
    edges = []
    n = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if len(parts) == 1:
                # lone vertex id, so isolated vertices survive a round trip
                n = max(n, int(parts[0]) + 1)
                continue
            if len(parts) != 2:
                raise GraphError("expected 'u v'")
            u, v = int(parts[0]), int(parts[1])
            if u < 0 or v < 0:
                raise GraphError("negative vertex id")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
        except ValueError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
        except GraphError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
        edges.append((u, v))
        n = max(n, u + 1, v + 1)
    return Graph.from_edges(n, edges, name)


def to_dimacs(g: Graph) -> str:
    lines = []
    if g.name:
        lines.append(f"c {g.name}")
    lines.append(f"p edge {g.n} {g.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def to_edge_list(g: Graph) -> str:
    lines = [f"{u} {v}" for u, v in g.edges()]
    lines.extend(str(v) for v in g.vertices if not g.adj[v])
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path, name: str | None = None) -> Graph:
    path = Path(path)
    if not path.is_file():
        raise GraphError(f"no such file: {path}")
    return parse_graph_text(path.read_text(), name if name is not None else path.stem)


def parse_graph_text(text: str, name: str = "") -> Graph:
    """Sniff the format: DIMACS when a ``p`` line is present, else edge list."""
    for raw in text.splitlines():
        parts = raw.split()
        if parts and parts[0] == "p":
            return parse_dimacs(text, name)
    return parse_edge_list(text, name)


def read_graph_stream(stream: TextIO, name: str = "stdin") -> Graph:
    return parse_graph_text(stream.read(), name)


# --- generators ---------------------------------------------------------------


def _check_order(n: int, lo: int = 1) -> None:
    if not isinstance(n, int) or n < lo:
        raise GraphError(f"order must be an integer >= {lo}, got {n!r}")


def cycle(n: int) -> Graph:
    _check_order(n, 3)
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)), f"cycle({n})")


def complete(k: int) -> Graph:
    _check_order(k)
    return Graph.from_edges(k, ((i, j) for i in range(k) for j in range(i + 1, k)), f"complete({k})")


def path(n: int) -> Graph:
    _check_order(n)
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)), f"path({n})")


def wheel(n: int) -> Graph:
    """Rim ``cycle(n)`` on vertices ``0..n-1`` plus hub ``n``."""
    _check_order(n, 3)
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
    return Graph.from_edges(n + 1, edges, f"wheel({n})")


def random_gnp(n: int, p: float, seed: int) -> Graph:
    _check_order(n)
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges, f"random_gnp({n},{p},{seed})")


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labelled tree via a random Prufer sequence."""
    _check_order(n)
    if n <= 2:
        return path(n)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Graph.from_edges(n, edges, f"random_tree({n},{seed})")


def lexicographic_product(g: Graph, h: Graph) -> Graph:
    """``g[h]``: vertex ``(u, x)`` gets id ``u * h.n + x``."""
    if g.n == 0 or h.n == 0:
        raise GraphError("lexicographic product needs nonempty factors")
    m = h.n
    edges = []
    for u in g.vertices:
        for x in h.vertices:
            a = u * m + x
            edges.extend((a, u * m + y) for y in h.adj[x] if y > x)
            for v in g.adj[u]:
                if v > u:
                    edges.extend((a, v * m + y) for y in h.vertices)
    return Graph.from_edges(g.n * m, edges, f"{g.name or 'g'}[{h.name or 'h'}]")


def catlin(n: int, k: int) -> Graph:
    """Odd cycle of length ``2n+1`` with every vertex blown up into ``K_k``."""
    _check_order(n)
    _check_order(k)
    g = lexicographic_product(cycle(2 * n + 1), complete(k))
    return Graph(g.n, g.adj, f"catlin({n},{k})")


FAMILIES = {
    "cycle": (cycle, ("n",)),
    "complete": (complete, ("k",)),
    "path": (path, ("n",)),
    "wheel": (wheel, ("n",)),
    "random_gnp": (random_gnp, ("n", "p", "seed")),
    "random_tree": (random_tree, ("n", "seed")),
    "catlin": (catlin, ("n", "k")),
}


def generate(family: str, **params) -> Graph:
    try:
        fn, names = FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    missing = [p for p in names if params.get(p) is None]
    if missing:
        raise GraphError(f"family {family!r} needs parameter(s) {missing}")
    return fn(**{p: params[p] for p in names})


# --- sources ------------------------------------------------------------------


@dataclass(frozen=True)
class GraphSource:
    kind: str  # "dimacs-file" | "edge-list-file" | "generator" | "corpus-name"
    params: dict

    KINDS = ("dimacs-file", "edge-list-file", "generator", "corpus-name")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise GraphError(f"unknown source kind {self.kind!r}")
        required = {"generator": "family", "corpus-name": "name"}.get(self.kind, "path")
        if required not in self.params:
            raise GraphError(f"{self.kind} source needs {required!r}")


def load_graph(source: GraphSource) -> Graph:
    p = source.params
    if source.kind == "dimacs-file":
        path_ = Path(p["path"])
        if not path_.is_file():
            raise GraphError(f"no such file: {path_}")
        return parse_dimacs(path_.read_text(), path_.stem)
    if source.kind == "edge-list-file":
        path_ = Path(p["path"])
        if not path_.is_file():
            raise GraphError(f"no such file: {path_}")
        return parse_edge_list(path_.read_text(), path_.stem)
    if source.kind == "generator":
        params = {k: v for k, v in p.items() if k != "family"}
        return generate(p["family"], **params)
    from .corpus import load_corpus_graph

    return load_corpus_graph(p["name"])
