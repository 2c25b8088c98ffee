"""Proper colorings: validation, exact chromatic number, canonical enumeration."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Graph

DEFAULT_NODE_BUDGET = 10**8


class ColoringError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Exact search ran out of nodes; no approximate answer is substituted."""

    def __init__(self, nodes: int):
        super().__init__(f"exact search exceeded its budget of {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class Coloring:
    """Vertex ``v`` has color ``colors[v]`` in ``1..q``."""

    q: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.q < 1 and self.colors:
            raise ColoringError(f"palette size must be >= 1, got {self.q}")
        for v, c in enumerate(self.colors):
            if not isinstance(c, int) or not 1 <= c <= self.q:
                raise ColoringError(f"vertex {v} has color {c!r} outside 1..{self.q}")

    @classmethod
    def of(cls, colors: Sequence[int], q: int | None = None) -> Coloring:
        colors = tuple(int(c) for c in colors)
        return cls(q if q is not None else max(colors, default=0), colors)

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def used_colors(self) -> set[int]:
        return set(self.colors)

    def uses_all_colors(self) -> bool:
        return len(set(self.colors)) == self.q

    def color_class(self, c: int) -> list[int]:
        return [v for v, x in enumerate(self.colors) if x == c]

    def permuted(self, perm: dict[int, int]) -> Coloring:
        return Coloring(self.q, tuple(perm[c] for c in self.colors))

    def fingerprint(self) -> str:
        return hashlib.blake2b(repr((self.q, self.colors)).encode(), digest_size=12).hexdigest()

    def to_json(self) -> str:
        return json.dumps(list(self.colors))

    @classmethod
    def from_json(cls, text: str, q: int | None = None) -> Coloring:
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(c, int) for c in data):
            raise ColoringError("coloring JSON must be an array of integers")
        return cls.of(data, q)


def check_total(g: Graph, c: Coloring) -> None:
    if len(c) != g.n:
        raise ColoringError(f"coloring covers {len(c)} vertices, graph has {g.n}")


def is_proper(g: Graph, c: Coloring) -> bool:
    check_total(g, c)
    return all(c[u] != c[v] for u, v in g.edges())


def require_proper(g: Graph, c: Coloring) -> None:
    if not is_proper(g, c):
        u, v = next((u, v) for u, v in g.edges() if c[u] == c[v])
        raise ColoringError(f"coloring is improper: edge {u}-{v} has color {c[u]} at both ends")


def canonical_form(colors: Sequence[int]) -> tuple[int, ...]:
    """Relabel colors in order of first appearance (vertex-id order)."""
    relabel: dict[int, int] = {}
    out = []
    for x in colors:
        if x not in relabel:
            relabel[x] = len(relabel) + 1
        out.append(relabel[x])
    return tuple(out)


def is_canonical(colors: Sequence[int]) -> bool:
    return tuple(colors) == canonical_form(colors)


# --- heuristics and bounds --------------------------------------------------


def dsatur(g: Graph, rng: random.Random | None = None) -> list[int]:
    """Greedy DSATUR coloring (1-based). Ties: degree, then vertex id or ``rng``."""
    n = g.n
    colors = [0] * n
    seen: list[set[int]] = [set() for _ in range(n)]
    jitter = [rng.random() for _ in range(n)] if rng else [0.0] * n
    uncolored = set(range(n))
    while uncolored:
        v = max(uncolored, key=lambda u: (len(seen[u]), g.degree(u), jitter[u], -u))
        c = 1
        while c in seen[v]:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        for u in g.adj[v]:
            seen[u].add(c)
    return colors


def greedy_clique(g: Graph) -> list[int]:
    """Largest clique found by greedy extension from every start vertex."""
    nbrs = g.neighbor_sets
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    best: list[int] = []
    for s in order:
        clique = [s]
        cand = set(nbrs[s])
        for v in order:
            if v in cand:
                clique.append(v)
                cand &= nbrs[v]
        if len(clique) > len(best):
            best = clique
    return best


class _Search:
    """DSATUR backtracking for a proper coloring with at most ``limit`` colors."""

    def __init__(self, g: Graph, budget: int, rng: random.Random | None = None):
        self.g = g
        self.budget = budget
        self.nodes = 0
        self.rng = rng

    def run(self, limit: int, precolor: Sequence[int] = ()) -> list[int] | None:
        g = self.g
        n = g.n
        self.limit = limit
        self.colors = [0] * n
        # counts[v][c]: neighbors of v currently colored c
        self.counts = [[0] * (limit + 2) for _ in range(n)]
        self.sat = [0] * n
        self.jitter = [self.rng.random() for _ in range(n)] if self.rng else [0.0] * n
        used = 0
        for i, v in enumerate(precolor):
            if i + 1 > limit:
                return None
            self._assign(v, i + 1)
            used = i + 1
        if self._dfs(n - len(precolor), used):
            return list(self.colors)
        return None

    def _assign(self, v: int, c: int) -> None:
        self.colors[v] = c
        for u in self.g.adj[v]:
            row = self.counts[u]
            if row[c] == 0:
                self.sat[u] += 1
            row[c] += 1

    def _unassign(self, v: int, c: int) -> None:
        self.colors[v] = 0
        for u in self.g.adj[v]:
            row = self.counts[u]
            row[c] -= 1
            if row[c] == 0:
                self.sat[u] -= 1

    def _dfs(self, remaining: int, used: int) -> bool:
        if remaining == 0:
            return True
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)
        g, colors, sat, jitter = self.g, self.colors, self.sat, self.jitter
        v = -1
        key = None
        for u in range(g.n):
            if colors[u] == 0:
                k = (sat[u], g.degree(u), jitter[u])
                if key is None or k > key:
                    key, v = k, u
        if sat[v] >= self.limit:
            return False
        row = self.counts[v]
        top = min(used + 1, self.limit)
        choices = [c for c in range(1, top + 1) if row[c] == 0]
        for c in choices:
            self._assign(v, c)
            if self._dfs(remaining - 1, max(used, c)):
                return True
            self._unassign(v, c)
        return False


def chromatic_number(g: Graph, budget: int = DEFAULT_NODE_BUDGET) -> tuple[int, Coloring]:
    """Exact chromatic number with a witness coloring.

    Upper bound from DSATUR, lower bound from a greedy clique whose vertices
    are pre-colored. Each improvement step is an exact DSATUR backtracking
    search; the final failing step proves optimality. Raises
    :class:`BudgetExceeded` instead of returning an unproven value.
    """
    if g.n == 0:
        return 0, Coloring(0, ())
    best = dsatur(g)
    ub = max(best)
    clique = greedy_clique(g)
    lb = len(clique)
    search = _Search(g, budget)
    while ub > lb:
        found = search.run(ub - 1, clique)
        if found is None:
            break
        best = found
        ub = max(found)
    return ub, Coloring(ub, tuple(canonical_form(best)))


def find_proper_coloring(
    g: Graph, q: int, rng: random.Random | None = None, budget: int = DEFAULT_NODE_BUDGET
) -> Coloring | None:
    """Some proper coloring with colors from ``1..q``, or ``None`` if none exists."""
    if q < 1:
        return Coloring(q, ()) if g.n == 0 else None
    found = _Search(g, budget, rng).run(q)
    return None if found is None else Coloring(q, tuple(found))


# --- enumeration ----------------------------------------------------------------


class ColoringStream:
    """Iterator over canonical proper ``q``-colorings in lexicographic order.

    Vertices are colored in id order and vertex ``v`` may open at most one new
    color beyond those already used, so each color-permutation class appears
    exactly once.
    """

    def __init__(self, g: Graph, q: int):
        if q < 1:
            raise ColoringError(f"palette size must be >= 1, got {q}")
        self.g = g
        self.q = q
        self.index = 0
        self._it = self._generate()

    def __iter__(self) -> Iterator[Coloring]:
        return self

    def __next__(self) -> Coloring:
        c = next(self._it)
        self.index += 1
        return c

    def _generate(self) -> Iterator[Coloring]:
        g, q, n = self.g, self.q, self.g.n
        if n == 0:
            yield Coloring(q, ())
            return
        lower = [[u for u in g.adj[v] if u < v] for v in range(n)]
        colors = [0] * n
        maxused = [0] * (n + 1)  # maxused[v]: colors used by vertices < v
        nxt = [1] * n  # next color to try at each depth
        v = 0
        while v >= 0:
            if v == n:
                yield Coloring(q, tuple(colors))
                v -= 1
                continue
            top = min(q, maxused[v] + 1)
            c = nxt[v]
            while c <= top and any(colors[u] == c for u in lower[v]):
                c += 1
            if c > top:
                nxt[v] = 1
                colors[v] = 0
                v -= 1
                continue
            colors[v] = c
            nxt[v] = c + 1
            maxused[v + 1] = max(maxused[v], c)
            v += 1

    def count(self) -> int:
        return sum(1 for _ in self)


def enumerate_proper_colorings(g: Graph, q: int) -> ColoringStream:
    return ColoringStream(g, q)


def remove_color_class(g: Graph, c: Coloring, a: int) -> Coloring:
    """Recolor every vertex of color ``a`` with the smallest other color its
    neighborhood lacks. Requires that no vertex of color ``a`` is critical."""
    from .chains import critical_vertices

    require_proper(g, c)
    if not 1 <= a <= c.q:
        raise ColoringError(f"color {a} outside palette 1..{c.q}")
    crit = critical_vertices(g, c)[a]
    if crit:
        raise ColoringError(f"color {a} has critical vertices {crit}; it cannot be removed")
    colors = list(c.colors)
    for v in c.color_class(a):
        around = {colors[u] for u in g.adj[v]}
        colors[v] = next(x for x in range(1, c.q + 1) if x != a and x not in around)
    return Coloring(c.q, tuple(colors))
