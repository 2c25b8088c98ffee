"""Brute-force reference implementations for cross-checking on small graphs.

Nothing here imports the search code it is meant to check: colorings are
plain tuples, chains come from a union-find over edges, and every search is
a full enumeration.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .graph import Graph


def proper_assignments(g: Graph, q: int) -> Iterator[tuple[int, ...]]:
    """Every proper assignment ``V -> {1..q}``, no symmetry reduction."""
    edges = g.edges()
    for colors in itertools.product(range(1, q + 1), repeat=g.n):
        if all(colors[u] != colors[v] for u, v in edges):
            yield colors


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    for q in range(1, g.n + 1):
        if next(proper_assignments(g, q), None) is not None:
            return q
    raise AssertionError("unreachable")


def critical(g: Graph, colors: Sequence[int], q: int) -> list[int]:
    out = []
    for v in range(g.n):
        others = set(range(1, q + 1)) - {colors[v]}
        if others <= {colors[u] for u in g.adj[v]}:
            out.append(v)
    return out


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def same_chain(g: Graph, colors: Sequence[int], u: int, v: int, pair: tuple[int, int] | None = None) -> bool:
    """Whether ``u`` and ``v`` share a chain of ``pair`` (default: their own colors)."""
    a, b = pair if pair is not None else (colors[u], colors[v])
    parent = list(range(g.n))
    for x, y in g.edges():
        if {colors[x], colors[y]} == {a, b}:
            parent[_find(parent, x)] = _find(parent, y)
    return _find(parent, u) == _find(parent, v)


def has_kempe_clique(g: Graph, colors: Sequence[int], q: int) -> bool:
    """Try every transversal of critical vertices, one per color."""
    if set(colors) != set(range(1, q + 1)):
        return False
    crit = critical(g, colors, q)
    per_color = [[v for v in crit if colors[v] == k] for k in range(1, q + 1)]
    for choice in itertools.product(*per_color):
        if all(same_chain(g, colors, x, y) for x, y in itertools.combinations(choice, 2)):
            return True
    return False


def correct_coloring_exists(g: Graph, q: int) -> bool:
    return any(has_kempe_clique(g, c, q) for c in proper_assignments(g, q))


def count_proper(g: Graph, q: int) -> int:
    return sum(1 for _ in proper_assignments(g, q))


def canonical_classes(g: Graph, q: int) -> set[tuple[int, ...]]:
    """Proper assignments modulo color permutation, as first-use relabelings."""
    out = set()
    for colors in proper_assignments(g, q):
        relabel: dict[int, int] = {}
        out.add(tuple(relabel.setdefault(c, len(relabel) + 1) for c in colors))
    return out


def has_complete_minor(g: Graph, q: int) -> bool:
    """Assign each vertex to one of ``q`` branch sets or to none and test the model.

    Set labels are opened in vertex order, which removes label symmetry only.
    """
    if q == 0:
        return True
    n = g.n
    label = [0] * n

    def valid(used: int) -> bool:
        if used < q:
            return False
        sets = [{v for v in range(n) if label[v] == k} for k in range(1, q + 1)]
        for s in sets:
            start = next(iter(s))
            seen = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in g.adj[x]:
                    if y in s and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if seen != s:
                return False
        for a, b in itertools.combinations(range(q), 2):
            if not any(y in sets[b] for x in sets[a] for y in g.adj[x]):
                return False
        return True

    def rec(v: int, used: int) -> bool:
        if used + (n - v) < q:
            return False
        if v == n:
            return valid(used)
        for k in range(0, min(used + 1, q) + 1):
            label[v] = k
            if rec(v + 1, max(used, k)):
                return True
        label[v] = 0
        return False

    return rec(0, 0)
