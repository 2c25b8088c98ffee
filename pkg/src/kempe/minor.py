"""Growing complete-graph minor models from Kempe clique anchors."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .chains import ColorPair
from .clique import KempeClique
from .coloring import Coloring
from .graph import Graph

DEFAULT_NODE_LIMIT = 10**4


@dataclass(frozen=True)
class MinorModel:
    q: int
    branch_sets: dict[int, frozenset[int]]
    seed_map: dict[int, int]

    def restricted(self, keep) -> MinorModel:
        """The sub-model on the given colors, relabelled ``1..len(keep)``."""
        keep = sorted(keep)
        return MinorModel(
            len(keep),
            {i + 1: self.branch_sets[k] for i, k in enumerate(keep)},
            {i + 1: self.seed_map[k] for i, k in enumerate(keep)},
        )

    def sizes(self) -> list[int]:
        return sorted(len(s) for s in self.branch_sets.values())

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "branch_sets": {str(k): sorted(v) for k, v in sorted(self.branch_sets.items())},
            "seeds": {str(k): v for k, v in sorted(self.seed_map.items())},
        }


@dataclass(frozen=True)
class MinorReport:
    valid: bool
    violations: tuple[str, ...]
    hadwiger_lower_bound: int  # q when valid, 0 when the model certifies nothing

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": list(self.violations),
            "hadwiger_lower_bound": self.hadwiger_lower_bound,
        }


def _connected(g: Graph, vs: frozenset[int]) -> bool:
    if not vs:
        return False
    start = min(vs)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if u in vs and u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(vs)


def verify_minor_model(g: Graph, model: MinorModel) -> MinorReport:
    violations = []
    keys = sorted(model.branch_sets)
    if keys != list(range(1, model.q + 1)):
        violations.append(f"branch sets are labelled {keys}, expected 1..{model.q}")
    where: dict[int, int] = {}
    for k in keys:
        bs = model.branch_sets[k]
        bad = sorted(v for v in bs if not 0 <= v < g.n)
        if bad:
            violations.append(f"set {k} holds non-vertices {bad}")
            continue
        for v in sorted(bs):
            if v in where:
                violations.append(f"vertex {v} lies in sets {where[v]} and {k}")
            else:
                where[v] = k
        if model.seed_map.get(k) not in bs:
            violations.append(f"set {k} does not contain its seed {model.seed_map.get(k)}")
        if not _connected(g, bs):
            violations.append(f"set {k} is empty or disconnected")
    for a in keys:
        for b in keys:
            if a < b and not any(u in model.branch_sets[b] for v in model.branch_sets[a] if 0 <= v < g.n for u in g.adj[v]):
                violations.append(f"no edge joins sets {a} and {b}")
    ok = not violations
    return MinorReport(ok, tuple(violations), model.q if ok else 0)


def grow_minor_from_clique(
    g: Graph, c: Coloring, clique: KempeClique, node_limit: int = DEFAULT_NODE_LIMIT
) -> MinorModel | None:
    """Grow disjoint connected branch sets around the clique anchors.

    Sets start as single anchors. Pairs are visited by ascending backbone
    length; a pair whose sets already touch costs nothing, otherwise a prefix
    of the backbone's free internal vertices joins the first set and a suffix
    joins the second, preferring the cut that consumes the fewest vertices.
    Backtracks over cuts and pair order up to ``node_limit`` nodes. ``None``
    means the heuristic gave up, not that no minor exists.
    """
    q = clique.q
    owner: dict[int, int] = {v: k for k, v in clique.anchors.items()}
    members: dict[int, set[int]] = {k: {v} for k, v in clique.anchors.items()}
    order = sorted(clique.backbones, key=lambda p: (clique.backbones[p].length, p))
    nodes = 0
    visited: set[frozenset] = set()

    def touching(a: int, b: int) -> bool:
        return any(owner.get(u) == b for v in members[a] for u in g.adj[v])

    def cuts(p: ColorPair) -> list[tuple[list[int], list[int]]]:
        inner = list(clique.backbones[p].internal())
        if clique.backbones[p].anchors[0] != clique.anchors[p.i]:
            inner.reverse()
        m = len(inner)
        out = []
        for s in range(m + 1):
            for t in range(s, m + 1):
                head, tail = inner[:s], inner[t:]
                if all(owner.get(v, p.i) == p.i for v in head) and all(owner.get(v, p.j) == p.j for v in tail):
                    out.append((head, tail))
        out.sort(key=lambda ht: (len(ht[0]) + len(ht[1]), len(ht[0])))
        return out

    def place(vs: list[int], k: int) -> list[int]:
        added = [v for v in vs if v not in owner]
        for v in added:
            owner[v] = k
            members[k].add(v)
        return added

    def undo(added: list[int]) -> None:
        for v in added:
            members[owner.pop(v)].discard(v)

    def dfs() -> bool:
        nonlocal nodes
        pending = [p for p in order if not touching(p.i, p.j)]
        if not pending:
            return True
        state = frozenset(owner.items())
        if state in visited:
            return False
        visited.add(state)
        for p in pending:
            for head, tail in cuts(p):
                nodes += 1
                if nodes > node_limit:
                    return False
                added = place(head, p.i) + place(tail, p.j)
                if touching(p.i, p.j) and dfs():
                    return True
                undo(added)
                if nodes > node_limit:
                    return False
        return False

    if not dfs():
        return None
    return MinorModel(
        q,
        {k: frozenset(members[k]) for k in range(1, q + 1)},
        dict(sorted(clique.anchors.items())),
    )
