"""Reproduction suite: named checks with pass/fail verdicts and instance reports."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import oracles
from .chains import (
    AllEliminated,
    BackboneFound,
    all_pairs,
    critical_vertices,
    eliminate_critical_color,
    is_critical,
    kempe_chains,
    kempe_swap,
    neighbor_color_count,
)
from .clique import (
    FOUND,
    NONEXISTENT,
    KempeClique,
    find_kempe_clique,
    iter_correct_colorings,
    search_correct_coloring,
    verify_strong_immersion,
)
from .coloring import chromatic_number, enumerate_proper_colorings, is_proper
from .corpus import load_corpus_graph
from .graph import Graph, catlin, complete, cycle, path, random_gnp, random_tree, wheel
from .minor import grow_minor_from_clique, verify_minor_model


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        limit = f" / limit {self.limit:.0f}s" if self.limit else ""
        return f"{verdict} [{self.number:>2}] {self.name}: {self.detail} ({self.seconds:.2f}s{limit})"

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "limit_seconds": self.limit,
        }


@dataclass
class Context:
    """Shared state across checks: every clique seen, for the immersion check."""

    cliques: list[tuple[str, Graph, KempeClique]] = field(default_factory=list)

    def keep(self, label: str, g: Graph, clique: KempeClique | None) -> None:
        if clique is not None:
            self.cliques.append((label, g, clique))


def random_corpus(count: int = 200) -> list[Graph]:
    """Seeded G(n, p) graphs, n in 3..12, p cycling over 0.3, 0.5, 0.7."""
    return [random_gnp(3 + i % 10, (0.3, 0.5, 0.7)[i % 3], seed=i) for i in range(count)]


def small_connected_graphs(count: int = 300, seed: int = 9) -> list[Graph]:
    rng = random.Random(seed)
    out: list[Graph] = []
    while len(out) < count:
        n = rng.randint(2, 7)
        g = random_gnp(n, rng.choice((0.3, 0.4, 0.5, 0.6, 0.7, 0.8)), seed=rng.randrange(10**9))
        if _connected(g):
            out.append(g)
    return out


def _connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        for u in g.adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


# --- checks --------------------------------------------------------------------


def check_catlin_chromatic(ctx: Context) -> tuple[bool, str]:
    got = {}
    slow = []
    for n, k, expected in ((2, 2, 5), (2, 3, 8)):
        t = time.perf_counter()
        got[(n, k)] = chromatic_number(catlin(n, k))[0]
        if time.perf_counter() - t >= 10:
            slow.append((n, k))
        assert expected == 2 * k + -(-k // n)
    ok = got[(2, 2)] == 5 and got[(2, 3)] == 8 and not slow
    return ok, f"chi(C5[K2])={got[(2, 2)]} (want 5), chi(C5[K3])={got[(2, 3)]} (want 8)" + (f", slow: {slow}" if slow else "")


def check_catlin_gap(ctx: Context) -> tuple[bool, str]:
    g = catlin(2, 2)
    at5 = search_correct_coloring(g, 5, "exhaustive")
    at6 = search_correct_coloring(g, 6, "exhaustive")
    ctx.keep("catlin(2,2) q=6", g, at6.clique)
    ok = at5.status == NONEXISTENT and at6.status == FOUND
    return ok, (
        f"q=5 {at5.status} after {at5.stats.colorings_examined} canonical colorings; "
        f"q=6 {at6.status} at coloring #{at6.stats.colorings_examined}"
    )


def check_catlin_minor(ctx: Context) -> tuple[bool, str]:
    g = catlin(2, 2)
    for rank, (idx, c, clique) in enumerate(iter_correct_colorings(g, 6)):
        if rank >= 100:
            break
        ctx.keep(f"catlin(2,2) correct #{rank}", g, clique)
        model = grow_minor_from_clique(g, c, clique)
        if model is None:
            continue
        rep = verify_minor_model(g, model)
        if rep.valid and rep.hadwiger_lower_bound == 6:
            return True, f"valid K6 model on correct coloring #{rank} (stream index {idx}); set sizes {model.sizes()}"
    return False, "no valid K6 model within the first 100 correct 6-colorings"


def check_koester(ctx: Context) -> tuple[bool, str]:
    g = load_corpus_graph("koester")
    regular = all(g.degree(v) == 4 for v in g.vertices)
    chi = chromatic_number(g)[0]
    out = search_correct_coloring(g, 4, "kempe-walk", seed=0)
    ctx.keep("koester q=4", g, out.clique)
    ok = g.n == 40 and regular and chi == 4 and out.status == FOUND
    return ok, (
        f"n={g.n}, 4-regular={regular}, chi={chi}; kempe-walk q=4 {out.status} "
        f"({out.stats.swaps} swaps, {out.stats.restarts} restart(s))"
    )


def check_backbone_or_elimination(ctx: Context) -> tuple[bool, str]:
    failures = []
    runs = 0
    for idx, g in enumerate(random_corpus()):
        k, w = chromatic_number(g)
        for a in range(1, k + 1):
            for b in range(1, k + 1):
                if a == b:
                    continue
                runs += 1
                res = eliminate_critical_color(g, w, a, b)
                start = len(critical_vertices(g, w)[a])
                counts = (start,) + res.history
                if isinstance(res, AllEliminated):
                    failures.append((idx, a, b, "AllEliminated"))
                elif any(x <= y for x, y in zip(counts, counts[1:])):
                    failures.append((idx, a, b, f"critical count not decreasing {counts}"))
                elif res.swaps > start:
                    failures.append((idx, a, b, "too many swaps"))
    detail = f"{runs} ordered color pairs over 200 graphs, {len(failures)} failure(s)"
    if failures:
        detail += f"; first: {failures[0]}"
    return not failures, detail


def check_critical_invariants(ctx: Context) -> tuple[bool, str]:
    corpus = random_corpus()
    obs1_fail = []
    colorings_checked = 0
    witnesses = []
    for idx, g in enumerate(corpus):
        k, w = chromatic_number(g)
        witnesses.append(w)
        samples = [w]
        if g.n <= 8:
            stream = enumerate_proper_colorings(g, k)
            samples += [c for _, c in zip(range(200), stream)]
        for c in samples:
            colorings_checked += 1
            crit = critical_vertices(g, c)
            if crit.missing_colors() or len(crit.vertices()) < k:
                obs1_fail.append(idx)
    rng = random.Random(6)
    current = list(witnesses)
    swap_fail = []
    swaps = 0
    while swaps < 1000:
        i = rng.randrange(len(corpus))
        g, c = corpus[i], current[i]
        if c.q < 2:
            continue
        chain = rng.choice(kempe_chains(g, c, rng.choice(all_pairs(c.q))))
        swapped = kempe_swap(g, c, chain)
        swaps += 1
        problems = []
        if not is_proper(g, swapped):
            problems.append("improper")
        for v in g.vertices:
            if v in chain:
                if neighbor_color_count(g, c.colors, v) != neighbor_color_count(g, swapped.colors, v):
                    problems.append(f"neighbor colors changed at {v}")
                if is_critical(g, c, v) != is_critical(g, swapped, v):
                    problems.append(f"criticality changed at {v}")
            elif c[v] != swapped[v]:
                problems.append(f"non-member {v} recolored")
        again = next(ch for ch in kempe_chains(g, swapped, chain.pair) if chain.members[0] in ch)
        if again.members != chain.members or kempe_swap(g, swapped, again) != c:
            problems.append("double swap does not restore")
        if problems:
            swap_fail.append((i, problems[0]))
        current[i] = swapped
    ok = not obs1_fail and not swap_fail
    return ok, (
        f"{colorings_checked} chromatic colorings, {len(obs1_fail)} lacking a critical vertex per color; "
        f"{swaps} swaps, {len(swap_fail)} failure(s)"
    )


K_CRITICAL = [
    (cycle(5), 3), (cycle(7), 3), (cycle(9), 3),
    (complete(3), 3), (complete(4), 4), (complete(5), 5), (complete(6), 6),
    (wheel(5), 4), (wheel(7), 4),
]


def check_k_critical(ctx: Context) -> tuple[bool, str]:
    bad = []
    for g, k in K_CRITICAL:
        chi = chromatic_number(g)[0]
        delta = min(g.degree(v) for v in g.vertices)
        out = search_correct_coloring(g, chi, "exhaustive")
        ctx.keep(f"{g.name} q={chi}", g, out.clique)
        if chi != k or delta != k - 1 or out.status != FOUND:
            bad.append(f"{g.name}: chi={chi} delta={delta} {out.status}")
    return not bad, f"{len(K_CRITICAL)} graphs, {len(bad)} failure(s)" + (f": {bad}" if bad else "")


def uniquely_colorable_family() -> list[Graph]:
    fam = [path(n) for n in range(1, 16)]
    fam += [cycle(n) for n in range(4, 15, 2)]
    fam += [random_tree(n, seed) for n in range(2, 16) for seed in range(3)]
    fam += [complete(q) for q in range(1, 7)]
    return fam


def check_uniquely_colorable(ctx: Context) -> tuple[bool, str]:
    bad = []
    fam = uniquely_colorable_family()
    for g in fam:
        k, w = chromatic_number(g)
        classes = enumerate_proper_colorings(g, k).count()
        clique = find_kempe_clique(g, w)
        ctx.keep(f"{g.name} chromatic", g, clique)
        if classes != 1 or clique is None:
            bad.append(f"{g.name}: classes={classes} clique={'yes' if clique else 'no'}")
    return not bad, f"{len(fam)} graphs, {len(bad)} failure(s)" + (f": {bad[:3]}" if bad else "")


def check_oracle_equivalence(ctx: Context) -> tuple[bool, str]:
    disagreements = []
    searches = tested = 0
    for gi, g in enumerate(small_connected_graphs()):
        for q in range(1, 5):
            out = search_correct_coloring(g, q, "exhaustive")
            ctx.keep(f"small#{gi} q={q}", g, out.clique)
            searches += 1
            if (out.status == FOUND) != oracles.correct_coloring_exists(g, q):
                disagreements.append((gi, q, out.status))
            for c in enumerate_proper_colorings(g, q):
                if len(set(c.colors)) < q:
                    continue
                tested += 1
                clique = find_kempe_clique(g, c)
                ctx.keep(f"small#{gi} {c.colors}", g, clique)
                if (clique is not None) != oracles.has_kempe_clique(g, c.colors, q):
                    disagreements.append((gi, q, c.colors))
    return not disagreements, (
        f"{searches} searches and {tested} clique tests against brute force, {len(disagreements)} disagreement(s)"
    )


def check_immersion(ctx: Context) -> tuple[bool, str]:
    bad = []
    for label, g, clique in ctx.cliques:
        rep = verify_strong_immersion(g, clique)
        if not (rep.edge_disjoint and rep.anchors_internal_free):
            bad.append(label)
    ok = bool(ctx.cliques) and not bad
    return ok, f"{len(ctx.cliques)} cliques verified, {len(bad)} failure(s)" + (f": {bad[:3]}" if bad else "")


CHECKS: list[tuple[int, str, Callable[[Context], tuple[bool, str]], float | None]] = [
    (1, "catlin-chromatic", check_catlin_chromatic, 20),
    (2, "catlin-correct-coloring-gap", check_catlin_gap, 300),
    (3, "catlin-k6-minor", check_catlin_minor, 300),
    (4, "koester", check_koester, 600),
    (5, "backbone-or-elimination", check_backbone_or_elimination, 300),
    (6, "critical-invariants", check_critical_invariants, 120),
    (7, "k-critical-family", check_k_critical, 120),
    (8, "uniquely-colorable-family", check_uniquely_colorable, 60),
    (9, "oracle-equivalence", check_oracle_equivalence, 600),
    (10, "strong-immersion", check_immersion, None),
]


def run_check(number: int, ctx: Context) -> CheckResult:
    num, name, fn, limit = next(c for c in CHECKS if c[0] == number)
    t = time.perf_counter()
    try:
        ok, detail = fn(ctx)
    except Exception as exc:  # a crash is a failed check, reported with its cause
        ok, detail = False, f"error: {type(exc).__name__}: {exc}"
    secs = time.perf_counter() - t
    if limit is not None and secs >= limit:
        ok = False
        detail += f"; exceeded {limit:.0f}s"
    return CheckResult(num, name, ok, detail, secs, limit)


def run_checks(numbers: list[int] | None = None) -> list[CheckResult]:
    ctx = Context()
    wanted = numbers or [c[0] for c in CHECKS]
    # the immersion check audits cliques gathered by the others, so it runs last
    return [run_check(n, ctx) for n in sorted(wanted)]


# --- instance reports -------------------------------------------------------------


def instance_report(
    g: Graph,
    q_values: list[int] | None = None,
    budget: int | None = None,
    seed: int = 0,
    exhaustive_max_n: int = 10,
    workers: int = 1,
) -> dict:
    """Per-q search outcomes with clique, immersion and minor summaries.

    Defaults to probing ``chi .. chi+3``. Graphs above ``exhaustive_max_n``
    vertices use the Kempe walk, whose failures are evidence, not proof.
    """
    chi, witness = chromatic_number(g)
    if q_values is None:
        q_values = list(range(max(chi, 1), chi + 4))
    strategy = "exhaustive" if g.n <= exhaustive_max_n else "kempe-walk"
    per_q = []
    for q in q_values:
        out = search_correct_coloring(g, q, strategy, budget=budget, seed=seed, workers=workers)
        entry = {"q": q, "outcome": out.to_dict()}
        if out.clique is not None:
            entry["immersion"] = verify_strong_immersion(g, out.clique).to_dict()
            model = grow_minor_from_clique(g, out.coloring, out.clique)
            if model is None and strategy == "exhaustive":
                for rank, (_, c, clique) in enumerate(iter_correct_colorings(g, q)):
                    if rank >= 100:
                        break
                    model = grow_minor_from_clique(g, c, clique)
                    if model is not None:
                        break
            entry["minor"] = (
                {"model": model.to_dict(), **verify_minor_model(g, model).to_dict()}
                if model is not None
                else {"model": None, "note": "growth heuristic gave up"}
            )
        per_q.append(entry)
    return {
        "graph": {"name": g.name, "n": g.n, "edges": g.edge_count},
        "chi": chi,
        "witness": list(witness.colors),
        "strategy": strategy,
        "results": per_q,
    }
