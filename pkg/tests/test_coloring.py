import math
import random

import pytest
from hypothesis import given, strategies as st

from kempe import oracles
from kempe.chains import critical_vertices
from kempe.coloring import (
    BudgetExceeded,
    Coloring,
    ColoringError,
    canonical_form,
    chromatic_number,
    dsatur,
    enumerate_proper_colorings,
    find_proper_coloring,
    greedy_clique,
    is_canonical,
    is_proper,
    remove_color_class,
)
from kempe.corpus import load_corpus_graph
from kempe.graph import Graph, catlin, complete, cycle, random_gnp, wheel

from conftest import graphs


def test_is_proper_examples(c5):
    assert is_proper(c5, Coloring.of([1, 2, 1, 2, 3]))
    assert not is_proper(c5, Coloring.of([1, 2, 1, 2, 1]))  # v4-v0


def test_is_proper_requires_total(c5):
    with pytest.raises(ColoringError):
        is_proper(c5, Coloring.of([1, 2, 1]))


def test_coloring_validation():
    with pytest.raises(ColoringError):
        Coloring(2, (1, 3))
    with pytest.raises(ColoringError):
        Coloring(2, (0, 1))
    assert Coloring.from_json("[1, 2, 1]").q == 2
    with pytest.raises(ColoringError):
        Coloring.from_json('{"a": 1}')


def test_catlin_rejects_random_four_colorings():
    g = catlin(2, 2)
    rng = random.Random(0)
    for _ in range(500):
        assert not is_proper(g, Coloring(4, tuple(rng.randint(1, 4) for _ in range(g.n))))


@pytest.mark.parametrize(
    "g, chi",
    [
        (cycle(5), 3),
        (cycle(6), 2),
        (complete(5), 5),
        (wheel(5), 4),
        (wheel(6), 3),
        (catlin(2, 2), 5),
        (catlin(2, 3), 8),
        (catlin(1, 2), 6),  # C3[K2] = K6
    ],
)
def test_chromatic_number_known(g, chi):
    k, w = chromatic_number(g)
    assert k == chi
    assert w.q == k and is_proper(g, w) and w.uses_all_colors()


def test_catlin_formula_small_cases():
    for n, k in [(1, 1), (2, 1), (2, 2), (3, 2), (2, 3)]:
        assert chromatic_number(catlin(n, k))[0] == 2 * k + math.ceil(k / n)


def test_koester_chromatic_number():
    assert chromatic_number(load_corpus_graph("koester"))[0] == 4


def test_koester_is_four_critical():
    g = load_corpus_graph("koester")
    for u, v in g.edges():
        h = Graph.from_edges(g.n, [e for e in g.edges() if e != (u, v)])
        assert find_proper_coloring(h, 3) is not None


def test_koester_is_planar():
    nx = pytest.importorskip("networkx")
    g = load_corpus_graph("koester")
    assert nx.check_planarity(nx.Graph(g.edges()))[0]


def test_degenerate_chromatic_numbers():
    assert chromatic_number(Graph.from_edges(0, [])) == (0, Coloring(0, ()))
    k, w = chromatic_number(Graph.from_edges(4, []))
    assert k == 1 and w.colors == (1, 1, 1, 1)


def test_chromatic_budget_is_explicit():
    with pytest.raises(BudgetExceeded):
        chromatic_number(catlin(2, 3), budget=5)


@given(graphs(max_n=8))
def test_chromatic_number_matches_brute_force(g):
    k, w = chromatic_number(g)
    assert k == oracles.chromatic_number(g)
    assert is_proper(g, w)


def test_chromatic_number_deterministic():
    g = random_gnp(11, 0.5, seed=3)
    assert chromatic_number(g) == chromatic_number(g)


def test_dsatur_and_clique_bounds():
    for seed in range(20):
        g = random_gnp(10, 0.5, seed)
        colors = dsatur(g)
        assert is_proper(g, Coloring.of(colors))
        clique = greedy_clique(g)
        assert all(g.has_edge(a, b) for a in clique for b in clique if a != b)
        assert len(clique) <= chromatic_number(g)[0] <= max(colors)


# canonical enumeration -----------------------------------------------------------

# expected values frozen from an exhaustive enumeration of all q^n assignments
@pytest.mark.parametrize(
    "g, q, canonical, labelled",
    [
        (complete(3), 3, 1, 6),
        (cycle(4), 2, 1, 2),
        (cycle(5), 3, 5, 30),
        (cycle(5), 4, 10, 240),
        (wheel(5), 4, 5, 120),
        (catlin(2, 2), 5, 32, 3840),
        (catlin(2, 2), 6, 292, 210240),
    ],
)
def test_enumeration_counts(g, q, canonical, labelled):
    stream = enumerate_proper_colorings(g, q)
    seen = list(stream)
    assert len(seen) == canonical == stream.index
    assert len(set(seen)) == canonical
    assert all(is_proper(g, c) and is_canonical(c.colors) for c in seen)
    expanded = sum(math.perm(q, len(c.used_colors())) for c in seen)
    assert expanded == labelled


def test_enumeration_order_is_lexicographic():
    seen = [c.colors for c in enumerate_proper_colorings(cycle(6), 3)]
    assert seen == sorted(seen)


def test_enumeration_empty_when_uncolorable():
    assert enumerate_proper_colorings(complete(4), 3).count() == 0
    with pytest.raises(ColoringError):
        enumerate_proper_colorings(cycle(5), 0)


@given(graphs(max_n=6), st.integers(min_value=1, max_value=4))
def test_enumeration_matches_oracle(g, q):
    got = [c.colors for c in enumerate_proper_colorings(g, q)]
    assert set(got) == oracles.canonical_classes(g, q)
    assert len(got) == len(set(got))
    assert sum(math.perm(q, len(set(c))) for c in got) == oracles.count_proper(g, q)


def test_canonical_form():
    assert canonical_form([3, 3, 1, 2, 1]) == (1, 1, 2, 3, 2)
    assert is_canonical((1, 2, 1, 3)) and not is_canonical((2, 1))


# remove_color_class --------------------------------------------------------------


def test_remove_color_class_example(c5):
    out = remove_color_class(c5, Coloring(4, (1, 2, 1, 2, 4)), 4)
    assert out.colors == (1, 2, 1, 2, 3)
    assert is_proper(c5, out)


def test_remove_unused_color_is_identity(c5):
    c = Coloring(4, (1, 2, 1, 2, 3))
    assert remove_color_class(c5, c, 4) == c


def test_remove_color_class_refuses_critical():
    with pytest.raises(ColoringError, match="critical"):
        remove_color_class(complete(4), Coloring.of([1, 2, 3, 4]), 1)


@given(graphs(max_n=9), st.integers(min_value=0, max_value=10**6))
def test_remove_color_class_postconditions(g, seed):
    rng = random.Random(seed)
    k, _ = chromatic_number(g)
    q = k + 1
    c = find_proper_coloring(g, q, rng)
    crit = critical_vertices(g, c)
    for a in range(1, q + 1):
        if crit[a]:
            continue
        out = remove_color_class(g, c, a)
        assert is_proper(g, out)
        assert a not in out.colors
        assert all(out[v] == c[v] for v in g.vertices if c[v] != a)


def test_every_color_has_a_critical_vertex_at_chi():
    # a chromatic coloring never lets remove_color_class apply
    for seed in range(150):
        g = random_gnp(3 + seed % 8, (0.3, 0.5, 0.7)[seed % 3], seed)
        k, w = chromatic_number(g)
        for a in range(1, k + 1):
            with pytest.raises(ColoringError):
                remove_color_class(g, w, a)
