import logging

import pytest
from hypothesis import given

from kempe.corpus import CorpusError, check_corpus_graph, corpus_names, load_corpus_graph
from kempe.graph import (
    Graph,
    GraphError,
    GraphSource,
    catlin,
    complete,
    cycle,
    generate,
    lexicographic_product,
    load_graph,
    parse_dimacs,
    parse_edge_list,
    path,
    random_gnp,
    random_tree,
    to_dimacs,
    to_edge_list,
    wheel,
)

from conftest import graphs


def test_dimacs_triangle(tmp_path):
    f = tmp_path / "k3.col"
    f.write_text("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    g = load_graph(GraphSource("dimacs-file", {"path": str(f)}))
    assert g.n == 3 and g.edge_count == 3
    assert g == complete(3)


def test_edge_list_self_loop_rejected(tmp_path):
    f = tmp_path / "loop.txt"
    f.write_text("0 1\n2 2\n")
    with pytest.raises(GraphError, match="line 2"):
        load_graph(GraphSource("edge-list-file", {"path": str(f)}))


def test_duplicate_edges_dropped_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        g = parse_edge_list("0 1\n1 0\n1 2\n")
    assert g.edge_count == 2
    assert "duplicate" in caplog.text


@pytest.mark.parametrize(
    "text",
    [
        "e 1 2\n",  # edge before header
        "p edge 3\n",
        "p edge 3 1\ne 1 x\n",
        "p edge 2 1\ne 1 3\n",  # out of range
        "p edge 2 1\nq 1 2\n",
        "",
    ],
)
def test_dimacs_malformed(text):
    with pytest.raises(GraphError):
        parse_dimacs(text)


def test_missing_file_and_bad_kind(tmp_path):
    with pytest.raises(GraphError):
        load_graph(GraphSource("dimacs-file", {"path": str(tmp_path / "nope.col")}))
    with pytest.raises(GraphError):
        GraphSource("url", {"path": "x"})
    with pytest.raises(GraphError):
        GraphSource("generator", {})


def test_generators_basic():
    g = cycle(5)
    assert (g.n, g.edge_count) == (5, 5)
    assert all(g.degree(v) == 2 for v in g.vertices)
    assert (complete(4).n, complete(4).edge_count) == (4, 6)
    assert path(4).edge_count == 3
    w = wheel(5)
    assert w.n == 6 and w.degree(5) == 5 and w.edge_count == 10


def test_random_gnp_is_deterministic():
    a = random_gnp(8, 0.5, seed=7)
    b = generate("random_gnp", n=8, p=0.5, seed=7)
    assert a == b
    assert a != random_gnp(8, 0.5, seed=8)


def test_random_tree_is_a_tree():
    for n in range(1, 16):
        t = random_tree(n, seed=n)
        assert t.edge_count == n - 1
        assert t == random_tree(n, seed=n)


@pytest.mark.parametrize(
    "family, params",
    [("cycle", {"n": 2}), ("complete", {"k": 0}), ("random_gnp", {"n": 3, "p": 1.5, "seed": 0}), ("nope", {}), ("path", {})],
)
def test_generator_parameter_errors(family, params):
    with pytest.raises(GraphError):
        generate(family, **params)


def test_catlin_degrees_by_brute_force():
    g = lexicographic_product(cycle(5), complete(2))
    assert g.n == 10
    for v in g.vertices:
        u, x = divmod(v, 2)
        # partner in own blob plus both vertices of the two neighboring blobs
        expected = {u * 2 + (1 - x)} | {((u + d) % 5) * 2 + y for d in (-1, 1) for y in (0, 1)}
        assert set(g.adj[v]) == expected
        assert g.degree(v) == 5


def test_lexicographic_identity():
    h = wheel(5)
    assert lexicographic_product(complete(1), h) == h


@pytest.mark.parametrize("n, k", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_catlin_shape(n, k):
    g = catlin(n, k)
    assert g.n == (2 * n + 1) * k
    assert all(g.degree(v) == (k - 1) + 2 * k for v in g.vertices)


def test_lexicographic_rejects_empty():
    with pytest.raises(GraphError):
        lexicographic_product(Graph.from_edges(0, []), complete(2))


@given(graphs(min_n=0))
def test_degree_sum(g):
    assert sum(g.degree(v) for v in g.vertices) == 2 * g.edge_count


@given(graphs(min_n=0))
def test_round_trip(g):
    assert parse_dimacs(to_dimacs(g)) == g
    assert parse_edge_list(to_edge_list(g)) == g


def test_graph_invariants_enforced():
    with pytest.raises(GraphError):
        Graph(2, ((1,), ()))  # asymmetric
    with pytest.raises(GraphError):
        Graph(2, ((1, 1), (0,)))


def test_corpus_koester():
    g = load_graph(GraphSource("corpus-name", {"name": "koester"}))
    assert g.n == 40 and g.edge_count == 80
    assert all(g.degree(v) == 4 for v in g.vertices)
    assert check_corpus_graph("koester", g) == []


def test_corpus_names_and_unknown():
    assert {"koester", "catlin_2_2", "catlin_2_3"} <= set(corpus_names())
    with pytest.raises(CorpusError):
        load_corpus_graph("petersen")


def test_corpus_catlin_matches_generator():
    assert load_corpus_graph("catlin_2_2") == catlin(2, 2)
    assert load_corpus_graph("catlin_2_3") == catlin(2, 3)
