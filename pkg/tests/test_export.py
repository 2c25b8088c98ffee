import json

from kempe import export
from kempe.chains import find_backbone
from kempe.clique import find_kempe_clique, iter_correct_colorings
from kempe.graph import catlin
from kempe.minor import grow_minor_from_clique


def test_report_envelope(c5):
    out = json.loads(export.dumps(export.report("chi", c5, chi=3)))
    assert out == {"schema": "1", "command": "chi", "graph": {"name": "cycle(5)", "n": 5, "edges": 5}, "chi": 3}


def test_dumps_is_stable(c5):
    a = export.dumps(export.report("x", c5, b=[1, 2], a={"k": 1}))
    assert a == export.dumps(export.report("x", c5, b=[1, 2], a={"k": 1}))
    assert a.endswith("\n")


def test_coloring_dot_marks_critical_and_ribbons(c5, c5_coloring):
    bb = find_backbone(c5, c5_coloring, 0, 3)
    dot = export.coloring_dot(c5, c5_coloring, [bb])
    assert dot.startswith('graph "cycle(5)" {') and dot.rstrip().endswith("}")
    # vertices 0, 3, 4 are critical; 1 and 2 are not
    assert '0 [label="0:1", fillcolor="#e6194b", shape=box]' in dot
    assert "1 [label=\"1:2\", fillcolor=\"#3cb44b\", shape=circle]" in dot
    ribbons = [line for line in dot.splitlines() if export.RIBBON in line]
    assert len(ribbons) == 3


def test_clique_dot_frames_anchors_only(c5, c5_coloring):
    clique = find_kempe_clique(c5, c5_coloring)
    dot = export.clique_dot(c5, c5_coloring, clique)
    boxed = {int(line.split()[0]) for line in dot.splitlines() if "shape=box" in line}
    assert boxed == set(clique.anchors.values())
    assert sum(export.RIBBON in line for line in dot.splitlines()) == 5


def test_minor_dot_clusters():
    g = catlin(2, 2)
    _, c, clique = next(iter_correct_colorings(g, 6))
    model = grow_minor_from_clique(g, c, clique)
    dot = export.minor_dot(g, model)
    assert dot.count("subgraph cluster_") == 6
    assert dot.count(" -- ") == g.edge_count


def test_palette_wraps():
    assert export.fill(1) == export.fill(1 + len(export.PALETTE))
