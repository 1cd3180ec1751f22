import json

import pytest
from hypothesis import given

from twoblock.digraph import (
    OrientedGraph,
    degree_summary,
    from_dict,
    from_json,
    induced_subgraph,
    load_graph,
    min_semidegree,
    reverse_graph,
    save_graph,
    to_dict,
    to_dot,
    to_json,
)
from twoblock.errors import DuplicateArc, GraphError, LoopArc, TwoCycle, VertexOutOfRange
from twoblock.generators import blowup, directed_triangle, regular_tournament

from .conftest import oriented_graphs


def test_triangle_is_valid():
    g = OrientedGraph(3, [(0, 1), (1, 2), (2, 0)])
    assert g.n == 3 and len(g.arcs) == 3
    assert g.out_neighbors(0) == (1,) and g.in_neighbors(0) == (2,)
    assert g.has_arc(2, 0) and not g.has_arc(0, 2)


@pytest.mark.parametrize("n, arcs, err", [
    (2, [(0, 1), (1, 0)], TwoCycle),
    (1, [(0, 0)], LoopArc),
    (2, [(0, 1), (0, 1)], DuplicateArc),
    (2, [(0, 2)], VertexOutOfRange),
    (-1, [], GraphError),
])
def test_invalid_graphs(n, arcs, err):
    with pytest.raises(err):
        OrientedGraph(n, arcs)


def test_graph_is_immutable():
    g = directed_triangle()
    with pytest.raises(AttributeError):
        g.n = 4


def test_degree_examples():
    assert min_semidegree(directed_triangle()) == 1
    assert min_semidegree(regular_tournament(5)) == 2
    s = degree_summary(blowup(directed_triangle(), 2))
    assert s.delta_zero == 2 and set(s.deg_out) == set(s.deg_in) == {2}


def test_empty_graph_degrees():
    s = degree_summary(OrientedGraph(0, []))
    assert s.delta_zero == 0 and s.deg_out == ()


def test_reverse_examples():
    assert reverse_graph(directed_triangle()) == OrientedGraph(3, [(0, 2), (2, 1), (1, 0)])
    assert reverse_graph(OrientedGraph(2, [(0, 1)])) == OrientedGraph(2, [(1, 0)])


@given(oriented_graphs())
def test_reverse_involution_and_degree_swap(g):
    r = reverse_graph(g)
    assert reverse_graph(r) == g
    assert degree_summary(r).delta_plus == degree_summary(g).delta_minus
    assert degree_summary(r).deg_in == degree_summary(g).deg_out


@given(oriented_graphs())
def test_masks_match_adjacency(g):
    for u in range(g.n):
        assert sorted(v for v in range(g.n) if g.out_mask[u] >> v & 1) == list(g.out_adj[u])
        assert sorted(v for v in range(g.n) if g.in_mask[u] >> v & 1) == list(g.in_adj[u])


def test_induced_subgraph_examples():
    sub, relabel = induced_subgraph(directed_triangle(), {0, 1})
    assert sub == OrientedGraph(2, [(0, 1)]) and relabel == {0: 0, 1: 1}
    t = regular_tournament(5)
    full, relabel = induced_subgraph(t, range(5))
    assert full == t and relabel == {v: v for v in range(5)}
    sub, _ = induced_subgraph(t, [0, 2, 4])
    assert len(sub.arcs) == 3


def test_induced_subgraph_relabels_sorted():
    g = OrientedGraph(5, [(4, 1), (1, 3), (0, 2)])
    sub, relabel = induced_subgraph(g, [4, 1, 3])
    assert relabel == {1: 0, 3: 1, 4: 2}
    assert sub == OrientedGraph(3, [(2, 0), (0, 1)])
    with pytest.raises(VertexOutOfRange):
        induced_subgraph(g, [7])


@given(oriented_graphs())
def test_json_round_trip(g):
    assert from_json(to_json(g)) == g
    assert from_dict(json.loads(json.dumps(to_dict(g)))) == g


def test_file_round_trip(tmp_path):
    g = regular_tournament(7)
    save_graph(g, tmp_path / "g.json")
    assert load_graph(tmp_path / "g.json") == g


@pytest.mark.parametrize("data", [{"arcs": []}, {"n": 2}, {"n": "2", "arcs": []}, {"n": 2, "arcs": [[0, 1, 2]]}, []])
def test_malformed_json(data):
    with pytest.raises(GraphError):
        from_dict(data)


def test_dot_export():
    g = OrientedGraph(4, [(1, 0), (0, 2)])
    assert to_dot(g) == "digraph {\n  3;\n  0 -> 2;\n  1 -> 0;\n}\n"
