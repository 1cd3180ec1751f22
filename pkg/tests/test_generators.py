import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoblock.digraph import OrientedGraph, degree_summary, min_semidegree
from twoblock.errors import AttemptsExhausted, EvenOrder, GeneratorError, Unsatisfiable
from twoblock.generators import (
    END_VARIANTS,
    GeneratorSpec,
    blowup,
    circulant,
    directed_cycle,
    directed_path,
    directed_triangle,
    end_confined_feasible,
    end_confined_graph,
    generate,
    named_graph,
    near_regular_tournament,
    planted_path_graph,
    random_oriented_graph,
    random_tournament,
    random_with_min_semidegree,
    regular_tournament,
)
from twoblock.paths import is_directed_path


def is_tournament(g):
    return len(g.arcs) == g.n * (g.n - 1) // 2


def test_regular_tournament_examples():
    assert regular_tournament(3) == directed_triangle()
    assert min_semidegree(regular_tournament(5)) == 2
    t7 = regular_tournament(7)
    s = degree_summary(t7)
    assert len(t7.arcs) == 21 and set(s.deg_out) == set(s.deg_in) == {3}


def test_regular_tournament_needs_odd_order():
    with pytest.raises(EvenOrder):
        regular_tournament(6)
    with pytest.raises(GeneratorError):
        regular_tournament(1)


@pytest.mark.parametrize("n", range(1, 12))
def test_near_regular_tournament(n):
    g = near_regular_tournament(n)
    s = degree_summary(g)
    assert is_tournament(g)
    assert set(s.deg_out) | set(s.deg_in) <= {(n - 1) // 2, n // 2}


def test_small_constructions():
    assert directed_path(3) == OrientedGraph(3, [(0, 1), (1, 2)])
    assert directed_cycle(4).has_arc(3, 0)
    with pytest.raises(GeneratorError):
        directed_cycle(2)


def test_circulant():
    g = circulant(7, [1, 2, 3])
    assert min_semidegree(g) == 3 and is_tournament(g)
    with pytest.raises(GeneratorError):
        circulant(6, [1, 5])
    with pytest.raises(GeneratorError):
        circulant(5, [0])


def test_blowup_examples():
    assert blowup(directed_triangle(), 1) == directed_triangle()
    b = blowup(directed_triangle(), 2)
    assert b.n == 6 and len(b.arcs) == 12 and min_semidegree(b) == 2
    assert b.has_arc(0, 2) and b.has_arc(1, 3) and not b.has_arc(0, 1)
    with pytest.raises(GeneratorError):
        blowup(directed_triangle(), 0)


@pytest.mark.parametrize("m", range(1, 6))
def test_blowup_counts(m):
    b = blowup(directed_triangle(), m)
    assert len(b.arcs) == 3 * m * m and min_semidegree(b) == m


def test_random_oriented_examples():
    assert random_oriented_graph(8, 0.0, 1).arcs == frozenset()
    assert is_tournament(random_oriented_graph(8, 1.0, 1))
    assert random_oriented_graph(10, 0.4, 7) == random_oriented_graph(10, 0.4, 7)
    assert random_tournament(9, 3) == random_tournament(9, 3)
    with pytest.raises(GeneratorError):
        random_oriented_graph(3, 1.5, 0)


@pytest.mark.parametrize("seed", range(10))
def test_min_semidegree_five_vertices_forces_regular_tournament(seed):
    g = random_with_min_semidegree(5, 2, seed)
    s = degree_summary(g)
    assert is_tournament(g) and set(s.deg_out) == set(s.deg_in) == {2}


def test_min_semidegree_unsatisfiable():
    with pytest.raises(Unsatisfiable):
        random_with_min_semidegree(4, 2, 0)
    with pytest.raises(Unsatisfiable):
        random_with_min_semidegree(4, -1, 0)


def test_min_semidegree_without_fallback():
    # Random tournaments on 15 vertices are essentially never regular.
    with pytest.raises(AttemptsExhausted):
        random_with_min_semidegree(15, 7, 0, max_attempts=2, fallback=False)
    assert min_semidegree(random_with_min_semidegree(15, 7, 0)) == 7


@settings(max_examples=60)
@given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (n - 1) // 2))),
       st.integers(0, 2**32), st.floats(0, 1))
def test_min_semidegree_postcondition(nd, seed, prune):
    n, d = nd
    g = random_with_min_semidegree(n, d, seed, prune=prune)
    assert g.n == n and min_semidegree(g) >= d
    assert g == random_with_min_semidegree(n, d, seed, prune=prune)


def test_planted_path_graph():
    g = planted_path_graph(15, 4, 2, in_first={5, 6, 7, 12, 13})
    assert is_directed_path(g, range(15))
    assert min_semidegree(g) >= 4
    assert set(g.in_adj[0]) <= {5, 6, 7, 12, 13}


def test_planted_path_graph_gives_up():
    with pytest.raises(AttemptsExhausted):
        planted_path_graph(9, 3, 0, in_first={4, 5}, sweeps=5)


@pytest.mark.parametrize("variant", END_VARIANTS)
def test_end_confined_graph(variant):
    n, window, d = 28, 8, 12
    g = end_confined_graph(n, window, d, 5, variant)
    t = n - 1
    head, tail = set(range(window)), set(range(t - window + 1, t + 1))
    middle = set(range(window, t - window + 1))
    assert is_directed_path(g, range(n)) and min_semidegree(g) >= d
    assert set(g.in_adj[0]) <= head | tail
    if "back" not in variant:
        assert set(g.out_adj[t]) <= head | tail
    if variant.startswith("closing"):
        assert g.has_arc(t, 0)
    if variant == "skip-first":
        assert not g.has_arc(t, 1) and not set(g.out_adj[1]) & middle


def test_end_confined_feasibility():
    # plain variant: vertex 0 can have at most 2*window - 3 in-neighbours
    assert end_confined_feasible(20, 4, 5, "plain") and not end_confined_feasible(20, 4, 6, "plain")
    assert end_confined_feasible(20, 4, 6, "closing") and end_confined_feasible(20, 4, 6, "closing-back")
    assert not end_confined_feasible(11, 4, 6, "closing")


def test_end_confined_rejects_unknown_variant():
    with pytest.raises(GeneratorError):
        end_confined_graph(10, 2, 2, 0, "sideways")


def test_generate_dispatch():
    assert generate(GeneratorSpec("regular_tournament", {"n": 5})) == regular_tournament(5)
    assert generate(GeneratorSpec("blowup", {"base": "triangle", "m": 2})) == blowup(directed_triangle(), 2)
    assert generate(GeneratorSpec("blowup", {"base": "tournament5", "m": 2})).n == 10
    g = generate(GeneratorSpec("random_semidegree", {"n": 14, "d": 5}, seed=42))
    assert min_semidegree(g) >= 5
    assert generate(GeneratorSpec("circulant", {"n": 7, "offsets": [1, 2]})).n == 7
    with pytest.raises(GeneratorError):
        GeneratorSpec("petersen")
    with pytest.raises(GeneratorError):
        named_graph("cube")
