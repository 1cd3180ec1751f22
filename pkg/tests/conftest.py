import json
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from twoblock.digraph import OrientedGraph, from_dict
from twoblock.embedder import ProofTrace, windows_for
from twoblock.paths import HostPath

FIXTURES = Path(__file__).parent / "fixtures"


@st.composite
def oriented_graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    arcs = []
    for u, v in combinations(range(n), 2):
        c = draw(st.integers(0, 2))
        if c == 1:
            arcs.append((u, v))
        elif c == 2:
            arcs.append((v, u))
    return OrientedGraph(n, arcs)


def path_graph(n, extra=()):
    return OrientedGraph(n, [(i, i + 1) for i in range(n - 1)] + list(extra))


def prop_ii_long_host():
    # P = 0..6 with 6 -> 2, detour 1 -> 7 -> 8 -> 9 off the path
    return OrientedGraph(10, [(i, i + 1) for i in range(6)] + [(6, 2), (1, 7), (7, 8), (8, 9)])


def prop_ii_short_host(guard=False):
    # P = 0..8 with 8 -> 3, detour 2 -> 9 -> 10 returning to v_0, v_1 (or to v_5)
    arcs = [(i, i + 1) for i in range(8)] + [(8, 3), (2, 9), (9, 10)]
    arcs += [(10, 5)] if guard else [(10, 0), (10, 1)]
    return OrientedGraph(11, arcs)


def trace_from(res, path, k, ell):
    """A ProofTrace for a CaseResult produced directly by a case function."""
    paths = {"P1": list(res.p1.verts), "P2": list(res.p2.verts)}
    paths.update(res.paths)
    return ProofTrace(res.case, tuple(path.verts), k, ell, windows_for(k, ell, path.length),
                      dict(res.witnesses), paths, res.subcase)


def load_cases():
    data = json.loads((FIXTURES / "cases.json").read_text())
    return [(c, from_dict(c["graph"]), HostPath(tuple(c["path"]))) for c in data]


@pytest.fixture(scope="session")
def case_fixtures():
    return load_cases()
