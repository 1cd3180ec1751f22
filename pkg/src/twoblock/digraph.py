"""Oriented graphs: validated construction, degrees, transposition, I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .errors import DuplicateArc, GraphError, LoopArc, TwoCycle, VertexOutOfRange


class OrientedGraph:
    """Loop-free digraph without anti-parallel arcs on vertices ``0..n-1``.

    Both adjacency directions are kept sorted, plus one bitmask per vertex
    for each direction (bit ``v`` of ``out_mask[u]`` is set iff ``u -> v``).
    Instances are immutable; equality compares ``(n, arcs)`` only.
    """

    __slots__ = ("n", "arcs", "out_adj", "in_adj", "out_mask", "in_mask")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        seen: set[tuple[int, int]] = set()
        for arc in arcs:
            u, v = int(arc[0]), int(arc[1])
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"arc ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise LoopArc(f"loop at vertex {u}")
            if (u, v) in seen:
                raise DuplicateArc(f"arc ({u}, {v}) given twice")
            if (v, u) in seen:
                raise TwoCycle(f"both ({u}, {v}) and ({v}, {u}) given")
            seen.add((u, v))
        out_adj: list[list[int]] = [[] for _ in range(n)]
        in_adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in seen:
            out_adj[u].append(v)
            in_adj[v].append(u)
        set_ = object.__setattr__
        set_(self, "n", n)
        set_(self, "arcs", frozenset(seen))
        set_(self, "out_adj", tuple(tuple(sorted(a)) for a in out_adj))
        set_(self, "in_adj", tuple(tuple(sorted(a)) for a in in_adj))
        set_(self, "out_mask", tuple(_mask(a) for a in out_adj))
        set_(self, "in_mask", tuple(_mask(a) for a in in_adj))

    def __setattr__(self, name, value):
        raise AttributeError("OrientedGraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, OrientedGraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"OrientedGraph(n={self.n}, arcs={len(self.arcs)})"

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self.out_adj[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self.in_adj[v]

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)


def iter_bits(m: int):
    """Indices of the set bits of ``m``, lowest first."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def build_graph(n: int, arcs: Iterable[tuple[int, int]]) -> OrientedGraph:
    return OrientedGraph(n, arcs)


@dataclass(frozen=True)
class DegreeSummary:
    deg_out: tuple[int, ...]
    deg_in: tuple[int, ...]
    delta_plus: int
    delta_minus: int
    delta_zero: int


def degree_summary(g: OrientedGraph) -> DegreeSummary:
    """Per-vertex degrees and the three minima (all 0 for the empty graph)."""
    deg_out = tuple(len(a) for a in g.out_adj)
    deg_in = tuple(len(a) for a in g.in_adj)
    dp = min(deg_out, default=0)
    dm = min(deg_in, default=0)
    return DegreeSummary(deg_out, deg_in, dp, dm, min(dp, dm))


def min_semidegree(g: OrientedGraph) -> int:
    return degree_summary(g).delta_zero


def reverse_graph(g: OrientedGraph) -> OrientedGraph:
    return OrientedGraph(g.n, ((v, u) for u, v in g.arcs))


def induced_subgraph(g: OrientedGraph, vertices: Iterable[int]) -> tuple[OrientedGraph, dict[int, int]]:
    """Subgraph induced by ``vertices``, relabelled ``0..|S|-1`` in sorted order.

    Returns the graph and the old-to-new label map.
    """
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")
    relabel = {old: new for new, old in enumerate(keep)}
    arcs = [(relabel[u], relabel[v]) for u, v in g.arcs if u in relabel and v in relabel]
    return OrientedGraph(len(keep), arcs), relabel


# -- serialization -----------------------------------------------------------

def to_dict(g: OrientedGraph) -> dict:
    return {"n": g.n, "arcs": [list(a) for a in g.sorted_arcs()]}


def from_dict(data: dict) -> OrientedGraph:
    try:
        n = data["n"]
        arcs = data["arcs"]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"graph JSON needs 'n' and 'arcs': {exc}") from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError("'n' must be an integer")
    pairs = []
    for a in arcs:
        if not isinstance(a, (list, tuple)) or len(a) != 2 or not all(isinstance(x, int) for x in a):
            raise GraphError(f"malformed arc {a!r}")
        pairs.append((a[0], a[1]))
    return OrientedGraph(n, pairs)


def to_json(g: OrientedGraph) -> str:
    return json.dumps(to_dict(g), separators=(",", ":"))


def from_json(text: str) -> OrientedGraph:
    return from_dict(json.loads(text))


def load_graph(path) -> OrientedGraph:
    with open(path) as fh:
        return from_dict(json.load(fh))


def save_graph(g: OrientedGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_json(g))
        fh.write("\n")


def to_dot(g: OrientedGraph) -> str:
    lines = ["digraph {"]
    lines += [f"  {v};" for v in range(g.n) if not g.out_adj[v] and not g.in_adj[v]]
    lines += [f"  {u} -> {v};" for u, v in g.sorted_arcs()]
    lines.append("}")
    return "\n".join(lines) + "\n"
