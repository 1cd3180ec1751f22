"""Exact longest directed path by depth-first branch and bound.

Visited sets and candidate sets are Python ints used as bitsets.  A partial
path is abandoned when its length plus the number of unvisited vertices still
reachable from its endpoint cannot beat the best path found so far.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Optional

from .digraph import OrientedGraph, iter_bits as _bits
from .errors import BudgetExhausted, PathError
from .paths import HostPath, is_directed_path


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = 20_000_000
    time_limit: float = 300.0

    def __post_init__(self):
        if self.node_limit <= 0 or self.time_limit <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = SearchBudget()


def _reach(out_mask, src: int, avail: int) -> int:
    """Bitset of vertices in ``avail`` reachable from ``src`` (``src`` excluded)."""
    reach = 0
    frontier = out_mask[src] & avail
    while frontier:
        reach |= frontier
        nxt = 0
        for b in _bits(frontier):
            nxt |= out_mask[b]
        frontier = nxt & avail & ~reach
    return reach


class _Search:
    def __init__(self, g: OrientedGraph, allowed: int, budget: SearchBudget):
        self.out_mask = g.out_mask
        self.allowed = allowed
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.time_limit
        self.best: list[int] = []
        self.target = -1  # stop as soon as a path of this length is found

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise BudgetExhausted("node limit reached", partial=list(self.best), nodes=self.nodes)
        if not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise BudgetExhausted("time limit reached", partial=list(self.best), nodes=self.nodes)

    def run_from(self, start: int):
        if not self.best:
            self.best = [start]
        path = [start]
        self._extend(path, self.allowed & ~(1 << start))

    def _extend(self, path: list[int], avail: int) -> bool:
        """Returns True once the target length is reached."""
        self.tick()
        end = path[-1]
        if len(path) - 1 > len(self.best) - 1:
            self.best = list(path)
            if len(path) - 1 >= self.target:
                return True
        cand = self.out_mask[end] & avail
        if not cand:
            return False
        if len(path) - 1 + _reach(self.out_mask, end, avail).bit_count() <= len(self.best) - 1:
            return False
        for v in _bits(cand):
            path.append(v)
            if self._extend(path, avail & ~(1 << v)):
                return True
            path.pop()
        return False


def longest_directed_path(g: OrientedGraph, budget: SearchBudget = DEFAULT_BUDGET) -> HostPath:
    """A maximum-length directed path of ``g``, certified by exhaustive search.

    Raises :class:`BudgetExhausted` (with the best path so far in
    ``partial``) if the search is cut short.
    """
    if g.n == 0:
        raise PathError("the empty graph has no paths")
    full = (1 << g.n) - 1
    s = _Search(g, full, budget)
    s.target = g.n - 1
    order = sorted(range(g.n), key=lambda v: (-len(g.out_adj[v]), v))
    for v in order:
        s.run_from(v)
        if len(s.best) - 1 >= s.target:
            break
    return HostPath(tuple(s.best))


def longest_path_from(
    g: OrientedGraph,
    allowed: Iterable[int],
    start: int,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> HostPath:
    """A maximum-length directed path of ``g[allowed]`` that starts at ``start``."""
    allowed_mask = 0
    for v in allowed:
        allowed_mask |= 1 << v
    if not allowed_mask >> start & 1:
        raise PathError(f"start vertex {start} is not in the allowed set")
    s = _Search(g, allowed_mask, budget)
    s.target = _reach(g.out_mask, start, allowed_mask & ~(1 << start)).bit_count()
    s.run_from(start)
    return HostPath(tuple(s.best))


def maximal_extension(g: OrientedGraph, p: HostPath) -> HostPath:
    """Greedily extend ``p`` at both ends until neither end can be extended.

    The result is maximal (``N-(first)`` and ``N+(last)`` lie on it) but not
    necessarily of maximum length.
    """
    if not is_directed_path(g, p.verts):
        raise PathError(f"{p.verts} is not a directed path")
    verts = list(p.verts)
    used = set(verts)
    while True:
        nxt = next((v for v in g.out_adj[verts[-1]] if v not in used), None)
        if nxt is None:
            break
        verts.append(nxt)
        used.add(nxt)
    front: list[int] = []
    head = verts[0]
    while True:
        prv = next((v for v in g.in_adj[head] if v not in used), None)
        if prv is None:
            break
        front.append(prv)
        used.add(prv)
        head = prv
    return HostPath(tuple(front[::-1] + verts))


def greedy_maximal_path(g: OrientedGraph, start: Optional[int] = None) -> HostPath:
    if g.n == 0:
        raise PathError("the empty graph has no paths")
    if start is None:
        start = max(range(g.n), key=lambda v: (len(g.out_adj[v]), -v))
    return maximal_extension(g, HostPath((start,)))
