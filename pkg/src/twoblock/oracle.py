"""Brute-force embedding search for arbitrary path orientations.

Deliberately simple: positions are filled left to right, following
out-neighbours on ``F`` steps and in-neighbours on ``B`` steps, never reusing
a vertex.  A completed search that finds nothing certifies non-containment.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .digraph import OrientedGraph, iter_bits
from .longest import DEFAULT_BUDGET, SearchBudget
from .paths import BACKWARD, FORWARD, Embedding, PathPattern, TwoBlockSpec, verify_embedding


@dataclass
class OracleReport:
    pattern: PathPattern
    found: bool
    embedding: Optional[Embedding] = None
    nodes_explored: int = 0
    complete: bool = True

    @property
    def certified_absent(self) -> bool:
        return not self.found and self.complete

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern.dirs,
            "found": self.found,
            "complete": self.complete,
            "nodes_explored": self.nodes_explored,
            "embedding": self.embedding.to_dict() if self.embedding else None,
        }


class _OutOfBudget(Exception):
    pass


def find_pattern_embedding(
    g: OrientedGraph, pattern: PathPattern, budget: SearchBudget = DEFAULT_BUDGET
) -> OracleReport:
    dirs = pattern.dirs
    k = len(dirs)
    if g.n < k + 1:
        return OracleReport(pattern, False)
    step_masks = [g.out_mask if c == FORWARD else g.in_mask for c in dirs]
    deadline = time.monotonic() + budget.time_limit
    nodes = 0
    assign = [0] * (k + 1)

    def extend(pos: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget.node_limit or (not nodes & 1023 and time.monotonic() > deadline):
            raise _OutOfBudget
        if pos == k:
            return True
        for v in iter_bits(step_masks[pos][assign[pos]] & ~used):
            assign[pos + 1] = v
            if extend(pos + 1, used | 1 << v):
                return True
        return False

    first_deg = g.in_adj if dirs[0] == BACKWARD else g.out_adj
    starts = sorted(range(g.n), key=lambda v: (-len(first_deg[v]), v))
    try:
        for s in starts:
            assign[0] = s
            if extend(0, 1 << s):
                emb = Embedding(pattern, tuple(assign))
                assert verify_embedding(g, pattern, emb.vertices)[0]
                return OracleReport(pattern, True, emb, nodes)
    except _OutOfBudget:
        return OracleReport(pattern, False, None, nodes, complete=False)
    return OracleReport(pattern, False, None, nodes)


def contains_two_block(g: OrientedGraph, spec: TwoBlockSpec, budget: SearchBudget = DEFAULT_BUDGET) -> OracleReport:
    return find_pattern_embedding(g, spec.to_pattern(), budget)


def orientation_classes(k: int) -> list[PathPattern]:
    """One representative per orientation of the k-arc path (reading direction ignored)."""
    seen = set()
    classes = []
    for bits in product((FORWARD, BACKWARD), repeat=k):
        p = PathPattern("".join(bits)).canonical()
        if p.dirs not in seen:
            seen.add(p.dirs)
            classes.append(p)
    return classes


@dataclass
class OrientationsReport:
    k: int
    reports: list[OracleReport] = field(default_factory=list)

    @property
    def missing(self) -> list[PathPattern]:
        return [r.pattern for r in self.reports if r.certified_absent]

    @property
    def inconclusive(self) -> list[PathPattern]:
        return [r.pattern for r in self.reports if not r.complete]

    @property
    def missing_non_antidirected(self) -> list[PathPattern]:
        return [p for p in self.missing if not p.is_antidirected()]

    @property
    def complete(self) -> bool:
        return all(r.complete for r in self.reports)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "classes": len(self.reports),
            "missing": [p.dirs for p in self.missing],
            "missing_antidirected": [p.dirs for p in self.missing if p.is_antidirected()],
            "inconclusive": [p.dirs for p in self.inconclusive],
            "reports": [r.to_dict() for r in self.reports],
        }


def contains_all_orientations(
    g: OrientedGraph, k: int, budget: SearchBudget = DEFAULT_BUDGET
) -> OrientationsReport:
    return OrientationsReport(k, [find_pattern_embedding(g, p, budget) for p in orientation_classes(k)])
