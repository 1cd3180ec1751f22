"""Path orientations, host paths and embeddings.

A pattern is a string over ``F``/``B``: symbol ``i`` says whether the arc
between pattern positions ``i`` and ``i+1`` points forward (``i -> i+1``) or
backward (``i <- i+1``).  Two-block paths are the special case ``B^l F^s``
(back-first) or ``F^l B^s`` (forward-first).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import groupby
from typing import Optional, Sequence

from .digraph import OrientedGraph
from .errors import DifferentStart, InsufficientBlocks, PathError, SharedInterior, SpecOutOfRange

FORWARD = "F"
BACKWARD = "B"


@dataclass(frozen=True)
class PathPattern:
    dirs: str

    def __post_init__(self):
        if not self.dirs or set(self.dirs) - {FORWARD, BACKWARD}:
            raise PathError(f"pattern must be a non-empty F/B string, got {self.dirs!r}")

    @property
    def k(self) -> int:
        return len(self.dirs)

    def __str__(self):
        return self.dirs

    def blocks(self) -> list[int]:
        return [len(list(run)) for _, run in groupby(self.dirs)]

    def is_antidirected(self) -> bool:
        return all(b == 1 for b in self.blocks())

    def flipped(self) -> "PathPattern":
        """Same positions, every arc reversed (the pattern seen in the reverse graph)."""
        return PathPattern(self.dirs.translate(_SWAP))

    def read_backwards(self) -> "PathPattern":
        """The same oriented path with its positions listed from the other end."""
        return PathPattern(self.dirs[::-1].translate(_SWAP))

    def canonical(self) -> "PathPattern":
        """Representative of {pattern, pattern read backwards}."""
        other = self.read_backwards()
        return self if self.dirs <= other.dirs else other


_SWAP = str.maketrans("FB", "BF")


class Orientation(str, enum.Enum):
    BACK_FIRST = "back-first"
    FORWARD_FIRST = "forward-first"


@dataclass(frozen=True)
class TwoBlockSpec:
    """``P(<-ell, ->k-ell)`` for back-first, ``P(->ell, <-k-ell)`` for forward-first."""

    k: int
    ell: int
    orientation: Orientation = Orientation.BACK_FIRST

    def __post_init__(self):
        if not 1 <= self.ell < self.k:
            raise SpecOutOfRange(f"need 1 <= ell < k, got k={self.k}, ell={self.ell}")
        object.__setattr__(self, "orientation", Orientation(self.orientation))

    def to_pattern(self) -> PathPattern:
        first, second = (BACKWARD, FORWARD) if self.orientation is Orientation.BACK_FIRST else (FORWARD, BACKWARD)
        return PathPattern(first * self.ell + second * (self.k - self.ell))


def pattern_reverse_symmetry(spec: TwoBlockSpec) -> TwoBlockSpec:
    """Swap the block sizes; reading ``P(<-a, ->b)`` from its far end gives ``P(<-b, ->a)``."""
    return TwoBlockSpec(spec.k, spec.k - spec.ell, spec.orientation)


# -- host paths --------------------------------------------------------------

@dataclass(frozen=True)
class HostPath:
    verts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "verts", tuple(self.verts))
        if not self.verts:
            raise PathError("a path has at least one vertex")
        if len(set(self.verts)) != len(self.verts):
            raise PathError(f"repeated vertex in path {self.verts}")

    @property
    def length(self) -> int:
        return len(self.verts) - 1

    @property
    def first(self) -> int:
        return self.verts[0]

    @property
    def last(self) -> int:
        return self.verts[-1]

    def __len__(self):
        return len(self.verts)

    def __iter__(self):
        return iter(self.verts)

    def is_valid_in(self, g: OrientedGraph) -> bool:
        return is_directed_path(g, self.verts)


def is_directed_path(g: OrientedGraph, verts: Sequence[int]) -> bool:
    if not verts or len(set(verts)) != len(verts):
        return False
    if any(not 0 <= v < g.n for v in verts):
        return False
    return all(g.has_arc(u, v) for u, v in zip(verts, verts[1:]))


def reverse_path(p: HostPath) -> HostPath:
    return HostPath(p.verts[::-1])


@dataclass(frozen=True)
class TwoBlockWalk:
    """The oriented path ``<-P1 P2``: ``back`` backward arcs, then ``fwd`` forward arcs."""

    verts: tuple[int, ...]
    back: int
    fwd: int

    @property
    def pattern(self) -> PathPattern:
        return PathPattern(BACKWARD * self.back + FORWARD * self.fwd)

    @property
    def turn(self) -> int:
        return self.verts[self.back]


def concat_reverse(p1: HostPath, p2: HostPath) -> TwoBlockWalk:
    if p1.first != p2.first:
        raise DifferentStart(f"paths start at {p1.first} and {p2.first}")
    if set(p1.verts) & set(p2.verts) != {p1.first}:
        raise SharedInterior("paths meet outside their common start vertex")
    if p1.length + p2.length == 0:
        raise PathError("both paths are trivial")
    return TwoBlockWalk(p1.verts[::-1] + p2.verts[1:], p1.length, p2.length)


@dataclass(frozen=True)
class Embedding:
    pattern: PathPattern
    vertices: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"pattern": self.pattern.dirs, "vertices": list(self.vertices)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Embedding":
        return cls(PathPattern(data["pattern"]), tuple(data["vertices"]))


def extract_two_block(walk: TwoBlockWalk, spec: TwoBlockSpec) -> Embedding:
    """Embed back-first ``spec`` into ``walk`` using the window around the turn.

    The window takes ``ell`` arcs on one side of the turning vertex and
    ``k - ell`` on the other; when the backward side is too short for
    ``ell`` the sides are exchanged, which is the same pattern read from its
    other end.
    """
    if spec.orientation is not Orientation.BACK_FIRST:
        raise SpecOutOfRange("a <-P1 P2 walk only hosts back-first patterns")
    ell, rest = spec.ell, spec.k - spec.ell
    a, b, turn = walk.back, walk.fwd, walk.back
    if a >= ell and b >= rest:
        verts = walk.verts[turn - ell: turn + rest + 1]
    elif a >= rest and b >= ell:
        verts = walk.verts[turn - rest: turn + ell + 1][::-1]
    else:
        raise InsufficientBlocks(f"walk P(<-{a}, ->{b}) cannot host P(<-{ell}, ->{rest})")
    return Embedding(spec.to_pattern(), tuple(verts))


@dataclass(frozen=True)
class Violation:
    kind: str  # "length" | "vertex" | "injectivity" | "arc"
    position: int
    detail: str = ""


def verify_embedding(
    g: OrientedGraph, pattern: PathPattern, vertices: Sequence[int]
) -> tuple[bool, Optional[Violation]]:
    """Check that ``vertices`` embeds ``pattern`` in ``g``; never raises."""
    vertices = list(vertices)
    if len(vertices) != pattern.k + 1:
        return False, Violation("length", 0, f"need {pattern.k + 1} vertices, got {len(vertices)}")
    for i, v in enumerate(vertices):
        if not (isinstance(v, int) and 0 <= v < g.n):
            return False, Violation("vertex", i, f"{v!r} is not a vertex")
    seen: dict[int, int] = {}
    for i, v in enumerate(vertices):
        if v in seen:
            return False, Violation("injectivity", i, f"vertex {v} also at position {seen[v]}")
        seen[v] = i
    for i, d in enumerate(pattern.dirs):
        u, v = vertices[i], vertices[i + 1]
        arc = (u, v) if d == FORWARD else (v, u)
        if not g.has_arc(*arc):
            return False, Violation("arc", i, f"missing arc {arc}")
    return True, None


def embedding_ok(g: OrientedGraph, e: Embedding) -> bool:
    return verify_embedding(g, e.pattern, e.vertices)[0]
