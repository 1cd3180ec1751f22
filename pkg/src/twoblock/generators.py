"""Extremal constructions and seeded random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from .digraph import OrientedGraph, degree_summary
from .errors import AttemptsExhausted, EvenOrder, GeneratorError, Unsatisfiable


def directed_path(n: int) -> OrientedGraph:
    return OrientedGraph(n, [(i, i + 1) for i in range(n - 1)])


def directed_cycle(n: int) -> OrientedGraph:
    if n < 3:
        raise GeneratorError("an oriented cycle needs at least 3 vertices")
    return circulant(n, [1])


def directed_triangle() -> OrientedGraph:
    return directed_cycle(3)


def circulant(n: int, offsets) -> OrientedGraph:
    """Vertex ``i`` points to ``i + s (mod n)`` for every offset ``s``."""
    offs = sorted({s % n for s in offsets})
    if 0 in offs:
        raise GeneratorError("offset 0 would create loops")
    if any((n - s) % n in offs for s in offs):
        raise GeneratorError("offsets s and -s together create 2-cycles")
    return OrientedGraph(n, [(i, (i + s) % n) for i in range(n) for s in offs])


def regular_tournament(n: int) -> OrientedGraph:
    """Circulant tournament: ``i`` beats ``i+1, ..., i+(n-1)/2`` modulo ``n``."""
    if n % 2 == 0:
        raise EvenOrder(f"regular tournaments need an odd order, got {n}")
    if n < 3:
        raise GeneratorError("regular tournament needs n >= 3")
    return circulant(n, range(1, (n - 1) // 2 + 1))


def near_regular_tournament(n: int) -> OrientedGraph:
    """Tournament with every in- and out-degree in {floor((n-1)/2), ceil((n-1)/2)}."""
    if n % 2:
        return regular_tournament(n) if n >= 3 else OrientedGraph(n, [])
    h = n // 2
    arcs = [(i, (i + s) % n) for i in range(n) for s in range(1, h)]
    arcs += [(i, i + h) if i % 2 == 0 else (i + h, i) for i in range(h)]
    return OrientedGraph(n, arcs)


def blowup(g: OrientedGraph, m: int) -> OrientedGraph:
    """Replace each vertex ``v`` by copies ``v*m .. v*m+m-1``; arcs become complete bipartite."""
    if m < 1:
        raise GeneratorError("blowup part size must be at least 1")
    arcs = [(u * m + a, v * m + b) for u, v in g.sorted_arcs() for a in range(m) for b in range(m)]
    return OrientedGraph(g.n * m, arcs)


def random_oriented_graph(n: int, arc_prob: float, seed: int) -> OrientedGraph:
    """Each unordered pair gets an arc with probability ``arc_prob``, oriented uniformly."""
    if not 0.0 <= arc_prob <= 1.0:
        raise GeneratorError("arc_prob must lie in [0, 1]")
    rng = random.Random(seed)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < arc_prob:
                arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return OrientedGraph(n, arcs)


def random_tournament(n: int, seed: int) -> OrientedGraph:
    return random_oriented_graph(n, 1.0, seed)


def _mixed_tournament(n: int, rng: random.Random) -> list[tuple[int, int]]:
    # Reversing a directed triangle keeps every degree, so the walk stays
    # inside the tournaments sharing the near-regular score sequence.
    perm = list(range(n))
    rng.shuffle(perm)
    out = [set() for _ in range(n)]
    for u, v in near_regular_tournament(n).arcs:
        out[perm[u]].add(perm[v])
    for _ in range(4 * n * n):
        a, b, c = rng.sample(range(n), 3)
        if b not in out[a]:
            a, b = b, a
        if c in out[b] and a in out[c]:
            out[a].discard(b); out[b].discard(c); out[c].discard(a)
            out[b].add(a); out[c].add(b); out[a].add(c)
    return [(u, v) for u in range(n) for v in sorted(out[u])]


def random_with_min_semidegree(
    n: int,
    d: int,
    seed: int,
    max_attempts: int = 20,
    prune: float = 1.0,
    fallback: bool = True,
) -> OrientedGraph:
    """Random oriented graph with minimum semidegree at least ``d``.

    Tries random tournaments first; when none reaches ``d`` the start is a
    randomly relabelled, triangle-switched near-regular tournament.  Arcs
    are then visited in random order and each is deleted with probability
    ``prune`` if both its ends stay at semidegree ``>= d``.
    """
    if d < 0 or (d > 0 and 2 * d > n - 1):
        raise Unsatisfiable(f"no oriented graph on {n} vertices has semidegree {d}")
    rng = random.Random(seed)
    arcs = None
    for _ in range(max_attempts):
        t = random_tournament(n, rng.randrange(2**63))
        if degree_summary(t).delta_zero >= d:
            arcs = t.sorted_arcs()
            break
    if arcs is None:
        if not fallback:
            raise AttemptsExhausted(f"no random tournament on {n} vertices reached semidegree {d}")
        arcs = _mixed_tournament(n, rng)
    deg_out = [0] * n
    deg_in = [0] * n
    for u, v in arcs:
        deg_out[u] += 1
        deg_in[v] += 1
    rng.shuffle(arcs)
    kept = []
    for u, v in arcs:
        if deg_out[u] > d and deg_in[v] > d and rng.random() < prune:
            deg_out[u] -= 1
            deg_in[v] -= 1
        else:
            kept.append((u, v))
    g = OrientedGraph(n, kept)
    assert degree_summary(g).delta_zero >= d
    return g


def planted_path_graph(
    n: int,
    delta: int,
    seed: int,
    in_first=None,
    out_last=None,
    forced=(),
    forbidden=(),
    sweeps: int = 400,
) -> OrientedGraph:
    """Oriented graph containing the Hamilton path ``0 -> 1 -> ... -> n-1`` with semidegree ``>= delta``.

    Optional constraints: in-neighbours of vertex 0 restricted to
    ``in_first``, out-neighbours of ``n-1`` restricted to ``out_last``,
    extra ``forced`` arcs and ``forbidden`` arcs.  The remaining pairs are
    oriented (or left empty) by a randomised local search on the total
    degree deficit.
    """
    rng = random.Random(seed)
    last = n - 1
    forced = set(forced) | {(i, i + 1) for i in range(last)}
    forbidden = set(forbidden)
    in_first = None if in_first is None else set(in_first)
    out_last = None if out_last is None else set(out_last)

    def allowed(a, b):
        if (a, b) in forbidden:
            return False
        if b == 0 and in_first is not None and a not in in_first:
            return False
        return not (a == last and out_last is not None and b not in out_last)

    state = {}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) in forced or (v, u) in forced:
                continue
            opts = [o for o in ((u, v), (v, u)) if allowed(*o)]
            state[(u, v)] = [opts, rng.choice(opts) if opts else None]
    out = [0] * n
    inn = [0] * n
    for a, b in list(forced) + [o for _, o in state.values() if o]:
        out[a] += 1
        inn[b] += 1

    def cost(x):
        return max(0, delta - out[x]) + max(0, delta - inn[x])

    def apply(arc, sign):
        if arc:
            out[arc[0]] += sign
            inn[arc[1]] += sign

    pairs = list(state)
    for _ in range(sweeps):
        if all(cost(x) == 0 for x in range(n)):
            break
        rng.shuffle(pairs)
        for key in pairs:
            opts, cur = state[key]
            new = rng.choice(opts + [None])
            if new == cur:
                continue
            before = cost(key[0]) + cost(key[1])
            apply(cur, -1)
            apply(new, 1)
            after = cost(key[0]) + cost(key[1])
            # Dropping arcs at equal cost keeps the graph from filling up.
            if after > before or (after == before and new is None and rng.random() < 0.7):
                apply(new, -1)
                apply(cur, 1)
            else:
                state[key][1] = new
    if any(cost(x) for x in range(n)):
        raise AttemptsExhausted(f"local search did not reach semidegree {delta} on {n} vertices")
    return OrientedGraph(n, list(forced) + [o for _, o in state.values() if o])


END_VARIANTS = ("plain", "closing", "back", "closing-back", "skip-first")


def _end_constraints(n: int, window: int, variant: str):
    if variant not in END_VARIANTS:
        raise GeneratorError(f"unknown variant {variant!r}")
    t = n - 1
    head = set(range(window))
    tail = set(range(t - window + 1, t + 1))
    middle = set(range(window, t - window + 1))
    in_first = (head - {0, 1}) | (tail - {t})
    out_last = (head - {0}) | (tail - {t, t - 1})
    forced, forbidden = set(), set()
    if variant in ("closing", "closing-back"):
        in_first.add(t)
        forced.add((t, 0))
    if variant in ("back", "closing-back"):
        out_last |= middle
    if variant == "skip-first":
        out_last.discard(1)
        forbidden = {(1, y) for y in middle}
    return in_first, out_last, forced, forbidden


def end_confined_feasible(n: int, window: int, delta: int, variant: str = "plain") -> bool:
    """Whether the end constraints leave room for semidegree ``delta`` at both ends."""
    in_first, out_last, forced, _ = _end_constraints(n, window, variant)
    return n >= 2 * delta + 1 and len(in_first) >= delta and len(out_last) + len(forced) >= delta


def end_confined_graph(n: int, window: int, delta: int, seed: int, variant: str = "plain") -> OrientedGraph:
    """Planted Hamilton path whose end vertices only see the outer ``window`` vertices at each end.

    Vertex 0 receives arcs only from ``2..window-1`` and the last
    ``window - 1`` vertices before ``n-1``; vertex ``n-1`` sends arcs only to
    ``1..window-1`` and ``n-window..n-3``.  Variants: ``closing`` adds the
    arc ``n-1 -> 0``, ``back`` lets ``n-1`` reach the middle,
    ``closing-back`` does both, ``skip-first`` drops ``n-1 -> 1`` and keeps
    vertex 1 away from the middle.
    """
    in_first, out_last, forced, forbidden = _end_constraints(n, window, variant)
    return planted_path_graph(n, delta, seed, in_first, out_last, forced, forbidden)


FAMILIES = (
    "circulant", "regular_tournament", "blowup", "random_oriented", "random_tournament",
    "random_semidegree", "planted", "end_confined",
)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GeneratorError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")


def named_graph(name: str) -> OrientedGraph:
    if name == "triangle":
        return directed_triangle()
    if name.startswith("tournament"):
        return regular_tournament(int(name[len("tournament"):]))
    raise GeneratorError(f"unknown base graph {name!r}")


def generate(spec: GeneratorSpec) -> OrientedGraph:
    p = spec.params
    if spec.family == "circulant":
        return circulant(p["n"], p["offsets"])
    if spec.family == "regular_tournament":
        return regular_tournament(p["n"])
    if spec.family == "blowup":
        base = p.get("base", "triangle")
        base = named_graph(base) if isinstance(base, str) else base
        return blowup(base, p["m"])
    if spec.family == "random_oriented":
        return random_oriented_graph(p["n"], p["arc_prob"], spec.seed)
    if spec.family == "random_tournament":
        return random_tournament(p["n"], spec.seed)
    if spec.family == "end_confined":
        return end_confined_graph(p["n"], p["window"], p["d"], spec.seed, p.get("variant", "plain"))
    if spec.family == "planted":
        return planted_path_graph(p["n"], p["d"], spec.seed, p.get("in_first"), p.get("out_last"))
    return random_with_min_semidegree(p["n"], p["d"], spec.seed, prune=p.get("prune", 1.0))
