"""Constructive embedding of two-block paths above the semidegree threshold.

Everything is phrased for the back-first path ``P(<-ell, ->k-ell)`` with
``k/2 <= ell < k``; other requests are normalised by reading the pattern
from its other end and/or reversing every arc of the host.

Given a longest directed path ``v_0 ... v_t`` the dispatch builds two
directed paths ``P1``, ``P2`` leaving a common vertex, long enough that the
walk ``<-P1 P2`` contains the requested pattern around its turning vertex.
Index windows on the path:

* small ``ell`` (``3*ell <= 2k``): ``X = [0, d-1]``, ``Y = [d, t-d]``,
  ``Z = [t-d+1, t]`` with ``d = k - ell``;
* large ``ell``: ``Q = [d, t-ell]`` and ``R = [ell, t-d]``.

All inequalities use integer arithmetic only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .digraph import OrientedGraph, min_semidegree, reverse_graph
from .errors import CaseAnalysisExhausted, SpecOutOfRange, ThresholdNotMet
from .longest import DEFAULT_BUDGET, SearchBudget, greedy_maximal_path, longest_directed_path, longest_path_from, maximal_extension
from .paths import (
    Embedding,
    HostPath,
    Orientation,
    TwoBlockSpec,
    concat_reverse,
    extract_two_block,
    is_directed_path,
    verify_embedding,
)

PROP_I_FRONT = "PropI-front"
PROP_I_BACK = "PropI-back"
PROP_II_LONG = "PropII-long-Pprime"
PROP_II_GUARD = "PropII-cycle-extension-contradiction-guard"
PROP_II_SHORT = "PropII-short-Pprime"
PROP_III = "PropIII"
SMALL_HAMILTON_S = "Thm-small-ell-hamilton-S"
SMALL_Y_FAR = "Thm-small-ell-Y-far"
SMALL_Y_NEAR = "Thm-small-ell-Y-near"
LARGE_Q = "Thm-large-ell-Q"
LARGE_R = "Thm-large-ell-R"

CASES = (
    PROP_I_FRONT, PROP_I_BACK, PROP_II_LONG, PROP_II_GUARD, PROP_II_SHORT, PROP_III,
    SMALL_HAMILTON_S, SMALL_Y_FAR, SMALL_Y_NEAR, LARGE_Q, LARGE_R,
)


# -- threshold -----------------------------------------------------------------

def _check_range(k: int, ell: int) -> None:
    if not (k >= 2 and 2 * ell >= k and ell < k):
        raise SpecOutOfRange(f"need k/2 <= ell < k, got k={k}, ell={ell}")


def is_small_ell(k: int, ell: int) -> bool:
    return 3 * ell <= 2 * k


def threshold(k: int, ell: int) -> Fraction:
    """Minimum semidegree that guarantees ``P(<-ell, ->k-ell)``: ``k - ell/2`` or ``2k/3``."""
    _check_range(k, ell)
    if is_small_ell(k, ell):
        return Fraction(2 * k - ell, 2)
    return Fraction(2 * k, 3)


def meets_threshold(k: int, ell: int, delta: int) -> bool:
    _check_range(k, ell)
    if is_small_ell(k, ell):
        return 2 * delta >= 2 * k - ell
    return 3 * delta >= 2 * k


def required_semidegree(k: int, ell: int) -> int:
    """Smallest integer semidegree meeting :func:`threshold`."""
    thr = threshold(k, ell)
    return -(-thr.numerator // thr.denominator)


def normalize_spec(spec: TwoBlockSpec) -> tuple[TwoBlockSpec, bool]:
    """Back-first spec with ``k/2 <= ell < k`` plus whether the host must be reversed.

    Forward-first paths are embedded as back-first paths of the reverse
    graph; ``ell < k/2`` is handled by swapping the blocks, which is the
    same path read from its other end.
    """
    ell = max(spec.ell, spec.k - spec.ell)
    return TwoBlockSpec(spec.k, ell, Orientation.BACK_FIRST), spec.orientation is Orientation.FORWARD_FIRST


# -- results and traces ----------------------------------------------------------

class LongerPathFound(Exception):
    """A case produced a directed path longer than the one it started from."""

    def __init__(self, path: HostPath, case: str):
        super().__init__(f"{case}: found a path of length {path.length}")
        self.path = path
        self.case = case


@dataclass
class CaseResult:
    case: str
    p1: HostPath
    p2: HostPath
    witnesses: dict = field(default_factory=dict)
    paths: dict = field(default_factory=dict)
    subcase: str = ""


@dataclass
class ProofTrace:
    case_fired: str
    path_P: tuple[int, ...]
    k: int
    ell: int
    windows: dict[str, tuple[int, int]]
    witnesses: dict[str, int]
    paths: dict[str, list[int]]
    subcase: str = ""
    graph_reversed: bool = False
    blocks_swapped: bool = False
    path_source: str = "exact"
    restarts: int = 0

    @property
    def t(self) -> int:
        return len(self.path_P) - 1

    def to_dict(self) -> dict:
        return {
            "case": self.case_fired,
            "subcase": self.subcase,
            "k": self.k,
            "ell": self.ell,
            "t": self.t,
            "path_P": list(self.path_P),
            "windows": {name: list(rng) for name, rng in self.windows.items()},
            "witnesses": dict(self.witnesses),
            "paths": {name: list(vs) for name, vs in self.paths.items()},
            "graph_reversed": self.graph_reversed,
            "blocks_swapped": self.blocks_swapped,
            "path_source": self.path_source,
            "restarts": self.restarts,
        }


def windows_for(k: int, ell: int, t: int) -> dict[str, tuple[int, int]]:
    d = k - ell
    if is_small_ell(k, ell):
        return {"X": (0, d - 1), "Y": (d, t - d), "Z": (t - d + 1, t)}
    return {"Q": (d, t - ell), "R": (ell, t - d)}


# -- helpers --------------------------------------------------------------------

def _index(verts) -> dict[int, int]:
    return {v: i for i, v in enumerate(verts)}


def _indices(nbrs, pos, lo, hi) -> list[int]:
    """Sorted path indices in ``[lo, hi]`` of the given neighbours."""
    return sorted(i for i in (pos.get(u) for u in nbrs) if i is not None and lo <= i <= hi)


def _violation(msg: str, g: OrientedGraph, path: HostPath, k: int, ell: int, **extra) -> CaseAnalysisExhausted:
    state = {"graph": {"n": g.n, "arcs": [list(a) for a in g.sorted_arcs()]},
             "path_P": list(path.verts), "k": k, "ell": ell}
    state.update(extra)
    return CaseAnalysisExhausted(msg, state)


def _require_in_path(g: OrientedGraph, path: HostPath, case: str) -> None:
    """Raise LongerPathFound unless ``N-(v_0)`` and ``N+(v_t)`` lie on the path."""
    v = path.verts
    on = set(v)
    for u in g.in_adj[v[0]]:
        if u not in on:
            raise LongerPathFound(HostPath((u,) + v), case)
    for u in g.out_adj[v[-1]]:
        if u not in on:
            raise LongerPathFound(HostPath(v + (u,)), case)


# -- path-end cases -------------------------------------------------------------

def _front_split(g: OrientedGraph, path: HostPath, k: int, ell: int) -> Optional[CaseResult]:
    v, t, d = path.verts, path.length, k - ell
    front = _indices(g.in_adj[v[0]], _index(v), d, t - d)
    if not front:
        return None
    i = front[0]
    return CaseResult(PROP_I_FRONT, HostPath((v[i],) + v[:i]), HostPath(v[i:]), {"i": i})


def prop32_case_i(g: OrientedGraph, path: HostPath, k: int, ell: int) -> Optional[CaseResult]:
    """Split through an in-neighbour of ``v_0`` in ``Y`` or an out-neighbour of ``v_t`` in ``Y``."""
    res = _front_split(g, path, k, ell)
    if res is not None:
        return res
    v, t, d = path.verts, path.length, k - ell
    pos = _index(v)
    back = _indices(g.out_adj[v[t]], pos, d, t - d)
    if not back:
        return None
    j = back[0]
    _require_in_path(g, path, PROP_I_BACK)
    in_z = _indices(g.in_adj[v[0]], pos, t - d + 1, t)
    if not in_z:
        # N-(v_0) avoids Y, so it would fit inside X minus v_0: fewer than d vertices.
        raise _violation("no in-neighbour of v_0 in Z", g, path, k, ell, case=PROP_I_BACK, j=j)
    i = in_z[0]
    p1 = HostPath((v[i],) + v[:j])
    p2 = HostPath(v[i:] + v[j:i])
    return CaseResult(PROP_I_BACK, p1, p2, {"i": i, "j": j})


def prop32_case_ii(
    g: OrientedGraph,
    path: HostPath,
    k: int,
    ell: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    i: Optional[int] = None,
) -> Optional[CaseResult]:
    """Detour through vertices off the path at ``v_{i-1}`` where ``v_t -> v_i``, ``1 <= i < d``.

    With ``i`` given only that index is tried.  Raises
    :class:`LongerPathFound` when the detour closes back onto the cycle
    ``v_i ... v_t v_i``, which is impossible for a maximum path.
    """
    v, t, d = path.verts, path.length, k - ell
    pos = _index(v)
    on = set(v)
    if i is None:
        candidates = _indices(g.out_adj[v[t]], pos, 1, d - 1)
    else:
        candidates = [i] if 1 <= i <= d - 1 and g.has_arc(v[t], v[i]) else []
    for i in candidates:
        outside = [w for w in g.out_adj[v[i - 1]] if w not in on]
        if outside:
            break
    else:
        return None
    w0 = outside[0]
    rest = [u for u in range(g.n) if u not in on]
    pprime = longest_path_from(g, rest, w0, budget)
    w, m = pprime.verts, pprime.length
    cycle = list(v[i:])
    wit = {"i": i, "m": m}
    extra = {"P_prime": list(w), "C": cycle}
    if m >= d - 1:
        return CaseResult(PROP_II_LONG, HostPath((v[i - 1],) + w), HostPath(v[i - 1:]), wit, extra)
    out_wm = g.out_adj[w[-1]]
    on_cycle = _indices(out_wm, pos, i, t)
    if on_cycle:
        r = on_cycle[0]
        if r != i:
            longer = v[:i] + w + v[r:] + v[i:r]
        else:
            longer = v[:i] + w + v[i:]
        raise LongerPathFound(HostPath(longer), PROP_II_GUARD)
    in_pprime = set(w)
    stray = [u for u in out_wm if u not in on and u not in in_pprime]
    if stray:
        raise _violation("P' is not a longest path from w_0", g, path, k, ell, case=PROP_II_SHORT, i=i)
    early = _indices(out_wm, pos, 0, i - 2)
    if not early:
        raise _violation("w_m has no out-neighbour among v_0..v_{i-2}", g, path, k, ell,
                         case=PROP_II_SHORT, i=i, P_prime=list(w))
    j = early[0]
    wit["j"] = j
    p1 = HostPath((v[i - 1],) + w + v[j:i - 1])
    return CaseResult(PROP_II_SHORT, p1, HostPath(v[i - 1:]), wit, extra)


def _hamilton_split(g: OrientedGraph, cycle: HostPath, k: int, ell: int) -> Optional[CaseResult]:
    """Split a path whose end points back to its start (a Hamilton cycle of its vertex set)."""
    u, t, d = cycle.verts, cycle.length, k - ell
    _require_in_path(g, cycle, PROP_III)
    on = set(u)
    for w in g.out_adj[u[0]]:
        if w not in on:
            raise LongerPathFound(HostPath(u[1:] + (u[0], w)), PROP_III)
    front = _front_split(g, cycle, k, ell)
    if front is not None:
        front.subcase = PROP_I_FRONT
        return front
    pos = _index(u)
    # Index d would leave the v_0..v_{i-1} side one arc short; skip it.
    outs = _indices(g.out_adj[u[0]], pos, d + 1, t - d)
    for i in outs:
        p1 = HostPath(u[:i])
        p2 = HostPath((u[0],) + u[i:])
        if (p1.length >= ell and p2.length >= d) or (p1.length >= d and p2.length >= ell):
            return CaseResult(PROP_III, p1, p2, {"i": i}, subcase="out-neighbour")
    return None


def prop32_case_iii(g: OrientedGraph, path: HostPath, k: int, ell: int) -> Optional[CaseResult]:
    """Split along a Hamilton cycle of ``G[V(P)]`` closed by the arc ``v_t -> v_0``.

    The cycle is tried from ``v_0`` first, then from every other rotation.
    """
    v = path.verts
    if len(v) < 3 or not g.has_arc(v[-1], v[0]):
        return None
    for s in range(len(v)):
        rotated = HostPath(v[s:] + v[:s])
        res = _hamilton_split(g, rotated, k, ell)
        if res is not None:
            res.paths["C"] = list(rotated.verts)
            if s:
                res.witnesses["rotation"] = s
            if res.case == PROP_I_FRONT:
                res.case = PROP_III
            return res
    return None


# -- theorem branches -----------------------------------------------------------

def thm_small_ell(
    g: OrientedGraph, path: HostPath, k: int, ell: int, budget: SearchBudget = DEFAULT_BUDGET
) -> CaseResult:
    v, t, d = path.verts, path.length, k - ell
    delta = min_semidegree(g)
    if not (t >= 2 * k - ell and 2 * delta >= 2 * k - ell):
        raise _violation("small-ell branch needs t >= 2k - ell and delta >= k - ell/2", g, path, k, ell)
    if not (delta > d and t - ell >= ell):
        raise _violation("delta > k - ell and t - ell >= ell must hold", g, path, k, ell)
    res = prop32_case_i(g, path, k, ell)
    if res is not None:
        return res
    if g.has_arc(v[t], v[0]):
        res = prop32_case_iii(g, path, k, ell)
        if res is None:
            raise _violation("Hamilton cycle on V(P) gave no split", g, path, k, ell, case=PROP_III)
        return res
    _require_in_path(g, path, "end-windows")
    pos = _index(v)
    # Both neighbourhoods now avoid Y; v_t is not an in-neighbour of v_0.
    i_hi = k - (3 * ell + 1) // 2
    stars = _indices(g.out_adj[v[t]], pos, 1, i_hi)
    if not stars:
        raise _violation("no i* in 1..k-ceil(3ell/2)", g, path, k, ell)
    i_star = stars[0]
    res = prop32_case_ii(g, path, k, ell, budget, i=i_star)
    if res is not None:
        return res
    out_prev = g.out_adj[v[i_star - 1]]
    in_y = _indices(out_prev, pos, d, t - d)
    if not in_y:
        in_z = set(_indices(out_prev, pos, t - d + 1, t))
        s_set = [j + 1 for j in _indices(g.in_adj[v[0]], pos, t - d + 1, t - 1)]
        hits = [p for p in s_set if p in in_z]
        if not hits:
            raise _violation("S and N+(v_{i*-1}) miss each other in Z", g, path, k, ell, i_star=i_star)
        p = hits[0]
        cycle = HostPath(v[:i_star] + v[p:] + v[i_star:p])
        if not (is_directed_path(g, cycle.verts) and g.has_arc(cycle.last, cycle.first)):
            raise _violation("S-cycle is not a Hamilton cycle", g, path, k, ell, i_star=i_star, p=p)
        sub = prop32_case_iii(g, cycle, k, ell)
        if sub is None:
            raise _violation("S-cycle gave no split", g, path, k, ell, i_star=i_star, p=p)
        sub.witnesses = {"i_star": i_star, "p": p, **{f"cycle_{key}": val for key, val in sub.witnesses.items()}}
        sub.paths["S"] = [v[j] for j in s_set]
        sub.subcase = sub.subcase or sub.case
        sub.case = SMALL_HAMILTON_S
        return sub
    p = in_y[0]
    if p >= ell + i_star:
        p1 = HostPath((v[i_star - 1],) + v[p:])
        p2 = HostPath(v[i_star - 1:p])
        return CaseResult(SMALL_Y_FAR, p1, p2, {"i_star": i_star, "p": p})
    jays = _indices(g.in_adj[v[0]], pos, t - d + 1, t - ell // 2)
    if not jays:
        raise _violation("no j* in t-k+ell+1..t-floor(ell/2)", g, path, k, ell, i_star=i_star, p=p)
    j_star = jays[0]
    p1 = HostPath(v[j_star:] + v[i_star:p])
    p2 = HostPath((v[j_star],) + v[:i_star] + v[p:j_star])
    return CaseResult(SMALL_Y_NEAR, p1, p2, {"i_star": i_star, "p": p, "j_star": j_star})


def thm_large_ell(g: OrientedGraph, path: HostPath, k: int, ell: int) -> CaseResult:
    v, t, d = path.verts, path.length, k - ell
    if not 3 * t >= 4 * k:
        raise _violation("large-ell branch needs t >= 4k/3", g, path, k, ell)
    _require_in_path(g, path, LARGE_Q)
    pos = _index(v)
    q_lo, q_hi, r_lo, r_hi = d, t - ell, ell, t - d
    hits = [i for i in _indices(g.in_adj[v[0]], pos, d, t - d) if q_lo <= i <= q_hi or r_lo <= i <= r_hi]
    if not hits:
        raise _violation("N-(v_0) misses Q and R", g, path, k, ell)
    i = hits[0]
    case = LARGE_Q if q_lo <= i <= q_hi else LARGE_R
    return CaseResult(case, HostPath((v[i],) + v[:i]), HostPath(v[i:]), {"i": i})


def dispatch(g: OrientedGraph, path: HostPath, k: int, ell: int, budget: SearchBudget = DEFAULT_BUDGET) -> CaseResult:
    """Run the case analysis for back-first ``P(<-ell, ->k-ell)`` on a longest path."""
    _check_range(k, ell)
    if is_small_ell(k, ell):
        return thm_small_ell(g, path, k, ell, budget)
    return thm_large_ell(g, path, k, ell)


# -- top level ------------------------------------------------------------------

def _path_long_enough(k: int, ell: int, t: int) -> bool:
    if is_small_ell(k, ell):
        return t >= 2 * k - ell
    return 3 * t >= 4 * k


def embed_two_block(
    g: OrientedGraph,
    spec: TwoBlockSpec,
    budget: SearchBudget = DEFAULT_BUDGET,
    heuristic: bool = False,
) -> tuple[Embedding, ProofTrace]:
    """Embed ``spec`` in ``g`` constructively; ``g`` must meet the threshold.

    Raises :class:`ThresholdNotMet` below the threshold and
    :class:`CaseAnalysisExhausted` if no case applies (a bug report; it
    never happens when the threshold holds and the path is a true maximum).
    """
    norm, reverse = normalize_spec(spec)
    k, ell = norm.k, norm.ell
    delta = min_semidegree(g)
    if not meets_threshold(k, ell, delta):
        raise ThresholdNotMet(f"semidegree {delta} < {threshold(k, ell)} for k={k}, ell={ell}")
    host = reverse_graph(g) if reverse else g

    source = "exact"
    if heuristic:
        path = greedy_maximal_path(host)
        source = "heuristic"
        if not _path_long_enough(k, ell, path.length):
            path, source = longest_directed_path(host, budget), "exact-fallback"
    else:
        path = longest_directed_path(host, budget)

    restarts = 0
    while True:
        try:
            res = dispatch(host, path, k, ell, budget)
            break
        except LongerPathFound as exc:
            if source != "heuristic" or restarts >= host.n:
                raise _violation(f"longest path was beaten ({exc.case})", host, path, k, ell,
                                 longer=list(exc.path.verts)) from None
            path = maximal_extension(host, exc.path)
            restarts += 1

    walk = concat_reverse(res.p1, res.p2)
    emb = extract_two_block(walk, norm)
    swapped = spec.ell != ell
    verts = emb.vertices[::-1] if swapped else emb.vertices
    embedding = Embedding(spec.to_pattern(), verts)

    paths = {"P1": list(res.p1.verts), "P2": list(res.p2.verts)}
    paths.update(res.paths)
    trace = ProofTrace(
        case_fired=res.case,
        path_P=path.verts,
        k=k,
        ell=ell,
        windows=windows_for(k, ell, path.length),
        witnesses=dict(res.witnesses),
        paths=paths,
        subcase=res.subcase,
        graph_reversed=reverse,
        blocks_swapped=swapped,
        path_source=source,
        restarts=restarts,
    )
    ok, bad = verify_embedding(g, embedding.pattern, embedding.vertices)
    problems = check_trace(host, trace)
    if not ok or problems:
        raise _violation("constructed embedding failed verification", host, path, k, ell,
                         violation=None if ok else bad.detail, trace_problems=problems,
                         trace=trace.to_dict())
    return embedding, trace


# -- trace checking ----------------------------------------------------------------

def check_trace(g: OrientedGraph, trace: ProofTrace) -> list[str]:
    """Every membership and length claim of ``trace`` rechecked against ``g``.

    ``g`` is the host the trace lives in (the reversed graph when
    ``trace.graph_reversed``).  Returns a list of problems; empty means valid.
    """
    bad: list[str] = []
    v, t, k, ell = trace.path_P, trace.t, trace.k, trace.ell
    d = k - ell
    w, paths, case = trace.witnesses, trace.paths, trace.case_fired

    def need(cond, msg):
        if not cond:
            bad.append(msg)

    need(is_directed_path(g, v), "path_P is not a directed path")
    need(trace.windows == windows_for(k, ell, t), "windows do not match k, ell, t")
    need(case in CASES, f"unknown case {case!r}")
    if bad:
        return bad
    N_in = lambda x: set(g.in_adj[x])
    N_out = lambda x: set(g.out_adj[x])
    Y = range(d, t - d + 1)
    Z = range(t - d + 1, t + 1)

    p1, p2 = paths.get("P1", []), paths.get("P2", [])
    need(is_directed_path(g, p1) and is_directed_path(g, p2), "P1/P2 are not directed paths")
    need(p1[:1] == p2[:1] and set(p1) & set(p2) == set(p1[:1]), "P1/P2 must share exactly their start")
    a, b = len(p1) - 1, len(p2) - 1
    need((a >= ell and b >= d) or (a >= d and b >= ell), f"lengths {a}, {b} cannot host the pattern")

    if case == PROP_I_FRONT:
        need(w["i"] in Y and v[w["i"]] in N_in(v[0]), "i must index N-(v_0) within Y")
        need(min(a, b) >= d and max(a, b) >= ell, "front split lengths")
    elif case == PROP_I_BACK:
        need(w["j"] in Y and v[w["j"]] in N_out(v[t]), "j must index N+(v_t) within Y")
        need(w["i"] in Z and v[w["i"]] in N_in(v[0]), "i must index N-(v_0) within Z")
        need(a == w["j"] and b == t - w["j"], "back split lengths")
    elif case in (PROP_II_LONG, PROP_II_SHORT):
        i, m = w["i"], w["m"]
        pp = paths["P_prime"]
        need(1 <= i <= d - 1 and v[i] in N_out(v[t]), "i must index N+(v_t) in X minus v_0")
        need(is_directed_path(g, pp) and not set(pp) & set(v), "P' must be a directed path off P")
        need(pp[0] in N_out(v[i - 1]) and len(pp) - 1 == m, "P' must start at an out-neighbour of v_{i-1}")
        need(b == t - i + 1 and b > ell, "P2 must be v_{i-1} .. v_t, longer than ell")
        if case == PROP_II_LONG:
            need(m >= d - 1 and a >= m + 1, "long P' branch lengths")
        else:
            j = w["j"]
            need(m <= d - 2 and 0 <= j <= i - 2 and v[j] in N_out(pp[-1]), "j must index N+(w_m) below i-1")
            need(N_out(pp[-1]) <= set(p1), "P1 must contain N+(w_m)")
            need(a >= d, "short P' branch: length(P1) >= k - ell")
    elif case in (PROP_III, SMALL_HAMILTON_S):
        c = paths["C"]
        need(is_directed_path(g, c) and g.has_arc(c[-1], c[0]), "C must be a directed cycle")
        need(set(c) == set(v), "C must span V(P)")
        ci = w.get("i", w.get("cycle_i"))
        need(ci is not None and d <= ci <= t - d and (c[ci] in N_in(c[0]) or c[ci] in N_out(c[0])),
             "cycle split vertex must be a neighbour of C_0 inside Y")
        if case == PROP_III:
            need(g.has_arc(v[t], v[0]), "PropIII needs the arc v_t -> v_0")
        else:
            i_star, p = w["i_star"], w["p"]
            need(1 <= i_star <= k - (3 * ell + 1) // 2 and v[i_star] in N_out(v[t]), "i* membership")
            need(p in Z and v[p] in N_out(v[i_star - 1]) and v[p - 1] in N_in(v[0]), "p must lie in S and N+(v_{i*-1})")
    elif case == SMALL_Y_FAR:
        i_star, p = w["i_star"], w["p"]
        need(1 <= i_star <= k - (3 * ell + 1) // 2 and v[i_star] in N_out(v[t]), "i* membership")
        need(p in Y and v[p] in N_out(v[i_star - 1]) and p >= ell + i_star, "p must be far in Y")
        need(a == t - p + 1 and a > d and b == p - i_star and b >= ell, "Y-far lengths")
    elif case == SMALL_Y_NEAR:
        i_star, p, j_star = w["i_star"], w["p"], w["j_star"]
        need(1 <= i_star <= k - (3 * ell + 1) // 2 and v[i_star] in N_out(v[t]), "i* membership")
        need(p in Y and v[p] in N_out(v[i_star - 1]) and p <= ell + i_star - 1, "p must be near in Y")
        need(t - d + 1 <= j_star <= t - ell // 2 and v[j_star] in N_in(v[0]), "j* membership")
        need(a == t - j_star + p - i_star and a >= ell, "length(P1) = t - j* + p - i* >= ell")
        need(b == i_star + j_star - p and b >= k - ell + 2, "length(P2) = i* + j* - p >= k - ell + 2")
    elif case in (LARGE_Q, LARGE_R):
        i = w["i"]
        need(v[i] in N_in(v[0]), "i must index N-(v_0)")
        if case == LARGE_Q:
            need(d <= i <= t - ell and a >= d and b >= ell, "Q membership and lengths")
        else:
            need(ell <= i <= t - d and a >= ell and b >= d, "R membership and lengths")
    return bad
