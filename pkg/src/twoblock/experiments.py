"""Batch runs: threshold verification sweeps, tightness checks, conjecture hunts.

Every run is seeded; rows are sorted before they are written so output is
independent of worker scheduling.  Columns whose name starts with ``time_``
are the only non-deterministic ones.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Optional

from .digraph import OrientedGraph, from_dict, min_semidegree, reverse_graph, to_json
from .embedder import CASES, check_trace, embed_two_block, required_semidegree, threshold
from .errors import AttemptsExhausted, BudgetExhausted, CaseAnalysisExhausted, ThresholdNotMet
from .generators import (
    END_VARIANTS,
    blowup,
    circulant,
    directed_triangle,
    end_confined_feasible,
    end_confined_graph,
    random_oriented_graph,
    random_with_min_semidegree,
    regular_tournament,
)
from .longest import SearchBudget, longest_directed_path
from .oracle import contains_all_orientations, find_pattern_embedding
from .paths import Orientation, PathPattern, TwoBlockSpec, embedding_ok

log = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "graph_id", "family", "n", "delta0", "threshold", "k", "ell", "orientation",
    "outcome", "case_fired", "subcase", "path_length", "verified", "trace_check", "oracle",
    "time_embed_ms", "time_oracle_ms",
]
HUNT_COLUMNS = [
    "graph_id", "n", "delta0", "arcs", "missing", "missing_non_antidirected",
    "conjecture_candidate", "question_candidate", "inconclusive", "time_ms",
]
OK, THRESHOLD_NOT_MET, VIOLATION, BUDGET = "ok", "ThresholdNotMet", "THEOREM-VIOLATION", "BudgetExhausted"
DEFAULT_FAMILIES = ("random_semidegree", "end_confined", "blowup", "circulant")


@dataclass
class SweepConfig:
    k_values: list[int] = field(default_factory=lambda: list(range(4, 11)))
    ells: Optional[dict] = None  # {k: [ell, ...]}; None means every ell in [ceil(k/2), k-1]
    instances: int = 100
    families: list[str] = field(default_factory=lambda: list(DEFAULT_FAMILIES))
    seed: int = 0
    oracle_fraction: Optional[float] = None  # None: all instances with n <= 12, 10% above
    node_limit: int = 20_000_000
    time_limit: float = 300.0
    heuristic: bool = False
    jobs: int = 1
    graphs: list[dict] = field(default_factory=list)  # extra fixed instances, run for every (k, ell)

    def __post_init__(self):
        if self.instances < 0:
            raise ValueError("instances must be non-negative")
        unknown = set(self.families) - set(DEFAULT_FAMILIES)
        if unknown or not self.families:
            raise ValueError(f"families must be drawn from {', '.join(DEFAULT_FAMILIES)}")
        for k, ell in self.pairs():
            if not (2 * ell >= k and ell < k):
                raise ValueError(f"(k={k}, ell={ell}) outside ceil(k/2) <= ell <= k-1")

    def pairs(self) -> list[tuple[int, int]]:
        out = []
        for k in self.k_values:
            ells = (self.ells or {}).get(k, (self.ells or {}).get(str(k)))
            if ells is None:
                ells = range((k + 1) // 2, k)
            out += [(k, ell) for ell in ells]
        return out

    @property
    def budget(self) -> SearchBudget:
        return SearchBudget(self.node_limit, self.time_limit)

    @classmethod
    def from_file(cls, path) -> "SweepConfig":
        with open(path) as fh:
            return cls(**json.load(fh))


@dataclass
class SweepResult:
    rows: list[dict]
    summary: dict

    @property
    def violations(self) -> int:
        return self.summary["theorem_violations"]


# -- instance supply ------------------------------------------------------------

def _relabel(g: OrientedGraph, rng: random.Random) -> OrientedGraph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return OrientedGraph(g.n, [(perm[u], perm[v]) for u, v in g.arcs])


def _instance(family: str, k: int, ell: int, rng: random.Random) -> tuple[str, OrientedGraph]:
    """Graph with ``n <= 3k`` and semidegree at least the threshold for ``(k, ell)``."""
    d = required_semidegree(k, ell)
    if rng.random() < 0.25 and 2 * (d + 1) + 1 <= 3 * k:
        d += 1
    n_max = 3 * k
    if family == "end_confined":
        n = rng.randint(max(2 * d + 1, 2 * k - ell + 1), n_max)
        variants = [v for v in END_VARIANTS if end_confined_feasible(n, k - ell, d, v)]
        if variants:
            variant = rng.choice(variants)
            try:
                return f"end_confined:{variant}", end_confined_graph(n, k - ell, d, rng.randrange(2**32), variant)
            except AttemptsExhausted:
                pass
        family = "random_semidegree"
    if family == "blowup":
        choices = [b for b in (3, 5, 7) if b * -(-d // ((b - 1) // 2)) <= n_max]
        if choices:
            b = rng.choice(choices)
            m = -(-d // ((b - 1) // 2))
            return f"blowup:T{b}x{m}", _relabel(blowup(regular_tournament(b), m), rng)
        family = "random_semidegree"
    if family == "circulant":
        n = rng.randint(2 * d + 1, n_max)
        half = list(range(1, (n - 1) // 2 + 1))
        rng.shuffle(half)
        offsets = [s if rng.random() < 0.5 else n - s for s in half[: rng.randint(d, len(half))]]
        return f"circulant:{n}", _relabel(circulant(n, offsets), rng)
    n = rng.randint(2 * d + 1, n_max)
    prune = rng.choice((1.0, 0.5, 0.0))
    return f"random_semidegree:p{prune}", random_with_min_semidegree(n, d, rng.randrange(2**32), prune=prune)


def _oracle_wanted(cfg: SweepConfig, n: int, rng: random.Random) -> bool:
    frac = cfg.oracle_fraction
    if frac is None:
        frac = 1.0 if n <= 12 else 0.1
    return rng.random() < frac


def run_instance(g: OrientedGraph, graph_id: str, family: str, k: int, ell: int,
                 cfg: SweepConfig, check_oracle: bool) -> list[dict]:
    """Embed both orientations of the (k, ell) two-block path in ``g``; one row each."""
    delta = min_semidegree(g)
    rows = []
    for orient in Orientation:
        spec = TwoBlockSpec(k, ell, orient)
        row = {
            "graph_id": graph_id, "family": family, "n": g.n, "delta0": delta,
            "threshold": str(threshold(k, ell)), "k": k, "ell": ell, "orientation": orient.value,
            "outcome": "", "case_fired": "", "subcase": "", "path_length": "",
            "verified": "", "trace_check": "", "oracle": "skipped", "time_embed_ms": 0, "time_oracle_ms": 0,
        }
        t0 = time.perf_counter()
        emb = None
        try:
            emb, trace = embed_two_block(g, spec, cfg.budget, heuristic=cfg.heuristic)
            host = reverse_graph(g) if trace.graph_reversed else g
            row.update(outcome=OK, case_fired=trace.case_fired, subcase=trace.subcase,
                       path_length=trace.t, verified="pass" if embedding_ok(g, emb) else "fail",
                       trace_check="pass" if not check_trace(host, trace) else "fail")
        except ThresholdNotMet:
            row["outcome"] = THRESHOLD_NOT_MET
        except CaseAnalysisExhausted as exc:
            row["outcome"] = VIOLATION
            log.error("THEOREM-VIOLATION on %s (k=%d, ell=%d, %s): %s", graph_id, k, ell, orient.value, exc)
        except BudgetExhausted:
            row["outcome"] = BUDGET
        row["time_embed_ms"] = round(1000 * (time.perf_counter() - t0), 3)
        if check_oracle:
            t0 = time.perf_counter()
            rep = find_pattern_embedding(g, spec.to_pattern(), cfg.budget)
            row["oracle"] = "found" if rep.found else ("absent" if rep.complete else "inconclusive")
            row["time_oracle_ms"] = round(1000 * (time.perf_counter() - t0), 3)
            if emb is not None and not rep.found:
                row["outcome"] = VIOLATION
                log.error("oracle disagrees with embedder on %s", graph_id)
        rows.append(row)
    return rows


def _work_item(args) -> list[dict]:
    cfg, k, ell, idx = args
    rng = random.Random(f"{cfg.seed}:{k}:{ell}:{idx}")
    family = cfg.families[idx % len(cfg.families)]
    label, g = _instance(family, k, ell, rng)
    return run_instance(g, f"k{k}-l{ell}-{idx:04d}", label, k, ell, cfg, _oracle_wanted(cfg, g.n, rng))


def _fixed_item(args) -> list[dict]:
    cfg, k, ell, idx = args
    g = from_dict(cfg.graphs[idx])
    gid = cfg.graphs[idx].get("id", f"fixed-{idx}")
    rng = random.Random(f"{cfg.seed}:fixed:{k}:{ell}:{idx}")
    return run_instance(g, f"{gid}-k{k}-l{ell}", "fixed", k, ell, cfg, _oracle_wanted(cfg, g.n, rng))


def _run_items(fn, items, jobs) -> Iterator[list[dict]]:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(fn, items, chunksize=8)
    else:
        yield from map(fn, items)


def _sort_key(row):
    return (row["k"], row["ell"], row["graph_id"], row["orientation"])


def threshold_table(k_values) -> list[dict]:
    return [
        {"k": k, "ell": ell, "threshold": str(threshold(k, ell)), "required_semidegree": required_semidegree(k, ell)}
        for k in k_values
        for ell in range((k + 1) // 2, k)
    ]


def verify_theorem(cfg: SweepConfig) -> SweepResult:
    pairs = cfg.pairs()
    rows: list[dict] = []
    items = [(cfg, k, ell, idx) for k, ell in pairs for idx in range(cfg.instances)]
    for chunk in _run_items(_work_item, items, cfg.jobs):
        rows.extend(chunk)
    fixed = [(cfg, k, ell, idx) for k, ell in pairs for idx in range(len(cfg.graphs))]
    for chunk in _run_items(_fixed_item, fixed, cfg.jobs):
        rows.extend(chunk)
    rows.sort(key=_sort_key)
    outcomes = Counter(r["outcome"] for r in rows)
    cases = Counter(r["case_fired"] for r in rows if r["case_fired"])
    summary = {
        "rows": len(rows),
        "outcomes": dict(sorted(outcomes.items())),
        "theorem_violations": outcomes.get(VIOLATION, 0),
        "verify_failures": sum(r["verified"] == "fail" for r in rows),
        "trace_failures": sum(r["trace_check"] == "fail" for r in rows),
        "case_histogram": {c: cases.get(c, 0) for c in CASES},
        "oracle": dict(sorted(Counter(r["oracle"] for r in rows).items())),
        "threshold_table": threshold_table(sorted({k for k, _ in pairs})),
        "config": {key: val for key, val in asdict(cfg).items() if key != "graphs"},
    }
    return SweepResult(rows, summary)


# -- small-graph cross-checks ----------------------------------------------------

def agreement_run(instances: int = 1000, n_max: int = 12, seed: int = 0,
                  budget: SearchBudget = SearchBudget()) -> list[dict]:
    """Random small instances straddling the threshold, each embedded and oracle-checked.

    The semidegree target is drawn from ``required - 2 .. required + 1`` so
    roughly half the instances fall below the threshold.  The oracle runs on
    every instance; below the threshold its answer is informational.
    """
    cfg = SweepConfig(k_values=[], instances=0, oracle_fraction=1.0,
                      node_limit=budget.node_limit, time_limit=budget.time_limit)
    # only pairs whose threshold is attainable on n_max vertices
    pairs = [(k, ell) for k in range(2, n_max) for ell in range((k + 1) // 2, k)
             if 2 * required_semidegree(k, ell) + 1 <= n_max]
    rows = []
    for idx in range(instances):
        rng = random.Random(f"agree:{seed}:{idx}")
        k, ell = rng.choice(pairs)
        d = max(0, min(required_semidegree(k, ell) + rng.randint(-2, 1), (n_max - 1) // 2))
        n = rng.randint(max(k + 1, 2 * d + 1), n_max)
        g = random_with_min_semidegree(n, d, rng.randrange(2**32), prune=rng.choice((1.0, 0.5)))
        rows += run_instance(g, f"agree-{idx:05d}", "random_semidegree", k, ell, cfg, True)
    return rows


def jackson_survey(count: int = 2000, n_max: int = 16, seed: int = 0,
                   budget: SearchBudget = SearchBudget()) -> list[dict]:
    """Exact longest-path lengths against twice the semidegree on random graphs."""
    rows = []
    for idx in range(count):
        rng = random.Random(f"jackson:{seed}:{idx}")
        n = rng.randint(1, n_max)
        if rng.random() < 0.5:
            g = random_oriented_graph(n, rng.random(), rng.randrange(2**32))
        else:
            d = rng.randint(0, (n - 1) // 2)
            g = random_with_min_semidegree(n, d, rng.randrange(2**32), prune=rng.random())
        delta = min_semidegree(g)
        try:
            length, certified = longest_directed_path(g, budget).length, True
        except BudgetExhausted as exc:
            length, certified = len(exc.partial) - 1, False
        rows.append({"graph_id": f"jackson-{idx:05d}", "n": g.n, "delta0": delta,
                     "length": length, "certified": certified, "holds": length >= 2 * delta})
    return rows


# -- tightness -------------------------------------------------------------------

def tightness_report(k: int, budget: SearchBudget = SearchBudget()) -> dict:
    """Extremal constructions for even ``k``: regular tournament on k+1 vertices and blowup of the triangle."""
    if k < 2 or k % 2:
        raise ValueError("tightness constructions need an even k >= 2")
    t = regular_tournament(k + 1)
    all_k = contains_all_orientations(t, k, budget)
    two_block = {}
    for ell in range(1, k):
        for orient in Orientation:
            spec = TwoBlockSpec(k, ell, orient)
            rep = find_pattern_embedding(t, spec.to_pattern(), budget)
            two_block[spec.to_pattern().dirs] = "found" if rep.found else ("absent" if rep.complete else "inconclusive")
    b = blowup(directed_triangle(), k // 2)
    anti = [PathPattern(("FB" * k)[:k]), PathPattern(("BF" * k)[:k])]
    anti_reports = {p.dirs: find_pattern_embedding(b, p, budget) for p in anti}
    return {
        "k": k,
        "tournament": {
            "n": t.n,
            "delta0": min_semidegree(t),
            "all_orientations": {
                "classes": len(all_k.reports),
                "missing": [p.dirs for p in all_k.missing],
                "missing_antidirected": [p.dirs for p in all_k.missing if p.is_antidirected()],
                "missing_non_antidirected": [p.dirs for p in all_k.missing_non_antidirected],
                "inconclusive": [p.dirs for p in all_k.inconclusive],
            },
            "two_block": two_block,
            "all_two_block_present": all(v == "found" for v in two_block.values()),
            "longer_paths": {
                "arcs": k + 1,
                "present": False,
                "certificate": f"a {k + 1}-arc path needs {k + 2} vertices, the tournament has {t.n}",
            },
        },
        "blowup": {
            "n": b.n,
            "delta0": min_semidegree(b),
            "antidirected": {
                p: ("found" if r.found else ("absent" if r.complete else "inconclusive"))
                for p, r in anti_reports.items()
            },
            "antidirected_absent": all(r.certified_absent for r in anti_reports.values()),
        },
    }


# -- hunting ----------------------------------------------------------------------

def enumerate_oriented_graphs(n: int, min_delta: int = 0) -> Iterator[OrientedGraph]:
    """Every labelled oriented graph on ``n`` vertices with semidegree >= ``min_delta``.

    Pairs are decided in lexicographic order; a branch dies as soon as some
    vertex cannot reach ``min_delta`` with its undecided pairs.
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    left = [n - 1] * n
    out = [0] * n
    inn = [0] * n
    arcs: list[tuple[int, int]] = []

    def feasible(x):
        return out[x] + left[x] >= min_delta and inn[x] + left[x] >= min_delta and \
            out[x] + inn[x] + left[x] >= 2 * min_delta

    def rec(idx):
        if idx == len(pairs):
            if all(feasible(x) for x in range(n)):
                yield OrientedGraph(n, arcs)
            return
        u, v = pairs[idx]
        left[u] -= 1
        left[v] -= 1
        for choice in (None, (u, v), (v, u)):
            if choice:
                a, b = choice
                out[a] += 1
                inn[b] += 1
                arcs.append(choice)
            if feasible(u) and feasible(v):
                yield from rec(idx + 1)
            if choice:
                arcs.pop()
                out[a] -= 1
                inn[b] -= 1
        left[u] += 1
        left[v] += 1

    if n == 0:
        if min_delta <= 0:
            yield OrientedGraph(0, [])
        return
    yield from rec(0)


def hunt_min_semidegree(k: int, rule: str) -> int:
    """``conjecture``: semidegree > k/2; ``question``: semidegree >= k/2."""
    if rule == "conjecture":
        return k // 2 + 1
    if rule == "question":
        return (k + 1) // 2
    raise ValueError(f"unknown rule {rule!r}")


@dataclass
class HuntResult:
    rows: list[dict]
    conjecture_counterexamples: list[dict]
    question_counterexamples: list[dict]
    summary: dict


def hunt(
    n_max: int,
    k: int,
    rule: str = "conjecture",
    mode: str = "exhaustive",
    samples: int = 100,
    seed: int = 0,
    budget: SearchBudget = SearchBudget(),
    min_delta: Optional[int] = None,
) -> HuntResult:
    d = hunt_min_semidegree(k, rule) if min_delta is None else min_delta
    if mode == "exhaustive":
        if n_max > 6:
            raise ValueError("exhaustive hunting is limited to n <= 6")
        graphs = ((f"n{n}-{i:06d}", g) for n in range(1, n_max + 1)
                  for i, g in enumerate(enumerate_oriented_graphs(n, d)))
    elif mode == "random":
        def sampled():
            rng = random.Random(f"hunt:{seed}:{k}:{d}")
            sizes = [n for n in range(2 * d + 1, n_max + 1)]
            for i in range(samples if sizes else 0):
                n = rng.choice(sizes)
                yield f"s{i:06d}", random_with_min_semidegree(n, d, rng.randrange(2**32), prune=rng.random())
        graphs = sampled()
    else:
        raise ValueError(f"unknown mode {mode!r}")

    rows = []
    for gid, g in graphs:
        t0 = time.perf_counter()
        delta = min_semidegree(g)
        rep = contains_all_orientations(g, k, budget)
        missing = [p.dirs for p in rep.missing]
        non_anti = [p.dirs for p in rep.missing_non_antidirected]
        rows.append({
            "graph_id": gid,
            "n": g.n,
            "delta0": delta,
            "arcs": to_json(g),
            "missing": " ".join(missing),
            "missing_non_antidirected": " ".join(non_anti),
            "conjecture_candidate": int(2 * delta > k and bool(missing)),
            "question_candidate": int(2 * delta >= k and bool(non_anti)),
            "inconclusive": " ".join(p.dirs for p in rep.inconclusive),
            "time_ms": round(1000 * (time.perf_counter() - t0), 3),
        })
    conj = [r for r in rows if r["conjecture_candidate"]]
    ques = [r for r in rows if r["question_candidate"]]
    summary = {
        "mode": mode,
        "n_max": n_max,
        "k": k,
        "rule": rule,
        "min_semidegree": d,
        "graphs_checked": len(rows),
        "infeasible": 2 * d > n_max - 1,
        "conjecture_counterexamples": len(conj),
        "question_counterexamples": len(ques),
        "inconclusive_graphs": sum(bool(r["inconclusive"]) for r in rows),
    }
    return HuntResult(rows, conj, ques, summary)


# -- output --------------------------------------------------------------------------

def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({c: r.get(c, "") for c in columns})
    return buf.getvalue()


def strip_timing(csv_text: str) -> str:
    """The CSV with every ``time_*`` column removed (for determinism checks)."""
    reader = csv.reader(io.StringIO(csv_text))
    header = next(reader)
    keep = [i for i, name in enumerate(header) if not name.startswith("time_")]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([header[i] for i in keep])
    for row in reader:
        writer.writerow([row[i] for i in keep])
    return buf.getvalue()


def write_outputs(out_dir, stem: str, rows: list[dict], columns: list[str], summary: dict) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{stem}.csv"
    json_path = out / f"{stem}.json"
    csv_path.write_text(rows_to_csv(rows, columns))
    json_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return csv_path, json_path
