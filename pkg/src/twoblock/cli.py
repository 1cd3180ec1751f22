"""Command line interface: ``twoblock <command> ...``.

Exit codes: 0 clean, 1 operational error, 2 threshold not met (``embed``),
3 theorem violation detected.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .digraph import load_graph, save_graph, to_dot, to_json
from .embedder import embed_two_block
from .errors import BudgetExhausted, CaseAnalysisExhausted, ThresholdNotMet, TwoBlockError
from .experiments import (
    HUNT_COLUMNS,
    SWEEP_COLUMNS,
    SweepConfig,
    hunt,
    tightness_report,
    verify_theorem,
    write_outputs,
)
from .generators import GeneratorSpec, generate
from .longest import SearchBudget, longest_directed_path
from .oracle import contains_all_orientations, find_pattern_embedding
from .paths import Embedding, Orientation, PathPattern, TwoBlockSpec

EXIT_OK, EXIT_ERROR, EXIT_THRESHOLD, EXIT_VIOLATION = 0, 1, 2, 3

log = logging.getLogger("twoblock")

GEN_FAMILIES = {
    "regular-tournament": "regular_tournament",
    "blowup": "blowup",
    "random": "random_semidegree",
    "random-oriented": "random_oriented",
    "random-tournament": "random_tournament",
    "circulant": "circulant",
    "planted": "planted",
    "end-confined": "end_confined",
}


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _budget(args) -> SearchBudget:
    return SearchBudget(args.node_limit, args.time_limit)


# -- commands -------------------------------------------------------------------

def _one_block(g, args) -> int:
    """``ell`` equal to 0 or ``k``: a directed path, found by longest-path search."""
    forward = (args.ell == 0) == (Orientation(args.orientation) is Orientation.BACK_FIRST)
    pattern = PathPattern(("F" if forward else "B") * args.k)
    p = longest_directed_path(g, _budget(args))
    if p.length < args.k:
        log.error("longest directed path has %d arcs, fewer than %d", p.length, args.k)
        _emit({"found": False, "longest_path_length": p.length})
        return EXIT_THRESHOLD
    verts = p.verts[: args.k + 1]
    _emit(Embedding(pattern, verts if forward else verts[::-1]).to_dict())
    return EXIT_OK


def cmd_embed(args) -> int:
    g = load_graph(args.graph)
    if args.ell in (0, args.k):
        return _one_block(g, args)
    spec = TwoBlockSpec(args.k, args.ell, Orientation(args.orientation))
    try:
        emb, trace = embed_two_block(g, spec, _budget(args), heuristic=args.heuristic)
    except ThresholdNotMet as exc:
        if not args.oracle_fallback:
            log.error("%s", exc)
            return EXIT_THRESHOLD
        log.warning("%s; falling back to the exhaustive oracle", exc)
        rep = find_pattern_embedding(g, spec.to_pattern(), _budget(args))
        if rep.found:
            _emit(rep.embedding.to_dict())
            return EXIT_OK
        _emit(rep.to_dict())
        return EXIT_THRESHOLD
    _emit(emb.to_dict())
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace.to_dict(), indent=2) + "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = load_graph(args.graph)
    if args.all_orientations:
        if args.k is None:
            raise SystemExit("--all-orientations needs --k")
        _emit(contains_all_orientations(g, args.k, _budget(args)).to_dict())
    elif args.pattern:
        _emit(find_pattern_embedding(g, PathPattern(args.pattern.upper()), _budget(args)).to_dict())
    else:
        raise SystemExit("give --pattern or --all-orientations")
    return EXIT_OK


def cmd_gen(args) -> int:
    params = {"n": args.n, "m": args.m, "base": args.base, "d": args.min_semidegree,
              "prune": args.prune, "arc_prob": args.arc_prob, "window": args.window,
              "variant": args.variant, "offsets": args.offsets}
    g = generate(GeneratorSpec(GEN_FAMILIES[args.family], {k: v for k, v in params.items() if v is not None}, args.seed))
    if args.out:
        if args.dot:
            Path(args.out).write_text(to_dot(g))
        else:
            save_graph(g, args.out)
    else:
        print(to_dot(g) if args.dot else to_json(g), end="" if args.dot else "\n")
    return EXIT_OK


def cmd_longest_path(args) -> int:
    g = load_graph(args.graph)
    try:
        p = longest_directed_path(g, _budget(args))
        _emit({"length": p.length, "vertices": list(p.verts), "certified": True})
    except BudgetExhausted as exc:
        _emit({"length": len(exc.partial) - 1, "vertices": exc.partial, "certified": False})
    return EXIT_OK


def _sweep_config(args) -> SweepConfig:
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    else:
        data = {}
    overrides = {
        "k_values": args.k, "instances": args.instances, "seed": args.seed,
        "oracle_fraction": args.oracle_fraction, "families": args.families,
        "node_limit": args.node_limit if args.node_limit != DEFAULT_NODES else None,
        "time_limit": args.time_limit if args.time_limit != DEFAULT_TIME else None,
        "jobs": args.jobs,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    if args.heuristic:
        data["heuristic"] = True
    if args.graphs:
        data.setdefault("graphs", [])
        for path in args.graphs:
            with open(path) as fh:
                item = json.load(fh)
            item.setdefault("id", Path(path).stem)
            data["graphs"].append(item)
    return SweepConfig(**data)


def cmd_verify_theorem(args) -> int:
    cfg = _sweep_config(args)
    res = verify_theorem(cfg)
    csv_path, json_path = write_outputs(args.out_dir, args.stem, res.rows, SWEEP_COLUMNS, res.summary)
    log.info("wrote %s and %s", csv_path, json_path)
    _emit({key: res.summary[key] for key in ("rows", "outcomes", "theorem_violations", "case_histogram")})
    return EXIT_VIOLATION if res.violations or res.summary["verify_failures"] else EXIT_OK


def cmd_tightness(args) -> int:
    rep = tightness_report(args.k, _budget(args))
    if args.out:
        Path(args.out).write_text(json.dumps(rep, indent=2) + "\n")
    _emit(rep)
    return EXIT_OK


def cmd_hunt(args) -> int:
    res = hunt(args.n_max, args.k, args.rule, args.mode, args.samples, args.seed, _budget(args),
               min_delta=args.min_semidegree)
    summary = dict(res.summary)
    summary["conjecture_candidates"] = [r["arcs"] for r in res.conjecture_counterexamples]
    summary["question_candidates"] = [r["arcs"] for r in res.question_counterexamples]
    if args.out_dir:
        write_outputs(args.out_dir, args.stem, res.rows, HUNT_COLUMNS, summary)
    _emit(summary)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

DEFAULT_NODES = SearchBudget().node_limit
DEFAULT_TIME = SearchBudget().time_limit


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--node-limit", type=int, default=DEFAULT_NODES, help="search node budget")
    common.add_argument("--time-limit", type=float, default=DEFAULT_TIME, help="search time budget in seconds")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="twoblock", description="Two-block oriented paths in oriented graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", parents=[common], help="embed a two-block path constructively")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--orientation", choices=[o.value for o in Orientation], default="back-first")
    p.add_argument("--trace", help="write the proof trace JSON here")
    p.add_argument("--oracle-fallback", action="store_true", help="below the threshold, search exhaustively")
    p.add_argument("--heuristic", action="store_true", help="start from a greedy maximal path")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive pattern search")
    p.add_argument("graph")
    p.add_argument("--pattern", help="F/B string, e.g. FBFB")
    p.add_argument("--all-orientations", action="store_true")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a graph")
    p.add_argument("--family", choices=sorted(GEN_FAMILIES), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, help="blowup factor")
    p.add_argument("--base", help="blowup base: triangle or tournamentN")
    p.add_argument("--min-semidegree", type=int)
    p.add_argument("--prune", type=float)
    p.add_argument("--arc-prob", type=float)
    p.add_argument("--offsets", type=int, nargs="+")
    p.add_argument("--window", type=int)
    p.add_argument("--variant")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--dot", action="store_true", help="write Graphviz DOT instead of JSON")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("longest-path", parents=[common], help="exact longest directed path")
    p.add_argument("graph")
    p.set_defaults(func=cmd_longest_path)

    p = sub.add_parser("verify-theorem", parents=[common], help="threshold verification sweep")
    p.add_argument("--config", help="sweep JSON; flags override its fields")
    p.add_argument("--k", type=int, nargs="+")
    p.add_argument("--instances", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--families", nargs="+")
    p.add_argument("--oracle-fraction", type=float)
    p.add_argument("--heuristic", action="store_true")
    p.add_argument("--graph", dest="graphs", action="append", help="extra graph JSON, run for every (k, ell)")
    p.add_argument("--jobs", type=int)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--stem", default="sweep")
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("tightness", parents=[common], help="extremal constructions for even k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tightness)

    p = sub.add_parser("hunt", parents=[common], help="search small graphs for missing orientations")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rule", choices=["conjecture", "question"], default="conjecture")
    p.add_argument("--min-semidegree", type=int, help="override the rule's semidegree")
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; hunting runs in one process")
    p.add_argument("--out-dir")
    p.add_argument("--stem", default="hunt")
    p.set_defaults(func=cmd_hunt)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except CaseAnalysisExhausted as exc:
        log.error("THEOREM-VIOLATION: %s", exc)
        return EXIT_VIOLATION
    except (TwoBlockError, OSError, ValueError, KeyError) as exc:
        log.error("%s", exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
