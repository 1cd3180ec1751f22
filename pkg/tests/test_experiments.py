import json
from collections import Counter
from math import comb

import pytest

from twoblock.digraph import from_json, min_semidegree, to_dict
from twoblock.embedder import CASES, required_semidegree
from twoblock.experiments import (
    SWEEP_COLUMNS,
    SweepConfig,
    agreement_run,
    enumerate_oriented_graphs,
    hunt,
    hunt_min_semidegree,
    jackson_survey,
    rows_to_csv,
    strip_timing,
    threshold_table,
    tightness_report,
    verify_theorem,
    write_outputs,
)
from twoblock.generators import blowup, directed_triangle


def small_config(**kw):
    base = dict(k_values=[4, 5, 6], instances=4, seed=3)
    base.update(kw)
    return SweepConfig(**base)


def test_config_pairs():
    assert small_config().pairs() == [(4, 2), (4, 3), (5, 3), (5, 4), (6, 3), (6, 4), (6, 5)]
    assert SweepConfig(k_values=[8], ells={"8": [5]}).pairs() == [(8, 5)]
    with pytest.raises(ValueError):
        SweepConfig(k_values=[8], ells={8: [3]})
    with pytest.raises(ValueError):
        SweepConfig(instances=-1)
    with pytest.raises(ValueError):
        SweepConfig(families=["petersen"])


def test_config_from_file(tmp_path):
    (tmp_path / "c.json").write_text(json.dumps({"k_values": [4], "instances": 2, "seed": 9}))
    cfg = SweepConfig.from_file(tmp_path / "c.json")
    assert cfg.pairs() == [(4, 2), (4, 3)] and cfg.seed == 9


def test_sweep_rows():
    res = verify_theorem(small_config())
    assert len(res.rows) == 7 * 4 * 2
    assert res.violations == 0 and res.summary["verify_failures"] == 0
    for r in res.rows:
        assert r["outcome"] == "ok" and r["verified"] == "pass"
        assert r["delta0"] >= required_semidegree(r["k"], r["ell"])
        assert r["n"] <= 3 * r["k"]
        if r["n"] <= 12:
            assert r["oracle"] == "found"
    assert set(res.summary["case_histogram"]) == set(CASES)
    assert Counter(r["orientation"] for r in res.rows) == {"back-first": 28, "forward-first": 28}


def test_sweep_families_rotate():
    res = verify_theorem(small_config(k_values=[8], instances=8))
    assert {r["family"].split(":")[0] for r in res.rows} >= {"random_semidegree", "blowup", "circulant"}


def test_empty_sweep():
    res = verify_theorem(SweepConfig(k_values=[], instances=0))
    assert res.rows == [] and res.violations == 0
    assert res.summary["case_histogram"] == {c: 0 for c in CASES}


def test_below_threshold_instance_is_not_a_violation():
    cfg = small_config(k_values=[6], instances=0, graphs=[dict(to_dict(directed_triangle()), id="tri")])
    res = verify_theorem(cfg)
    assert {r["outcome"] for r in res.rows} == {"ThresholdNotMet"}
    assert res.violations == 0


def test_sweep_is_deterministic_and_parallel_safe():
    a = rows_to_csv(verify_theorem(small_config()).rows, SWEEP_COLUMNS)
    b = rows_to_csv(verify_theorem(small_config(jobs=2)).rows, SWEEP_COLUMNS)
    assert strip_timing(a) == strip_timing(b)
    assert "time_embed_ms" not in strip_timing(a).splitlines()[0]


def test_write_outputs(tmp_path):
    res = verify_theorem(small_config(k_values=[4], instances=1))
    csv_path, json_path = write_outputs(tmp_path, "s", res.rows, SWEEP_COLUMNS, res.summary)
    assert csv_path.read_text().splitlines()[0] == ",".join(SWEEP_COLUMNS)
    summary = json.loads(json_path.read_text())
    assert summary["threshold_table"] == threshold_table([4])


def test_threshold_table():
    assert threshold_table([6]) == [
        {"k": 6, "ell": 3, "threshold": "9/2", "required_semidegree": 5},
        {"k": 6, "ell": 4, "threshold": "4", "required_semidegree": 4},
        {"k": 6, "ell": 5, "threshold": "4", "required_semidegree": 4},
    ]


def test_agreement_run_mixes_both_sides():
    rows = agreement_run(60, seed=1)
    outcomes = Counter(r["outcome"] for r in rows)
    assert outcomes["ok"] and outcomes["ThresholdNotMet"] and "THEOREM-VIOLATION" not in outcomes
    assert all(r["oracle"] == "found" for r in rows if r["outcome"] == "ok")


def test_jackson_survey():
    rows = jackson_survey(100, n_max=12, seed=2)
    assert all(r["certified"] and r["holds"] for r in rows)


def test_tightness_k4():
    rep = tightness_report(4)
    assert rep["tournament"]["delta0"] == 2
    assert rep["tournament"]["all_two_block_present"]
    assert rep["tournament"]["all_orientations"]["missing_non_antidirected"] == []
    assert rep["tournament"]["longer_paths"]["present"] is False
    assert rep["blowup"]["delta0"] == 2 and rep["blowup"]["antidirected_absent"]
    assert rep["blowup"]["antidirected"] == {"FBFB": "absent", "BFBF": "absent"}


def test_tightness_needs_even_k():
    with pytest.raises(ValueError):
        tightness_report(5)


@pytest.mark.parametrize("n", range(0, 5))
def test_enumeration_counts(n):
    graphs = list(enumerate_oriented_graphs(n))
    assert len(graphs) == 3 ** comb(n, 2)
    assert len(set(graphs)) == len(graphs)


def test_enumeration_with_degree_filter():
    # every labelled oriented graph on 5 vertices with semidegree 2 is a regular tournament
    graphs = list(enumerate_oriented_graphs(5, 2))
    brute = [g for g in enumerate_oriented_graphs(5) if min_semidegree(g) >= 2]
    assert set(graphs) == set(brute) and len(graphs) == 24
    assert all(len(g.arcs) == 10 for g in graphs)
    assert list(enumerate_oriented_graphs(4, 2)) == []


def test_hunt_rules():
    assert hunt_min_semidegree(3, "conjecture") == 2
    assert hunt_min_semidegree(4, "conjecture") == 3
    assert hunt_min_semidegree(3, "question") == 2
    assert hunt_min_semidegree(4, "question") == 2
    with pytest.raises(ValueError):
        hunt_min_semidegree(4, "guess")


def test_hunt_small_exhaustive():
    res = hunt(5, 3, "conjecture")
    assert res.conjecture_counterexamples == [] and res.question_counterexamples == []
    assert res.summary["graphs_checked"] == 24


def test_hunt_infeasible_rule():
    res = hunt(4, 4, "conjecture")
    assert res.rows == [] and res.summary["infeasible"]


def test_hunt_question_rule_flags_triangle_blowup():
    # blowup(triangle, 2) has semidegree 2 but no path x0 <- x1 -> x2 -> x3 <- x4:
    # x0, x2 and x4 would all have to sit in the same part of size two.
    res = hunt(6, 4, "question")
    flagged = {r["arcs"] for r in res.question_counterexamples}
    assert res.conjecture_counterexamples == []
    assert flagged and all("BFFB" in r["missing_non_antidirected"].split() for r in res.question_counterexamples)
    assert all(from_json(a).n == 6 and min_semidegree(from_json(a)) == 2 for a in flagged)
    b = blowup(directed_triangle(), 2)
    assert any(len(from_json(a).arcs) == len(b.arcs) for a in flagged)


def test_hunt_random_mode_reproducible():
    a = hunt(9, 4, "conjecture", mode="random", samples=15, seed=4)
    b = hunt(9, 4, "conjecture", mode="random", samples=15, seed=4)
    assert [r["arcs"] for r in a.rows] == [r["arcs"] for r in b.rows]
    assert len(a.rows) == 15 and all(r["delta0"] >= 3 for r in a.rows)


def test_hunt_rejects_large_exhaustive():
    with pytest.raises(ValueError):
        hunt(7, 3)
    with pytest.raises(ValueError):
        hunt(4, 3, mode="clever")
