"""Hasse-principle counterexample hunter."""

from twosquares.cli import canonical_json
from twosquares.criterion import DecisionStatus
from twosquares.hunt import hunt_counterexamples, result_lines

BOX5_HITS = [
    (-4, 0), (-3, -4), (-3, 4), (-2, 0), (-1, 0),
    (4, -2), (4, 2), (5, -2), (5, 2),
]


def test_box5_fixed():
    res = hunt_counterexamples(5, 100, workers=1)
    assert sorted((h.delta.a, h.delta.b) for h in res.hits) == BOX5_HITS
    assert res.summary == {
        "kind": "summary",
        "box": 5,
        "bound": 100,
        "records": 120,
        "hits": 9,
        "discrepancies": 0,
        "a_zero": 10,
    }
    assert res.discrepancies == ()
    assert len(res.records) == 120


def test_hit_structure():
    res = hunt_counterexamples(5, 60, workers=1)
    assert res.hits
    for hit in res.hits:
        assert hit.decision.status is DecisionStatus.GLOBAL_OBSTRUCTION
        assert hit.decision.evidence.condition_local is True
        assert all(v.solvable for v in hit.local_report)
        assert hit.search_exhausted_bound == 60


def test_hits_conjugation_closed():
    res = hunt_counterexamples(5, 100, workers=1)
    hits = {(h.delta.a, h.delta.b) for h in res.hits}
    assert {(a, -b) for a, b in hits} == hits


def test_records_cover_box_and_flag_kinds():
    res = hunt_counterexamples(3, 40, workers=1)
    seen = {(r["a"], r["b"]) for r in res.records}
    expected = {(a, b) for a in range(-3, 4) for b in range(-3, 4) if (a, b) != (0, 0)}
    assert seen == expected
    for r in res.records:
        if r["a"] == 0:
            assert r["kind"] == "a_zero" and r["status"] is None
        else:
            assert r["kind"] == "criterion" and r["status"] is not None


def test_result_lines_layout():
    res = hunt_counterexamples(2, 30, workers=1)
    lines = result_lines(res)
    assert len(lines) == len(res.records) + 1
    assert lines[-1]["kind"] == "summary"
    assert lines[-1] == res.summary


def test_empty_box():
    res = hunt_counterexamples(0, 10)
    assert res.records == () and res.hits == ()
    assert res.summary["records"] == 0


def test_worker_counts_agree():
    serial = hunt_counterexamples(3, 40, workers=1)
    parallel = hunt_counterexamples(3, 40, workers=3)
    assert [canonical_json(r) for r in result_lines(serial)] == [
        canonical_json(r) for r in result_lines(parallel)
    ]
