"""Counterexample hunter: sweep a coordinate box, run the criterion, the
local solver, and the bounded oracle against each other, and emit
JSON-ready records.  Output is deterministic for any worker count."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .criterion import Decision, DecisionStatus, decide_qsqrt_m14
from .errors import ParameterError
from .localsolve import LocalVerdict, locally_solvable_everywhere
from .ring import QuadInt
from .search import find_representation


@dataclass(frozen=True)
class HunterHit:
    """A delta passing every local test whose criterion verdict is a global
    obstruction, with no witness below the search bound."""

    delta: QuadInt
    local_report: tuple[LocalVerdict, ...]
    decision: Decision
    search_exhausted_bound: int


@dataclass(frozen=True)
class HuntResult:
    box: int
    bound: int
    records: tuple[dict, ...]
    hits: tuple[HunterHit, ...]
    discrepancies: tuple[dict, ...]
    summary: dict


def _witness_jsonable(witness: tuple[QuadInt, QuadInt] | None) -> dict | None:
    if witness is None:
        return None
    x, y = witness
    return {"x": {"a": x.a, "b": x.b}, "y": {"a": y.a, "b": y.b}}


def _examine(a: int, b: int, bound: int) -> tuple[dict, HunterHit | None]:
    delta = QuadInt(a, b)
    report = find_representation(delta, bound)
    witness = report.witness
    verified = witness is not None and witness[0] * witness[0] + witness[1] * witness[1] == delta
    record = {
        "a": a,
        "b": b,
        "witness": _witness_jsonable(witness),
        "witness_verified": verified,
        "search_states": report.states_examined,
        "hit": False,
        "discrepancy": False,
    }
    if a == 0:
        # outside the criterion's domain: cross-check oracle against the
        # local solver only
        local_ok, verdicts = locally_solvable_everywhere(delta)
        record.update(
            {
                "kind": "a_zero",
                "status": None,
                "branch": None,
                "local_ok": local_ok,
                "failing_places": [v.place.label() for v in verdicts if not v.solvable],
                "discrepancy": witness is not None and not local_ok,
            }
        )
        return record, None
    decision = decide_qsqrt_m14(delta, witness_bound=None)
    status = decision.status
    negative = status in (DecisionStatus.LOCAL_OBSTRUCTION, DecisionStatus.GLOBAL_OBSTRUCTION)
    hit = status is DecisionStatus.GLOBAL_OBSTRUCTION and witness is None
    record.update(
        {
            "kind": "criterion",
            "status": status.value,
            "branch": decision.evidence.branch,
            "local_ok": decision.evidence.condition_local,
            "failing_places": [p.label() for p in decision.failing_places],
            "hit": hit,
            "discrepancy": witness is not None and negative,
        }
    )
    hit_payload = None
    if hit:
        hit_payload = HunterHit(delta, decision.evidence.local_report, decision, bound)
    return record, hit_payload


def _hunt_row(args: tuple[int, int, int]) -> list[tuple[dict, HunterHit | None]]:
    a, box, bound = args
    return [_examine(a, b, bound) for b in range(-box, box + 1) if (a, b) != (0, 0)]


def hunt_counterexamples(box: int, bound: int, workers: int = 1) -> HuntResult:
    """Examine every delta = a + b*sqrt(-14) with |a|, |b| <= box (excluding
    zero) at oracle bound `bound`.  Records come out in ascending (a, b)
    order regardless of worker count."""
    if box < 0:
        raise ParameterError(f"box must be >= 0, got {box}")
    if bound < 1:
        raise ParameterError(f"bound must be >= 1, got {bound}")
    if workers < 1:
        raise ParameterError(f"workers must be >= 1, got {workers}")
    rows = [(a, box, bound) for a in range(-box, box + 1)]
    if workers == 1 or len(rows) <= 1:
        row_results = [_hunt_row(r) for r in rows]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            row_results = list(pool.map(_hunt_row, rows))
    records: list[dict] = []
    hits: list[HunterHit] = []
    for row in row_results:
        for record, hit_payload in row:
            records.append(record)
            if hit_payload is not None:
                hits.append(hit_payload)
    discrepancies = tuple(r for r in records if r["discrepancy"])
    summary = {
        "kind": "summary",
        "box": box,
        "bound": bound,
        "records": len(records),
        "hits": sum(1 for r in records if r["hit"]),
        "discrepancies": len(discrepancies),
        "a_zero": sum(1 for r in records if r["kind"] == "a_zero"),
    }
    return HuntResult(box, bound, tuple(records), tuple(hits), discrepancies, summary)


def result_lines(result: HuntResult) -> list[dict]:
    """The JSON-lines payload: every record, then the summary."""
    return [*result.records, result.summary]
