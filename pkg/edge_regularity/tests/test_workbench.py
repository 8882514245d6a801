import os

import pytest

from edge_regularity.core import CapacityError, ParameterError, family
from edge_regularity.invariants import InvariantReport
from edge_regularity.workbench import (
    Check,
    CheckStatus,
    PoolKind,
    ReportRecord,
    SuiteConfig,
    Workbench,
    debug_from_env,
    run_task,
)


def edge_count_task(g, graph_id, config):
    report = InvariantReport(graph_id)
    return ReportRecord(graph_id, "", report, [Check.of("edges", True)], {"m": g.edge_count})


def capped_task(g, graph_id, config):
    raise CapacityError("too big", limit=1, reached=g.n)


def broken_task(g, graph_id, config):
    raise ValueError("boom")


def exiting_task(g, graph_id, config):
    if graph_id == "C7":
        raise SystemExit(1)
    return edge_count_task(g, graph_id, config)


def killed_task(g, graph_id, config):
    if graph_id == "C3":
        os._exit(1)
    return edge_count_task(g, graph_id, config)


def test_defaults():
    bench = Workbench()
    assert bench.suite_config == SuiteConfig()
    assert bench.config["output_format"] == "json"
    assert bench.pool_kind is PoolKind.THREAD


def test_none_values_fall_back_to_defaults():
    bench = Workbench({"jobs": None, "fields": [2, 3], "nmax": 5})
    assert bench.suite_config.jobs == 1
    assert bench.suite_config.fields == (2, 3)
    assert [f.p for f in bench.suite_config.field_specs] == [2, 3]


@pytest.mark.parametrize(
    "config",
    [
        {"jobs": 0},
        {"fields": [4]},
        {"invariants": ["alpha", "girth"]},
        {"output_format": "xml"},
        {"nmax": 65},
        {"timeout_ms": -1},
    ],
    ids=["no_workers", "composite_field", "unknown_invariant", "unknown_format", "nmax", "timeout"],
)
def test_invalid_config(config):
    with pytest.raises(ParameterError):
        Workbench(config)


def test_process_pool_components():
    bench = Workbench({"process_pool": True})
    assert bench.pool_kind is PoolKind.PROCESS
    assert bench.worker_class().__name__ == "Worker"


def test_report_record_status_precedence():
    report = InvariantReport("x")
    record = ReportRecord("x", "@", report)
    assert record.status is CheckStatus.PASS
    record.checks.append(Check("a", CheckStatus.NOTABLE))
    assert record.status is CheckStatus.NOTABLE
    record.checks.append(Check("b", CheckStatus.INCOMPLETE))
    assert record.status is CheckStatus.INCOMPLETE
    record.checks.append(Check.of("c", False))
    assert record.status is CheckStatus.FAIL


def test_runtime_only_reported_with_timings():
    record = ReportRecord("x", "@", InvariantReport("x"), runtime_ms=12)
    assert record.to_dict()["runtime_ms"] == 0
    assert record.to_dict(record_timings=True)["runtime_ms"] == 12


@pytest.mark.parametrize(
    "task,status",
    [
        (edge_count_task, CheckStatus.PASS),
        (capped_task, CheckStatus.INCOMPLETE),
        (broken_task, CheckStatus.FAIL),
    ],
    ids=["ok", "capped", "broken"],
)
def test_run_task_statuses(task, status):
    record = run_task(task, "C5", family("C5"), SuiteConfig())
    assert record.status is status
    assert record.graph_id == "C5"
    if status is not CheckStatus.PASS:
        assert "task" in record.invariants.errors


@pytest.mark.parametrize("jobs", [1, 3], ids=["inline", "thread_pool"])
def test_run_preserves_input_order(jobs):
    bench = Workbench({"jobs": jobs})
    graphs = [(f"C{n}", family(f"C{n}")) for n in range(3, 20)]
    records = list(bench.run(graphs, edge_count_task))
    assert [r.graph_id for r in records] == [name for name, _ in graphs]
    assert [r.values["m"] for r in records] == list(range(3, 20))


def test_thread_pool_turns_errors_into_records():
    bench = Workbench({"jobs": 2})
    records = list(bench.run([("C5", family("C5")), ("C6", family("C6"))], broken_task))
    assert [r.status for r in records] == [CheckStatus.FAIL, CheckStatus.FAIL]


@pytest.mark.filterwarnings("ignore::pytest.PytestUnhandledThreadExceptionWarning")
def test_dead_thread_worker_job_becomes_error_record():
    bench = Workbench({"jobs": 2})
    graphs = [(f"C{n}", family(f"C{n}")) for n in range(3, 12)]
    records = list(bench.run(graphs, exiting_task))
    assert [r.graph_id for r in records] == [name for name, _ in graphs]
    assert [r.graph_id for r in records if r.status is CheckStatus.FAIL] == ["C7"]
    assert "exited while running" in records[4].checks[0].details
    assert records[5].values["m"] == 8


def test_killed_process_worker_job_becomes_error_record():
    bench = Workbench({"jobs": 2, "process_pool": True})
    graphs = [(f"C{n}", family(f"C{n}")) for n in range(3, 9)]
    records = list(bench.run(graphs, killed_task))
    assert [r.graph_id for r in records] == [name for name, _ in graphs]
    assert [r.status for r in records] == [CheckStatus.FAIL] + [CheckStatus.PASS] * 5
    assert [r.values["m"] for r in records[1:]] == [4, 5, 6, 7, 8]


def test_closing_the_stream_early_stops_the_pool():
    bench = Workbench({"jobs": 2})
    graphs = [(f"C{n}", family(f"C{n}")) for n in range(3, 40)]
    stream = bench.run(graphs, edge_count_task)
    assert next(stream).graph_id == "C3"
    stream.close()


@pytest.mark.parametrize(
    "value,expected",
    [("1", True), ("true", True), ("", False), ("0", False)],
    ids=["one", "true", "unset", "zero"],
)
def test_debug_from_env(monkeypatch, value, expected):
    monkeypatch.setenv("EDGE_REGULARITY_DEBUG", value)
    assert debug_from_env() is expected
