from functools import partial

import pytest

from edge_regularity.core import family, induced_subgraph
from edge_regularity.corpus import atlas_graphs
from edge_regularity.covers import cochord_exact, split_cover
from edge_regularity.homology import FieldSpec, RegularityResult, complex_regularity
from edge_regularity.invariants import InvariantReport, induced_matching_number
from edge_regularity.recognition import is_chordal, is_weakly_chordal
from edge_regularity.report import emit_report
from edge_regularity.suites import (
    bounds_task,
    cmd_invariants,
    cmd_reproduce_gap,
    cmd_reproduce_paths_cycles,
    cmd_reproduce_scm_example,
    cmd_search_q51,
    cochord_task,
    cover_task,
    expected_cycle_cochord,
    fields_task,
    gap_graph,
    invariants_task,
    kunneth_task,
    petersen_complement_record,
    q51_task,
    q52_task,
    reference_regularity,
    regularity_task,
    scm_example_graph,
    sphere_task,
    subadditivity_task,
    whisker_task,
)
from edge_regularity.workbench import CheckStatus, SuiteConfig, Workbench, run_task

CONFIG = SuiteConfig()


def test_invariants_task_on_pentagon():
    record = invariants_task(family("C5"), "C5", CONFIG)
    report = record.invariants
    assert (report.alpha, report.omega, report.chi, report.nu) == (2, 2, 3, 2)
    assert (report.indmatch, report.regularity_over(2), report.cochord) == (1, 2, 2)
    assert report.cycle_matching_bound == 2
    assert record.status is CheckStatus.PASS
    assert record.values["cover"]["size"] == 2


def test_invariants_task_respects_requested_names():
    config = SuiteConfig(invariants=("alpha", "indmatch"))
    report = invariants_task(family("C5"), "C5", config).invariants
    assert report.alpha == 2 and report.indmatch == 1
    assert report.omega is None and report.cochord is None and not report.regularity


def test_capped_invariant_is_reported_not_raised():
    config = SuiteConfig(vertex_cap=4)
    record = invariants_task(family("C5"), "C5", config)
    assert record.invariants.regularity_over(2) is None
    assert "regularity_gf2" in record.invariants.errors
    assert record.status is CheckStatus.INCOMPLETE
    assert [c.name for c in record.checks if c.status is CheckStatus.INCOMPLETE] == [
        "regularity_gf2"
    ]


@pytest.mark.parametrize(
    "task,config,name",
    [
        (regularity_task, SuiteConfig(vertex_cap=4), "regularity_gf2"),
        (cochord_task, SuiteConfig(edge_cap=3), "cochord"),
        (bounds_task, SuiteConfig(vertex_cap=4), "regularity_gf2"),
    ],
    ids=["regularity", "cochord", "bounds"],
)
def test_capped_required_invariant_marks_record_incomplete(task, config, name):
    record = task(family("C5"), "C5", config)
    assert record.status is CheckStatus.INCOMPLETE
    capped = [c for c in record.checks if c.name == name]
    assert capped and capped[0].status is CheckStatus.INCOMPLETE
    assert "limited to" in capped[0].details


def test_reference_regularity_prefers_gf2():
    report = InvariantReport("x")
    assert reference_regularity(report) is None
    report.regularity.append(RegularityResult(FieldSpec(3), 3, 0b111111, 3))
    assert reference_regularity(report).field.p == 3
    report.regularity.append(RegularityResult(FieldSpec(2), 2, 0b11111, 2))
    assert reference_regularity(report).field.p == 2


@pytest.mark.parametrize("fields", [(2, 3), (3, 2)], ids=["gf2_first", "gf3_first"])
def test_bounds_task_field_order_does_not_matter(fields):
    record = bounds_task(family("C5"), "C5", SuiteConfig(fields=fields))
    assert record.status is CheckStatus.PASS, [c.to_dict() for c in record.checks]
    chain = next(c for c in record.checks if c.name == "indmatch<=reg<=cochord")
    assert chain.details.startswith("1 <= 2 <= 2")

def test_regularity_task_validates_witnesses():
    record = regularity_task(family("3K2"), "3K2", SuiteConfig(fields=(2, 3)))
    assert [r.value for r in record.invariants.regularity] == [3, 3]
    assert record.status is CheckStatus.PASS


def test_cochord_task():
    record = cochord_task(family("C7"), "C7", CONFIG)
    assert record.invariants.cochord == 3
    assert record.values["method"] == "exact"
    assert record.status is CheckStatus.PASS


@pytest.mark.parametrize(
    "method,name",
    [("split", "C5"), ("chain", "C4"), ("greedy", "petersen"), ("exact", "C6")],
    ids=["split", "chain", "greedy", "exact"],
)
def test_cover_task(method, name):
    record = cover_task(method, family(name), name, CONFIG)
    assert record.status is CheckStatus.PASS
    assert record.values["method"] == method


def test_cover_task_precondition_failure_becomes_record():
    record = run_task(partial(cover_task, "chain"), "C5", family("C5"), CONFIG)
    assert record.status is CheckStatus.FAIL
    assert "ArgumentError" in record.checks[0].details


@pytest.mark.parametrize(
    "name", ["P5", "C4", "C5", "claw", "K2,3"], ids=["path", "square", "pentagon", "claw", "k23"]
)
def test_bounds_task_passes(name):
    record = bounds_task(family(name), name, CONFIG)
    assert record.status is CheckStatus.PASS, [c.to_dict() for c in record.checks]


def test_bounds_task_runs_structural_checks():
    names = {c.name for c in bounds_task(family("C4"), "C4", CONFIG).checks}
    assert "chordal_equality" not in names
    assert {"weakly_chordal_equality", "chain_cover", "clique_deletion"} <= names
    names = {c.name for c in bounds_task(family("P5"), "P5", CONFIG).checks}
    assert "chordal_equality" in names


@pytest.mark.parametrize(
    "n,value",
    [(3, 1), (4, 1), (5, 2), (6, 2), (7, 3), (10, 4)],
    ids=["c3", "c4", "c5", "c6", "c7", "c10"],
)
def test_expected_cycle_cochord(n, value):
    assert expected_cycle_cochord(n) == value


def test_reproduce_paths_cycles():
    records = cmd_reproduce_paths_cycles(9, FieldSpec(2), Workbench())
    assert [r.values["n"] for r in records] == list(range(3, 10))
    assert all(r.status is CheckStatus.PASS for r in records)
    assert [r.values["reg_cycle"] for r in records] == [1, 1, 2, 2, 2, 3, 3]


def test_reproduce_gap_direct():
    assert gap_graph(1, 1).n == 12
    record = cmd_reproduce_gap(1, 1, FieldSpec(2), Workbench(), mode="direct")
    assert (record.values["reg"], record.values["indmatch"], record.values["cochord"]) == (4, 3, 5)
    assert record.status is CheckStatus.PASS


def test_reproduce_gap_additive():
    record = cmd_reproduce_gap(3, 2, FieldSpec(2), Workbench())
    assert record.values["mode"] == "additive"
    values = record.values
    assert (values["reg"], values["indmatch"], values["cochord"]) == (10, 7, 12)
    assert record.status is CheckStatus.PASS


def test_reproduce_scm_example():
    assert scm_example_graph().n == 10
    record = cmd_reproduce_scm_example(FieldSpec(2), Workbench())
    assert record.status is CheckStatus.PASS
    report = record.invariants
    assert (report.indmatch, report.regularity_over(2), report.cochord) == (2, 2, 3)


@pytest.mark.parametrize(
    "name", ["K3", "P3", "C5", "claw"], ids=["triangle", "path", "pentagon", "claw"]
)
def test_whisker_task(name):
    record = whisker_task(family(name), name, CONFIG)
    assert record.status is CheckStatus.PASS


def test_petersen_complement_record():
    assert petersen_complement_record().status is CheckStatus.PASS


@pytest.mark.parametrize(
    "task,name,details",
    [
        (q51_task, "C5", "cochord 2"),
        (q51_task, "C6", "skipped: induced 2K2"),
        (q52_task, "C5", "cover of size 1"),
        (q52_task, "claw", "skipped: induced claw"),
    ],
    ids=["q51_pentagon", "q51_hexagon", "q52_pentagon", "q52_claw"],
)
def test_open_question_tasks(task, name, details):
    record = task(family(name), name, CONFIG)
    assert record.status is CheckStatus.PASS
    assert record.checks[0].details == details


def test_search_q51_starts_with_petersen_complement():
    records = list(cmd_search_q51([("C5", family("C5"))], Workbench()))
    assert [r.graph_id for r in records] == ["petersen-complement", "C5"]


@pytest.mark.parametrize(
    "task,name",
    [
        (subadditivity_task, "C6"),
        (subadditivity_task, "petersen"),
        (kunneth_task, "C5"),
        (sphere_task, "3K2"),
        (fields_task, "C7"),
    ],
    ids=["subadditivity_hexagon", "subadditivity_petersen", "kunneth", "sphere", "fields"],
)
def test_property_tasks_pass(task, name):
    record = task(family(name), name, SuiteConfig(fields=(2, 3)))
    assert record.status is CheckStatus.PASS, [c.to_dict() for c in record.checks]


def test_tasks_are_reproducible():
    graphs = [(name, family(name)) for name in ("C5", "P4", "K2,3")]
    first = emit_report(cmd_invariants(graphs, Workbench()))
    second = emit_report(cmd_invariants(graphs, Workbench({"jobs": 2})))
    assert first == second
    a = subadditivity_task(family("petersen"), "p", CONFIG).values
    b = subadditivity_task(family("petersen"), "p", CONFIG).values
    assert a == b


@pytest.fixture(scope="module")
def atlas_values():
    """(graph_id, graph, indmatch, reg over GF(2), cochord result) for every graph with n <= 7."""
    values = []
    for graph_id, g in atlas_graphs(7):
        indmatch = induced_matching_number(g).value
        values.append((graph_id, g, indmatch, complex_regularity(g).value, cochord_exact(g)))
    return values


@pytest.mark.slow
def test_regularity_chain_over_atlas(atlas_values):
    assert len(atlas_values) == 1252
    for graph_id, _, indmatch, reg, cochord in atlas_values:
        assert cochord.exact, graph_id
        assert indmatch <= reg <= cochord.value, graph_id


@pytest.mark.slow
def test_weakly_chordal_graphs_attain_indmatch(atlas_values):
    checked = 0
    for graph_id, g, indmatch, reg, cochord in atlas_values:
        if is_weakly_chordal(g).verdict:
            checked += 1
            assert indmatch == reg == cochord.value, graph_id
    assert checked > 0


@pytest.mark.slow
def test_chordal_graphs_attain_split_cover(atlas_values):
    checked = 0
    for graph_id, g, indmatch, reg, _ in atlas_values:
        if is_chordal(g).verdict:
            checked += 1
            assert reg == indmatch == split_cover(g)[1].size, graph_id
    assert checked > 0


@pytest.mark.slow
def test_regularity_does_not_grow_on_induced_subgraphs():
    for graph_id, g in atlas_graphs(6):
        if g.n < 2:
            continue
        reg = complex_regularity(g).value
        for v in range(g.n):
            sub = induced_subgraph(g, g.full_mask & ~(1 << v))
            assert complex_regularity(sub).value <= reg, (graph_id, v)


@pytest.mark.slow
def test_whisker_lemma_over_atlas():
    for graph_id, g in atlas_graphs(5):
        record = whisker_task(g, graph_id, CONFIG)
        assert record.status is CheckStatus.PASS, [c.to_dict() for c in record.checks]
