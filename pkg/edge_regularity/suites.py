# Copyright (c) 2023 Alex Butler
#
# Permission is hereby granted, free of charge, to any person obtaining a copy of this
# software and associated documentation files (the "Software"), to deal in the Software
# without restriction, including without limitation the rights to use, copy, modify, merge,
# publish, distribute, sublicense, and/or sell copies of the Software, and to permit persons
# to whom the Software is furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all copies or
# substantial portions of the Software.
"""Per-graph tasks, reproductions of the published values, and open-question searches.

Tasks are module level functions taking (graph, graph_id, config) so that the
worker pool can ship them to processes.
"""
import logging
import math
import time
import zlib
from functools import partial
from typing import Callable, Iterable, Iterator, List, Optional, Tuple, TypeVar

import numpy as np

from edge_regularity.constants import (
    GAP_AUTO_DIRECT_VERTICES,
    GAP_DIRECT_VERTICES,
    HOLE_SEARCH_CAP,
    PATHS_CYCLES_NMAX,
    SPLIT_COVER_CAP,
    WELL_COVERED_CAP,
)
from edge_regularity.core import (
    CapacityError,
    FamilyKind,
    Graph,
    GraphFamilySpec,
    InvariantViolation,
    ParameterError,
    complement,
    disjoint_union,
    family,
    make_family,
    pendant_attachment,
    whisker,
)
from edge_regularity.corpus import random_edge_bipartition, random_graph
from edge_regularity.covers import (
    CLAW,
    TWO_K2,
    CochordResult,
    chain_cover_wc_bipartite,
    clique_deletion_check,
    cochord_exact,
    cochord_greedy,
    free_cover,
    split_clique_pairs,
    split_cover,
)
from edge_regularity.formats import emit_graph6
from edge_regularity.homology import (
    FieldSpec,
    RegularityResult,
    complex_regularity,
    independence_complex,
    join_regularity_check,
    reduced_betti,
    regularity_multi_field,
)
from edge_regularity.invariants import (
    InvariantReport,
    chromatic_number,
    clique_cover,
    clique_number,
    cycle_matching_bound,
    independence_number,
    induced_matching_number,
    matching_number,
    min_maximal_matching,
)
from edge_regularity.recognition import (
    has_induced,
    is_bipartite,
    is_chordal,
    is_weakly_chordal,
    is_well_covered,
    maximal_cliques,
)
from edge_regularity.workbench import Check, CheckStatus, ReportRecord, SuiteConfig, Workbench

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _graph6(g: Graph) -> str:
    return emit_graph6(g).decode()


def _rng_for(graph_id: str) -> np.random.Generator:
    """A generator seeded by the record id, so pooled tasks stay reproducible."""
    return np.random.default_rng(zlib.crc32(graph_id.encode()))


def _measure(report: InvariantReport, name: str, compute: Callable[[], T]) -> Optional[T]:
    started = time.perf_counter()
    try:
        return compute()
    except CapacityError as exc:
        report.errors[name] = str(exc)
        return None
    finally:
        report.timings[name] = (time.perf_counter() - started) * 1000


def invariant_report(
    g: Graph, graph_id: str, config: SuiteConfig, names: Optional[Iterable[str]] = None
) -> Tuple[InvariantReport, Optional[CochordResult]]:
    """Compute the requested invariants; a capped invariant is left out and noted in errors."""
    wanted = set(config.invariants if names is None else names)
    report = InvariantReport(graph_id)
    solvers = {
        "alpha": lambda: independence_number(g).value,
        "omega": lambda: clique_number(g).value,
        "chi": lambda: chromatic_number(g).value,
        "nu": lambda: matching_number(g).value,
        "min_maximal_matching": lambda: min_maximal_matching(g).value,
        "indmatch": lambda: induced_matching_number(g).value,
        "cycle_matching_bound": lambda: cycle_matching_bound(g).value,
    }
    for name, solve in solvers.items():
        if name in wanted:
            setattr(report, name, _measure(report, name, solve))
    if "regularity" in wanted:
        for f in config.field_specs:
            result = _measure(
                report,
                f"regularity_gf{f.p}",
                lambda: complex_regularity(g, f, config.vertex_cap, config.face_cap),
            )
            if result is not None:
                report.regularity.append(result)
    cochord = None
    if "cochord" in wanted:
        cochord = _measure(
            report, "cochord", lambda: cochord_exact(g, config.timeout_ms, config.edge_cap)
        )
        if cochord is not None:
            report.cochord, report.cochord_method = cochord.value, cochord.method
    return report, cochord


def capacity_checks(report: InvariantReport) -> List[Check]:
    """An incomplete check for every requested invariant a cap kept out of the report."""
    return [
        Check(name, CheckStatus.INCOMPLETE, message)
        for name, message in sorted(report.errors.items())
    ]


def reference_regularity(report: InvariantReport) -> Optional[RegularityResult]:
    """GF(2) when it was computed, otherwise the first requested field."""
    for result in report.regularity:
        if result.field.p == 2:
            return result
    return report.regularity[0] if report.regularity else None


def chain_check(report: InvariantReport, cochord: Optional[CochordResult]) -> Optional[Check]:
    """indmatch <= reg <= cochord; a timed out cover decides only when reg is below its bound."""
    reference = reference_regularity(report)
    if report.indmatch is None or reference is None or cochord is None:
        return None
    reg = reference.value
    name = "indmatch<=reg<=cochord"
    details = f"{report.indmatch} <= {reg} <= {cochord.value} ({cochord.method})"
    if report.indmatch > reg:
        return Check(name, CheckStatus.FAIL, details)
    if cochord.exact or reg <= cochord.lower_bound:
        return Check.of(name, reg <= cochord.value, details)
    if reg > cochord.value:
        return Check(name, CheckStatus.FAIL, details)
    return Check(name, CheckStatus.INCOMPLETE, details)


def field_check(report: InvariantReport) -> Optional[Check]:
    if len(report.regularity) < 2:
        return None
    values = {r.field.p: r.value for r in report.regularity}
    details = ", ".join(f"GF({p})={v}" for p, v in values.items())
    if len(set(values.values())) == 1:
        return Check("field_independence", CheckStatus.PASS, details)
    return Check("field_independence", CheckStatus.NOTABLE, details)


def _guarded(name: str, run: Callable[[], Check]) -> Check:
    try:
        return run()
    except CapacityError as exc:
        return Check(name, CheckStatus.INCOMPLETE, str(exc))
    except InvariantViolation as exc:
        return Check(name, CheckStatus.FAIL, str(exc))


def invariants_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    report, cochord = invariant_report(g, graph_id, config)
    checks = capacity_checks(report)
    checks.extend(c for c in (chain_check(report, cochord), field_check(report)) if c is not None)
    values = {"cover": cochord.cover.to_dict()} if cochord is not None else {}
    return ReportRecord(graph_id, _graph6(g), report, checks, values)


def regularity_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    report, _ = invariant_report(g, graph_id, config, ["regularity"])
    checks = capacity_checks(report)
    checks.extend(
        Check.of(f"witness_gf{r.field.p}", r.validate(g, config.face_cap))
        for r in report.regularity
    )
    consistency = field_check(report)
    if consistency is not None:
        checks.append(consistency)
    return ReportRecord(graph_id, _graph6(g), report, checks)


def cochord_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    report, cochord = invariant_report(g, graph_id, config, ["indmatch", "cochord"])
    checks = capacity_checks(report)
    values = {}
    if cochord is not None:
        values = cochord.to_dict()
        checks.append(Check.of("cover_valid", cochord.cover.validate(g)))
        if not cochord.exact:
            checks.append(
                Check(
                    "cochord_exact",
                    CheckStatus.INCOMPLETE,
                    f"between {cochord.lower_bound} and {cochord.value}",
                )
            )
    return ReportRecord(graph_id, _graph6(g), report, checks, values)


def cover_task(method: str, g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    """One cover by the named construction, validated independently."""
    report = InvariantReport(graph_id)
    values = {"method": method}
    if method == "split":
        partition, cover = split_cover(g)
        values["partition"] = {"j0": partition.j0, "cliques": list(partition.cliques)}
    elif method == "chain":
        cover = chain_cover_wc_bipartite(g)
    elif method == "greedy":
        cover = cochord_greedy(g)
    elif method == "exact":
        result = cochord_exact(g, config.timeout_ms, config.edge_cap)
        report.cochord, report.cochord_method = result.value, result.method
        cover = result.cover
    else:
        raise ParameterError(f"Unknown cover method: {method}")
    values["cover"] = cover.to_dict()
    check = Check.of("cover_valid", cover.validate(g))
    return ReportRecord(graph_id, _graph6(g), report, [check], values)


def _reg_check(name: str, reg: Optional[int], bound: Optional[int]) -> Check:
    if reg is None or bound is None:
        return Check(name, CheckStatus.INCOMPLETE, "not computed")
    return Check.of(name, reg <= bound, f"{reg} <= {bound}")


def bounds_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    """Every inequality and equality that applies to g."""
    report, cochord = invariant_report(g, graph_id, config)
    reference = reference_regularity(report)
    reg = reference.value if reference is not None else None
    f = reference.field if reference is not None else FieldSpec()
    checks = capacity_checks(report)
    chain = chain_check(report, cochord)
    if chain is not None:
        checks.append(chain)
    checks.append(_reg_check("reg<=nu", reg, report.nu))
    checks.append(_reg_check("reg<=min_maximal_matching", reg, report.min_maximal_matching))
    checks.append(_reg_check("reg<=alpha", reg, report.alpha))
    checks.append(_reg_check("cycle_matching_bound<=reg", report.cycle_matching_bound, reg))

    def chordal_equality() -> Check:
        size = split_cover(g)[1].size
        details = f"reg={reg} indmatch={report.indmatch} split_cover={size}"
        return Check.of("chordal_equality", reg == report.indmatch == size, details)

    def weakly_chordal_equality() -> Check:
        if cochord is None or not cochord.exact:
            return Check("weakly_chordal_equality", CheckStatus.INCOMPLETE, "cochord not exact")
        details = f"indmatch={report.indmatch} cochord={cochord.value}"
        return Check.of("weakly_chordal_equality", report.indmatch == cochord.value, details)

    def chain_cover() -> Check:
        size = chain_cover_wc_bipartite(g).size
        details = f"parts={size} indmatch={report.indmatch}"
        return Check.of("chain_cover", size == report.indmatch, details)

    def clique_deletion() -> Check:
        failures = [
            clique
            for clique in maximal_cliques(g)
            if not clique_deletion_check(g, clique, f, config.vertex_cap, config.face_cap, reg)
        ]
        return Check.of("clique_deletion", not failures, f"failing cliques: {failures}")

    if g.n <= SPLIT_COVER_CAP and is_chordal(g).verdict:
        checks.append(_guarded("chordal_equality", chordal_equality))
    if g.n <= HOLE_SEARCH_CAP and is_weakly_chordal(g).verdict:
        checks.append(_guarded("weakly_chordal_equality", weakly_chordal_equality))
    if (
        g.n <= WELL_COVERED_CAP
        and g.edge_count
        and not g.isolated_mask()
        and is_bipartite(g) is not None
        and is_well_covered(g).verdict
    ):
        checks.append(_guarded("chain_cover", chain_cover))
    if reg is not None:
        checks.append(_guarded("clique_deletion", clique_deletion))
    consistency = field_check(report)
    if consistency is not None:
        checks.append(consistency)
    return ReportRecord(graph_id, _graph6(g), report, checks)


def cmd_invariants(graphs: Iterable[Tuple[str, Graph]], bench: Workbench) -> Iterator[ReportRecord]:
    return bench.run(graphs, invariants_task)


def cmd_verify_bounds(
    graphs: Iterable[Tuple[str, Graph]], bench: Workbench
) -> Iterator[ReportRecord]:
    return bench.run(graphs, bounds_task)


def expected_cycle_cochord(n: int) -> int:
    """C4 is itself co-chordal; otherwise paths of at most three edges are optimal."""
    return 1 if n == 4 else math.ceil(n / 3)


def paths_cycles_row_task(
    f: FieldSpec, g: Graph, graph_id: str, config: SuiteConfig
) -> ReportRecord:
    """g is C_n; the row also covers P_n."""
    n = g.n
    path = make_family(GraphFamilySpec(FamilyKind.PATH, (n,)))
    formula = (n + 1) // 3
    reg_path = complex_regularity(path, f, config.vertex_cap, config.face_cap).value
    reg_cycle = complex_regularity(g, f, config.vertex_cap, config.face_cap)
    indmatch_cycle = induced_matching_number(g).value
    cochord_path = cochord_exact(path, config.timeout_ms, config.edge_cap)
    cochord_cycle = cochord_exact(g, config.timeout_ms, config.edge_cap)
    report = InvariantReport(
        graph_id,
        indmatch=indmatch_cycle,
        cochord=cochord_cycle.value,
        cochord_method=cochord_cycle.method,
        regularity=[reg_cycle],
    )
    values = {
        "n": n,
        "reg_path": reg_path,
        "reg_cycle": reg_cycle.value,
        "formula": formula,
        "match": reg_path == formula == reg_cycle.value,
        "indmatch_cycle": indmatch_cycle,
        "cochord_path": cochord_path.value,
        "cochord_cycle": cochord_cycle.value,
    }

    def cover_check(name: str, result: CochordResult, expected: int) -> Check:
        details = f"{result.value} ({result.method}), expected {expected}"
        if not result.exact:
            return Check(name, CheckStatus.INCOMPLETE, details)
        return Check.of(name, result.value == expected, details)

    checks = [
        Check.of("reg_path_formula", reg_path == formula, f"{reg_path} vs {formula}"),
        Check.of(
            "reg_cycle_formula", reg_cycle.value == formula, f"{reg_cycle.value} vs {formula}"
        ),
        Check.of("indmatch_cycle", indmatch_cycle == n // 3, f"{indmatch_cycle} vs {n // 3}"),
        cover_check("cochord_path_equals_reg", cochord_path, reg_path),
        cover_check("cochord_cycle_casework", cochord_cycle, expected_cycle_cochord(n)),
    ]
    return ReportRecord(graph_id, _graph6(g), report, checks, values)


def cmd_reproduce_paths_cycles(nmax: int, f: FieldSpec, bench: Workbench) -> List[ReportRecord]:
    if nmax > PATHS_CYCLES_NMAX:
        raise CapacityError(
            f"paths-cycles is limited to n <= {PATHS_CYCLES_NMAX}, got {nmax}",
            limit=PATHS_CYCLES_NMAX,
            reached=nmax,
        )
    cycles = ((f"n={n}", family(f"C{n}")) for n in range(3, nmax + 1))
    return list(bench.run(cycles, partial(paths_cycles_row_task, f)))


def gap_graph(r: int, s: int) -> Graph:
    """r copies of C5 followed by s copies of C7."""
    g = Graph.edgeless(0)
    for _ in range(r):
        g = disjoint_union(g, family("C5"))
    for _ in range(s):
        g = disjoint_union(g, family("C7"))
    return g


def cmd_reproduce_gap(
    r: int, s: int, f: FieldSpec, bench: Workbench, mode: str = "auto"
) -> ReportRecord:
    """rC5 + sC7 has indmatch = reg - r and cochord = reg + s."""
    if r < 0 or s < 0:
        raise ParameterError(f"Gap construction needs r, s >= 0, got ({r}, {s})")
    config = bench.suite_config
    g = gap_graph(r, s)
    if mode == "auto":
        mode = "direct" if g.n <= GAP_AUTO_DIRECT_VERTICES else "additive"
    if mode == "direct":
        if g.n > GAP_DIRECT_VERTICES:
            raise CapacityError(
                f"Direct gap computation is limited to {GAP_DIRECT_VERTICES} vertices, got {g.n}",
                limit=GAP_DIRECT_VERTICES,
                reached=g.n,
            )
        reg_result = complex_regularity(g, f, max(config.vertex_cap, g.n), config.face_cap)
        reg = reg_result.value
        indmatch = induced_matching_number(g).value
        cochord = cochord_exact(g, config.timeout_ms, config.edge_cap)
        cochord_value, exact = cochord.value, cochord.exact
    elif mode == "additive":
        parts = {}
        for name, count in (("C5", r), ("C7", s)):
            if count:
                piece = family(name)
                cover = cochord_exact(piece, config.timeout_ms, config.edge_cap)
                parts[name] = (
                    count,
                    complex_regularity(piece, f).value,
                    induced_matching_number(piece).value,
                    cover.value,
                    cover.exact,
                )
        reg = sum(c * v for c, v, _, _, _ in parts.values())
        indmatch = sum(c * v for c, _, v, _, _ in parts.values())
        cochord_value = sum(c * v for c, _, _, v, _ in parts.values())
        exact = all(e for _, _, _, _, e in parts.values())
        reg_result = None
    else:
        raise ParameterError(f"Unknown gap mode: {mode}")

    report = InvariantReport(
        f"gap-{r}-{s}",
        indmatch=indmatch,
        cochord=cochord_value,
        cochord_method="exact" if exact else "upper_bound",
        regularity=[reg_result] if reg_result is not None else [],
    )
    cochord_status = None if exact else CheckStatus.INCOMPLETE
    checks = [
        Check.of("reg=2r+2s", reg == 2 * r + 2 * s, f"{reg}"),
        Check.of("indmatch=reg-r", indmatch == reg - r, f"{indmatch} vs {reg - r}"),
        Check(
            "cochord=reg+s",
            cochord_status
            or (CheckStatus.PASS if cochord_value == reg + s else CheckStatus.FAIL),
            f"{cochord_value} vs {reg + s}",
        ),
    ]
    values = {
        "r": r,
        "s": s,
        "mode": mode,
        "reg": reg,
        "indmatch": indmatch,
        "cochord": cochord_value,
    }
    return ReportRecord(report.graph_id, _graph6(g), report, checks, values)


def whisker_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    """indmatch W(G) = alpha(G), cochord W(G) = chi(complement of G), and W(G) is well-covered."""
    w = whisker(g)
    alpha = independence_number(g).value
    cliques = clique_cover(g).value
    indmatch = induced_matching_number(w).value
    cochord = cochord_exact(w, config.timeout_ms, config.edge_cap)
    report = InvariantReport(
        graph_id,
        alpha=alpha,
        indmatch=indmatch,
        cochord=cochord.value,
        cochord_method=cochord.method,
    )
    cochord_details = f"{cochord.value} ({cochord.method}) vs {cliques}"
    checks = [
        Check.of("indmatch_whisker=alpha", indmatch == alpha, f"{indmatch} vs {alpha}"),
        Check("cochord_whisker=clique_cover", CheckStatus.INCOMPLETE, cochord_details)
        if not cochord.exact
        else Check.of("cochord_whisker=clique_cover", cochord.value == cliques, cochord_details),
        Check.of("whisker_well_covered", is_well_covered(w).verdict),
    ]
    values = {"whisker_graph6": _graph6(w), "clique_cover": cliques}
    return ReportRecord(graph_id, _graph6(g), report, checks, values)


def cmd_reproduce_whisker(
    graphs: Iterable[Tuple[str, Graph]], bench: Workbench
) -> Iterator[ReportRecord]:
    return bench.run(graphs, whisker_task)


def scm_example_graph() -> Graph:
    """C6 with a pendant at each of four consecutive cycle vertices."""
    return pendant_attachment(family("C6"), range(4))


def cmd_reproduce_scm_example(f: FieldSpec, bench: Workbench) -> ReportRecord:
    config = bench.suite_config
    g = scm_example_graph()
    reg = complex_regularity(g, f, config.vertex_cap, config.face_cap)
    indmatch = induced_matching_number(g).value
    cochord = cochord_exact(g, config.timeout_ms, config.edge_cap)
    report = InvariantReport(
        "scm-example",
        indmatch=indmatch,
        cochord=cochord.value,
        cochord_method=cochord.method,
        regularity=[reg],
    )
    checks = [
        Check.of("indmatch=2", indmatch == 2, str(indmatch)),
        Check.of("cochord=3", cochord.exact and cochord.value == 3, str(cochord.value)),
        Check.of("reg=2", reg.value == 2, str(reg.value)),
    ]
    values = {"cover": cochord.cover.to_dict()}
    return ReportRecord(report.graph_id, _graph6(g), report, checks, values)


def petersen_complement_record() -> ReportRecord:
    """The complement of the Petersen graph is (2K2, claw)-free, yet no two cliques split it."""
    g = complement(family("petersen"))
    free = has_induced(g, TWO_K2) is None and has_induced(g, CLAW) is None
    pairs = split_clique_pairs(g)
    checks = [
        Check.of("2k2_claw_free", free),
        Check.of("no_split_clique_pair", not pairs, f"{len(pairs)} pairs"),
    ]
    graph_id = "petersen-complement"
    return ReportRecord(graph_id, _graph6(g), InvariantReport(graph_id), checks)


def q51_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    """Look for a (2K2, claw)-free graph that needs three co-chordal subgraphs."""
    report = InvariantReport(graph_id)
    for name, pattern in (("2K2", TWO_K2), ("claw", CLAW)):
        if has_induced(g, pattern) is not None:
            skipped = Check("q51", CheckStatus.PASS, f"skipped: induced {name}")
            return ReportRecord(graph_id, _graph6(g), report, [skipped])
    cochord = cochord_exact(g, config.timeout_ms, config.edge_cap)
    report.cochord, report.cochord_method = cochord.value, cochord.method
    values = cochord.to_dict()
    if cochord.lower_bound >= 3:
        check = Check(
            "q51", CheckStatus.NOTABLE, f"counterexample candidate: cochord {cochord.value}"
        )
    elif cochord.value <= 2:
        check = Check("q51", CheckStatus.PASS, f"cochord {cochord.value}")
    else:
        check = Check(
            "q51",
            CheckStatus.INCOMPLETE,
            f"cochord between {cochord.lower_bound} and {cochord.value}",
        )
    return ReportRecord(graph_id, _graph6(g), report, [check], values)


def cmd_search_q51(
    graphs: Iterable[Tuple[str, Graph]], bench: Workbench
) -> Iterator[ReportRecord]:
    yield petersen_complement_record()
    yield from bench.run(graphs, q51_task)


def q52_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    """Look for a claw-free graph not covered by indmatch (2K2, claw)-free subgraphs."""
    report = InvariantReport(graph_id)
    if has_induced(g, CLAW) is not None:
        return ReportRecord(
            graph_id, _graph6(g), report, [Check("q52", CheckStatus.PASS, "skipped: induced claw")]
        )
    report.indmatch = induced_matching_number(g).value
    found = free_cover(g, report.indmatch, config.timeout_ms)
    values = {"limit": found.limit}
    if found.parts is not None:
        values["parts"] = [[list(e) for e in part] for part in found.parts]
        check = Check("q52", CheckStatus.PASS, f"cover of size {len(found.parts)}")
    elif found.complete:
        check = Check("q52", CheckStatus.NOTABLE, "counterexample candidate: no cover found")
    else:
        check = Check("q52", CheckStatus.INCOMPLETE, "search timed out")
    return ReportRecord(graph_id, _graph6(g), report, [check], values)


def cmd_search_q52(
    graphs: Iterable[Tuple[str, Graph]], bench: Workbench
) -> Iterator[ReportRecord]:
    return bench.run(graphs, q52_task)


def subadditivity_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    """reg(G) <= reg(G1) + reg(G2) for a random split of E(G) over the same vertices."""
    first, second = random_edge_bipartition(_rng_for(graph_id), g)
    f = config.field_specs[0]
    whole = complex_regularity(g, f, config.vertex_cap, config.face_cap)
    parts = [
        complex_regularity(h, f, config.vertex_cap, config.face_cap).value
        for h in (first, second)
    ]
    report = InvariantReport(graph_id, regularity=[whole])
    values = {"first": _graph6(first), "second": _graph6(second), "reg_parts": parts}
    check = Check.of("subadditivity", whole.value <= sum(parts), f"{whole.value} <= {parts}")
    return ReportRecord(graph_id, _graph6(g), report, [check], values)


def kunneth_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    """reg(G + H) = reg(G) + reg(H) for a second random graph H drawn from the record id."""
    rng = _rng_for(graph_id)
    other = random_graph(rng, int(rng.integers(1, 7)), float(rng.uniform(0.2, 0.8)))
    f = config.field_specs[0]
    ok = join_regularity_check(g, other, f, config.vertex_cap, config.face_cap)
    union = disjoint_union(g, other)
    values = {"first": _graph6(g), "second": _graph6(other)}
    return ReportRecord(
        graph_id, _graph6(union), InvariantReport(graph_id), [Check.of("kunneth", ok)], values
    )


def sphere_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    """Ind(mK2) is the boundary of the m-dimensional cross-polytope."""
    m = g.edge_count
    report = InvariantReport(graph_id)
    checks = []
    for f in config.field_specs:
        betti = reduced_betti(independence_complex(g, config.face_cap), f).betti
        expected = tuple(1 if i == m else 0 for i in range(len(betti)))
        checks.append(Check.of(f"sphere_gf{f.p}", betti == expected, str(list(betti))))
        result = complex_regularity(g, f, config.vertex_cap, config.face_cap)
        report.regularity.append(result)
        checks.append(Check.of(f"reg=m_gf{f.p}", result.value == m, f"{result.value} vs {m}"))
    return ReportRecord(graph_id, _graph6(g), report, checks)


def fields_task(g: Graph, graph_id: str, config: SuiteConfig) -> ReportRecord:
    """Regularity over every configured field; disagreement is notable, never a failure."""
    comparison = regularity_multi_field(g, config.field_specs, config.vertex_cap, config.face_cap)
    report = InvariantReport(graph_id, regularity=comparison.results)
    checks = [field_check(report) or Check("field_independence", CheckStatus.PASS, "one field")]
    return ReportRecord(graph_id, _graph6(g), report, checks)
