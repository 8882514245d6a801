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
"""Command line surface."""
import logging
import sys
from functools import partial, wraps
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import click

from edge_regularity.constants import (
    EXIT_CHECK_FAILED,
    EXIT_INCOMPLETE,
    EXIT_OK,
    EXIT_USAGE,
    KUNNETH_SAMPLES,
    SPHERE_MMAX,
    SUBADDITIVITY_SAMPLES,
    WELL_COVERED_SAMPLES,
    WHISKER_NMAX,
)
from edge_regularity.core import CapacityError, Graph, WorkbenchError, family
from edge_regularity.corpus import (
    atlas_graphs,
    family_graphs,
    load_sources,
    random_graphs,
    read_graphs,
    well_covered_bipartite_instances,
)
from edge_regularity.formats import emit_graph6
from edge_regularity.homology import FieldSpec
from edge_regularity.report import emit_report
from edge_regularity.suites import (
    bounds_task,
    cmd_invariants,
    cmd_reproduce_gap,
    cmd_reproduce_paths_cycles,
    cmd_reproduce_scm_example,
    cmd_reproduce_whisker,
    cmd_search_q51,
    cmd_search_q52,
    cochord_task,
    cover_task,
    fields_task,
    kunneth_task,
    regularity_task,
    sphere_task,
    subadditivity_task,
)
from edge_regularity.workbench import CheckStatus, ReportRecord, Workbench, debug_from_env

logger = logging.getLogger(__name__)


def exit_code(records: Iterable[ReportRecord]) -> int:
    """1 if any check failed, else 3 if any check could not finish, else 0."""
    statuses = {record.status for record in records}
    if CheckStatus.FAIL in statuses:
        return EXIT_CHECK_FAILED
    if CheckStatus.INCOMPLETE in statuses:
        return EXIT_INCOMPLETE
    return EXIT_OK


def _parse_fields(value: Optional[str]) -> Optional[List[int]]:
    if value is None:
        return None
    try:
        return [int(p) for p in value.split(",") if p.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma separated primes, got {value!r}") from None


def common_options(func: Callable) -> Callable:
    """Flags shared by every graph-processing command."""
    options = [
        click.option("--input", "inputs", multiple=True, help="Input file, '-' for stdin."),
        click.option(
            "--format",
            "input_format",
            type=click.Choice(["graph6", "edges"]),
            default="graph6",
            show_default=True,
        ),
        click.option("--family", "families", multiple=True, help="Named graph such as C5 or 3K2."),
        click.option("--atlas", is_flag=True, help="Use every graph on at most --nmax vertices."),
        click.option("--fields", help="Comma separated primes, e.g. 2,3."),
        click.option("--nmax", type=int),
        click.option("--jobs", type=int),
        click.option("--timeout-ms", type=int),
        click.option("--vertex-cap", type=int),
        click.option("--face-cap", type=int),
        click.option("--edge-cap", type=int),
        click.option("--invariants", help="Comma separated invariant names."),
        click.option("--process-pool", is_flag=True, default=None),
        click.option("--record-timings", is_flag=True, default=None),
        click.option("--json", "output_format", flag_value="json"),
        click.option("--csv", "output_format", flag_value="csv"),
        click.option("--text", "output_format", flag_value="text"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_workbench(options: Dict[str, Any]) -> Workbench:
    invariants = options.get("invariants")
    config = {
        "nmax": options.get("nmax"),
        "fields": _parse_fields(options.get("fields")),
        "vertex_cap": options.get("vertex_cap"),
        "face_cap": options.get("face_cap"),
        "edge_cap": options.get("edge_cap"),
        "timeout_ms": options.get("timeout_ms"),
        "output_format": options.get("output_format"),
        "jobs": options.get("jobs"),
        "process_pool": options.get("process_pool"),
        "invariants": [i.strip() for i in invariants.split(",")] if invariants else None,
        "record_timings": options.get("record_timings"),
    }
    return Workbench(config)


def graph_stream(options: Dict[str, Any], bench: Workbench) -> Iterator[Tuple[str, Graph]]:
    """Named families first, then the atlas, then input files (stdin when nothing else is given)."""
    yield from family_graphs(options.get("families") or ())
    if options.get("atlas"):
        yield from atlas_graphs(min(bench.suite_config.nmax, 7))
    inputs = list(options.get("inputs") or ())
    if not inputs and not options.get("families") and not options.get("atlas"):
        inputs = ["-"]
    if inputs:
        stdin = sys.stdin.buffer.read() if "-" in inputs else None
        yield from read_graphs(load_sources(inputs, stdin), options.get("input_format", "graph6"))


def finish(records: Iterable[ReportRecord], bench: Workbench) -> None:
    """Write the report to stdout and exit with the status of its checks."""
    records = list(records)
    config = bench.suite_config
    click.echo(emit_report(records, config.output_format, config.record_timings), nl=False)
    sys.exit(exit_code(records))


def handle_errors(func: Callable) -> Callable:
    """Map workbench errors that escape a command onto exit codes."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CapacityError as exc:
            logger.error("%s", exc)
            sys.exit(EXIT_INCOMPLETE)
        except WorkbenchError as exc:
            logger.error("%s", exc)
            sys.exit(EXIT_USAGE)
        except OSError as exc:
            logger.error("%s", exc)
            sys.exit(EXIT_USAGE)

    return wrapper


@click.group()
@click.option("--debug", is_flag=True, help="Log at DEBUG level.")
def cli(debug: bool) -> None:
    """Exact invariants of edge ideals: induced matchings, regularity and co-chordal covers."""
    logging.basicConfig(
        level=logging.DEBUG if debug or debug_from_env() else logging.INFO,
        format="%(asctime)s [%(levelname)8s] %(name)s - %(message)s",
        stream=sys.stderr,
    )


@cli.command()
@common_options
@handle_errors
def invariants(**options: Any) -> None:
    """Every requested invariant plus the indmatch <= reg <= cochord chain."""
    bench = build_workbench(options)
    finish(cmd_invariants(graph_stream(options, bench), bench), bench)


@cli.command()
@common_options
@handle_errors
def regularity(**options: Any) -> None:
    """Regularity over each field, with validated witnesses."""
    bench = build_workbench(options)
    finish(bench.run(graph_stream(options, bench), regularity_task), bench)


@cli.command()
@common_options
@handle_errors
def cochord(**options: Any) -> None:
    """Exact co-chordal cover number, or a flagged upper bound on timeout."""
    bench = build_workbench(options)
    finish(bench.run(graph_stream(options, bench), cochord_task), bench)


@cli.command()
@click.option(
    "--method",
    type=click.Choice(["split", "chain", "greedy", "exact"]),
    default="exact",
    show_default=True,
)
@common_options
@handle_errors
def cover(method: str, **options: Any) -> None:
    """Build and validate one co-chordal cover per graph."""
    bench = build_workbench(options)
    finish(bench.run(graph_stream(options, bench), partial(cover_task, method)), bench)


@cli.group()
def verify() -> None:
    """Property suites."""


@verify.command()
@common_options
@handle_errors
def bounds(**options: Any) -> None:
    """Every bound and equality that applies to each graph."""
    bench = build_workbench(options)
    finish(bench.run(graph_stream(options, bench), bounds_task), bench)


@verify.command()
@click.option("--count", type=int, default=SUBADDITIVITY_SAMPLES, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@common_options
@handle_errors
def subadditivity(count: int, seed: int, **options: Any) -> None:
    """reg(G) <= reg(G1) + reg(G2) over random edge splits."""
    bench = build_workbench(options)
    graphs = random_graphs(count, bench.suite_config.nmax, seed)
    finish(bench.run(graphs, subadditivity_task), bench)


@verify.command()
@click.option("--count", type=int, default=KUNNETH_SAMPLES, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@common_options
@handle_errors
def kunneth(count: int, seed: int, **options: Any) -> None:
    """Additivity of regularity over disjoint unions of random pairs."""
    bench = build_workbench(options)
    graphs = random_graphs(count, min(bench.suite_config.nmax, 6), seed)
    finish(bench.run(graphs, kunneth_task), bench)


@verify.command()
@click.option("--mmax", type=int, default=SPHERE_MMAX, show_default=True)
@common_options
@handle_errors
def sphere(mmax: int, **options: Any) -> None:
    """Reduced homology of Ind(mK2) and reg(mK2) = m."""
    bench = build_workbench(options)
    graphs = ((f"{m}K2", family(f"{m}K2")) for m in range(1, mmax + 1))
    finish(bench.run(graphs, sphere_task), bench)


@verify.command()
@common_options
@handle_errors
def fields(**options: Any) -> None:
    """Regularity over several fields; disagreements are reported as notable."""
    bench = build_workbench(options)
    finish(bench.run(graph_stream(options, bench), fields_task), bench)


@verify.command(name="chain-covers")
@click.option("--count", type=int, default=WELL_COVERED_SAMPLES, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@common_options
@handle_errors
def chain_covers(count: int, seed: int, **options: Any) -> None:
    """Chain covers of generated well-covered bipartite graphs."""
    bench = build_workbench(options)
    graphs = well_covered_bipartite_instances(count, 14, seed)
    finish(bench.run(graphs, partial(cover_task, "chain")), bench)


@cli.group()
def reproduce() -> None:
    """Recompute published values and exit nonzero on any mismatch."""


@reproduce.command(name="paths-cycles")
@common_options
@handle_errors
def paths_cycles(**options: Any) -> None:
    bench = build_workbench(options)
    nmax = options.get("nmax") or 12
    f = bench.suite_config.field_specs[0]
    finish(cmd_reproduce_paths_cycles(nmax, f, bench), bench)


@reproduce.command()
@click.option("--r", "r", type=int, default=1, show_default=True, help="Copies of C5.")
@click.option("--s", "s", type=int, default=1, show_default=True, help="Copies of C7.")
@click.option(
    "--mode", type=click.Choice(["auto", "direct", "additive"]), default="auto", show_default=True
)
@common_options
@handle_errors
def gap(r: int, s: int, mode: str, **options: Any) -> None:
    bench = build_workbench(options)
    f = bench.suite_config.field_specs[0]
    finish([cmd_reproduce_gap(r, s, f, bench, mode)], bench)


@reproduce.command()
@common_options
@handle_errors
def whisker(**options: Any) -> None:
    """Whisker lemma on the given graphs, or on the atlas up to --nmax (default 5)."""
    if not options.get("inputs") and not options.get("families"):
        options["atlas"] = True
        options["nmax"] = options.get("nmax") or 5
    bench = build_workbench(options)
    if bench.suite_config.nmax > WHISKER_NMAX and options.get("atlas"):
        raise CapacityError(
            f"Whisker corpus is limited to n <= {WHISKER_NMAX}",
            limit=WHISKER_NMAX,
            reached=bench.suite_config.nmax,
        )
    finish(cmd_reproduce_whisker(graph_stream(options, bench), bench), bench)


@reproduce.command(name="scm-example")
@common_options
@handle_errors
def scm_example(**options: Any) -> None:
    bench = build_workbench(options)
    f = bench.suite_config.field_specs[0]
    finish([cmd_reproduce_scm_example(f, bench)], bench)


@cli.group()
def search() -> None:
    """Counterexample searches for open questions; findings are reported, never asserted."""


@search.command()
@common_options
@handle_errors
def q51(**options: Any) -> None:
    """(2K2, claw)-free graphs needing more than two co-chordal subgraphs."""
    bench = build_workbench(options)
    finish(cmd_search_q51(graph_stream(options, bench), bench), bench)


@search.command()
@common_options
@handle_errors
def q52(**options: Any) -> None:
    """Claw-free graphs not covered by indmatch (2K2, claw)-free subgraphs."""
    bench = build_workbench(options)
    finish(cmd_search_q52(graph_stream(options, bench), bench), bench)


@cli.command()
@click.option("--nmax", type=int, default=7, show_default=True)
def corpus(nmax: int) -> None:
    """Print every graph on at most nmax (<= 7) vertices as graph6."""
    for _, g in atlas_graphs(nmax):
        click.echo(emit_graph6(g).decode())


if __name__ == "__main__":
    cli()
