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
"""Workbench configuration, report records and the per-graph worker pool."""
import logging
import os
import time
import traceback
import uuid
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from queue import Empty
from typing import (
    TYPE_CHECKING,
    Any,
    Callable,
    Dict,
    Iterable,
    Iterator,
    List,
    Optional,
    Tuple,
    Type,
)

import jsonschema
from singer_sdk import typing as th

from edge_regularity.constants import (
    DEFAULT_EDGE_CAP,
    DEFAULT_FACE_CAP,
    DEFAULT_FIELDS,
    DEFAULT_TIMEOUT_MS,
    DEFAULT_VERTEX_CAP,
    INVARIANT_NAMES,
    MAX_VERTICES,
)
from edge_regularity.core import CapacityError, Graph, ParameterError, WorkbenchError
from edge_regularity.formats import emit_graph6
from edge_regularity.homology import FieldSpec
from edge_regularity.invariants import InvariantReport

if TYPE_CHECKING:
    from multiprocessing import Process, Queue
    from multiprocessing.connection import Connection

logger = logging.getLogger(__name__)

MAX_JOBS_QUEUED = 4
"""Jobs assigned to one worker before the coordinator waits for records."""
RESULT_POLL_INTERVAL = 1.0
"""Seconds between worker liveness checks while waiting for a record."""


class PoolKind(str, Enum):
    THREAD = "thread"
    PROCESS = "process"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCOMPLETE = "incomplete"
    """A cap or deadline stopped the check from deciding."""
    NOTABLE = "notable"
    """Worth reporting, never a failure: field dependence, open-question findings."""


@dataclass
class Check:
    name: str
    status: CheckStatus
    details: str = ""

    @classmethod
    def of(cls, name: str, ok: bool, details: str = "") -> "Check":
        return cls(name, CheckStatus.PASS if ok else CheckStatus.FAIL, details)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "status": self.status.value, "details": self.details}


@dataclass
class ReportRecord:
    """One graph's outcome: invariants, checks and optional suite values."""

    graph_id: str
    graph6: str
    invariants: InvariantReport
    checks: List[Check] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)
    """Suite specific columns, such as a reproduction table row."""
    runtime_ms: int = 0

    @property
    def status(self) -> CheckStatus:
        statuses = {check.status for check in self.checks}
        for status in (CheckStatus.FAIL, CheckStatus.INCOMPLETE, CheckStatus.NOTABLE):
            if status in statuses:
                return status
        return CheckStatus.PASS

    def to_dict(self, record_timings: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "graph_id": self.graph_id,
            "graph6": self.graph6,
            "invariants": self.invariants.to_dict(record_timings),
            "checks": [check.to_dict() for check in self.checks],
        }
        if self.values:
            data["values"] = self.values
        data["runtime_ms"] = self.runtime_ms if record_timings else 0
        return data


@dataclass(frozen=True)
class SuiteConfig:
    """Typed view of a validated workbench config."""

    nmax: int = 7
    fields: Tuple[int, ...] = tuple(DEFAULT_FIELDS)
    vertex_cap: int = DEFAULT_VERTEX_CAP
    face_cap: int = DEFAULT_FACE_CAP
    edge_cap: int = DEFAULT_EDGE_CAP
    timeout_ms: int = DEFAULT_TIMEOUT_MS
    output_format: str = "json"
    jobs: int = 1
    process_pool: bool = False
    invariants: Tuple[str, ...] = tuple(INVARIANT_NAMES)
    record_timings: bool = False

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "SuiteConfig":
        return cls(
            nmax=config["nmax"],
            fields=tuple(config["fields"]),
            vertex_cap=config["vertex_cap"],
            face_cap=config["face_cap"],
            edge_cap=config["edge_cap"],
            timeout_ms=config["timeout_ms"],
            output_format=config["output_format"],
            jobs=config["jobs"],
            process_pool=config["process_pool"],
            invariants=tuple(config["invariants"]),
            record_timings=config["record_timings"],
        )

    @property
    def field_specs(self) -> List[FieldSpec]:
        return [FieldSpec(p) for p in self.fields]


@dataclass
class Job:
    index: int
    graph_id: str
    graph: Graph
    task: Callable[[Graph, str, SuiteConfig], ReportRecord]
    """Module-level callable (or a partial of one) so process pools can pickle it."""


def bounded_integer(minimum: int, maximum: Optional[int] = None) -> th.CustomType:
    schema: Dict[str, Any] = {"type": "integer", "minimum": minimum}
    if maximum is not None:
        schema["maximum"] = maximum
    return th.CustomType(schema)


def run_task(
    task: Callable[[Graph, str, SuiteConfig], ReportRecord],
    graph_id: str,
    g: Graph,
    config: SuiteConfig,
) -> ReportRecord:
    """Run one per-graph task; failures become error records instead of stopping the stream."""
    started = time.perf_counter()
    try:
        record = task(g, graph_id, config)
    except CapacityError as exc:
        record = error_record(g, graph_id, CheckStatus.INCOMPLETE, exc)
    except Exception as exc:
        logger.debug("Task failed on %s", graph_id, exc_info=True)
        record = error_record(g, graph_id, CheckStatus.FAIL, exc)
    if config.record_timings:
        record.runtime_ms = int((time.perf_counter() - started) * 1000)
    return record


def error_record(g: Graph, graph_id: str, status: CheckStatus, exc: Exception) -> ReportRecord:
    report = InvariantReport(graph_id, errors={"task": f"{type(exc).__name__}: {exc}"})
    return ReportRecord(
        graph_id,
        emit_graph6(g).decode(),
        report,
        [Check("error", status, f"{type(exc).__name__}: {exc}")],
    )


class BaseWorker(ABC):
    """A pool member with a private inbox; records go to the results queue shared by the pool."""

    def __init__(
        self,
        worker_id: str,
        inbox: "Queue",
        results: "Queue",
        config: SuiteConfig,
        error_notifier: "Connection",
        log_notifier: "Connection",
    ):
        super().__init__()
        self.worker_id: str = worker_id
        self.inbox: "Queue" = inbox
        self.results: "Queue" = results
        self.config: SuiteConfig = config
        self.error_notifier: "Connection" = error_notifier
        self.log_notifier: "Connection" = log_notifier

    @abstractmethod
    def run(self) -> None:
        raise NotImplementedError

    def describe_failure(self, exc: Exception, job: Job) -> str:
        """Traceback of a job that produced no record, with its graph and worker."""
        lines = traceback.format_exception(type(exc), exc, exc.__traceback__, chain=False)
        return "".join(lines) + f"\nGraph: {job.graph_id}\nWorker: {self.worker_id}\n"


class GraphWorker(BaseWorker):
    """Runs the jobs in its inbox in order until it receives the poison pill."""

    def run(self) -> None:
        while True:
            job: Optional[Job] = self.inbox.get()
            if job is None:
                break
            try:
                record = run_task(job.task, job.graph_id, job.graph, self.config)
                self.results.put((job.index, record))
            except Exception as exc:
                self.error_notifier.send((exc, self.describe_failure(exc, job)))
                raise
            self.log_notifier.send(f"[{self.worker_id}] finished {job.graph_id}")


def _discard(queue: "Queue") -> None:
    while True:
        try:
            queue.get_nowait()
        except Empty:
            return


class Workbench:
    """Validated configuration plus a pool that maps a task over a graph stream in order."""

    name = "edge-regularity"
    config_jsonschema = th.PropertiesList(
        th.Property(
            "nmax",
            bounded_integer(0, MAX_VERTICES),
            description="Largest vertex count for generated corpora and reproduction tables.",
            default=7,
        ),
        th.Property(
            "fields",
            th.ArrayType(th.IntegerType),
            description="Prime moduli of the coefficient fields used for homology.",
            default=list(DEFAULT_FIELDS),
        ),
        th.Property(
            "vertex_cap",
            bounded_integer(0, MAX_VERTICES),
            description="Largest graph accepted by the regularity subset scan.",
            default=DEFAULT_VERTEX_CAP,
        ),
        th.Property(
            "face_cap",
            bounded_integer(1),
            description="Largest independence complex, in faces, that may be built.",
            default=DEFAULT_FACE_CAP,
        ),
        th.Property(
            "edge_cap",
            bounded_integer(0, MAX_VERTICES),
            description="Largest edge count accepted by the exact cover search.",
            default=DEFAULT_EDGE_CAP,
        ),
        th.Property(
            "timeout_ms",
            bounded_integer(0),
            description=(
                "Time budget per exact cover search. When it runs out the best cover found is"
                " reported as an upper bound."
            ),
            default=DEFAULT_TIMEOUT_MS,
        ),
        th.Property(
            "output_format",
            th.StringType,
            description="Report format.",
            default="json",
            allowed_values=["json", "csv", "text"],
        ),
        th.Property(
            "jobs",
            bounded_integer(1),
            description="Number of workers. A value of 1 runs every graph inline.",
            default=1,
        ),
        th.Property(
            "process_pool",
            th.BooleanType,
            description=(
                "By default workers are threads. If set to true, a process pool is used, which"
                " sidesteps the GIL at the cost of pickling every job and record."
            ),
            default=False,
        ),
        th.Property(
            "invariants",
            th.ArrayType(th.StringType),
            description=f"Invariants to compute, any of: {', '.join(INVARIANT_NAMES)}.",
            default=list(INVARIANT_NAMES),
        ),
        th.Property(
            "record_timings",
            th.BooleanType,
            description=(
                "Include wall times in reports. Off by default so that identical input gives"
                " identical output."
            ),
            default=False,
        ),
    ).to_dict()

    def __init__(self, config: Optional[Dict[str, Any]] = None) -> None:
        self.config = self.validate_config(config or {})
        self.suite_config = SuiteConfig.from_config(self.config)
        (
            self.worker_base,
            self.pipe_factory,
            self.queue_factory,
            self.pool_kind,
        ) = self.pool_components()

    @classmethod
    def validate_config(cls, config: Dict[str, Any]) -> Dict[str, Any]:
        """Fill schema defaults, then validate; unknown invariant names or non-primes raise."""
        merged = {k: v for k, v in config.items() if v is not None}
        for key, prop in cls.config_jsonschema["properties"].items():
            if key not in merged and "default" in prop:
                merged[key] = prop["default"]
        try:
            jsonschema.validate(merged, cls.config_jsonschema)
        except jsonschema.ValidationError as exc:
            raise ParameterError(f"Invalid config at {list(exc.path)}: {exc.message}") from None
        unknown = sorted(set(merged["invariants"]) - set(INVARIANT_NAMES))
        if unknown:
            raise ParameterError(f"Unknown invariants: {', '.join(unknown)}")
        for p in merged["fields"]:
            FieldSpec(p)
        return merged

    def pool_components(
        self,
    ) -> Tuple[
        Type["Process"],
        Callable[[bool], Tuple["Connection", "Connection"]],
        Callable[[], "Queue"],
        PoolKind,
    ]:
        """Process, Pipe and Queue for the worker pool: threads unless process_pool is set."""
        if self.config.get("process_pool"):
            from multiprocessing import Pipe, Process, Queue

            logger.debug("Graph jobs run in worker processes")
            return Process, Pipe, Queue, PoolKind.PROCESS

        from multiprocessing.dummy import Pipe, Process, Queue

        logger.debug("Graph jobs run in worker threads")
        return Process, Pipe, Queue, PoolKind.THREAD

    def worker_class(self) -> Type[GraphWorker]:
        return type("Worker", (GraphWorker, self.worker_base), {})

    def run(
        self,
        graphs: Iterable[Tuple[str, Graph]],
        task: Callable[[Graph, str, SuiteConfig], ReportRecord],
    ) -> Iterator[ReportRecord]:
        """Yield one record per graph, in input order.

        Each worker runs its own inbox in order, so when a worker dies the oldest job it
        held is the one that killed it. That job becomes an error record and the rest of
        its inbox moves to a replacement worker.
        """
        config = self.suite_config
        if config.jobs <= 1:
            for graph_id, g in graphs:
                yield run_task(task, graph_id, g, config)
            return

        results = self.queue_factory()
        error_notification, error_notifier = self.pipe_factory(False)
        log_notification, log_notifier = self.pipe_factory(False)
        worker_cls = self.worker_class()
        workers: List[GraphWorker] = []
        assigned: Dict[str, Dict[int, Job]] = {}
        owner: Dict[int, str] = {}
        pending: Dict[int, ReportRecord] = {}
        submitted, emitted = 0, 0

        def spawn() -> GraphWorker:
            worker = worker_cls(
                worker_id=uuid.uuid4().hex,
                inbox=self.queue_factory(),
                results=results,
                config=config,
                error_notifier=error_notifier,
                log_notifier=log_notifier,
            )
            worker.start()
            assigned[worker.worker_id] = {}
            return worker

        def dispatch(job: Job) -> None:
            worker = min(workers, key=lambda w: len(assigned[w.worker_id]))
            assigned[worker.worker_id][job.index] = job
            owner[job.index] = worker.worker_id
            worker.inbox.put(job)

        def receive(index: int, record: ReportRecord) -> None:
            worker_id = owner.pop(index, None)
            if worker_id is not None:
                assigned.get(worker_id, {}).pop(index, None)
            # a record for an already settled job arrives late from a dead worker
            if index >= emitted and index not in pending:
                pending[index] = record

        def drain_results() -> None:
            while True:
                try:
                    index, record = results.get_nowait()
                except Empty:
                    return
                receive(index, record)

        def replace_dead_workers() -> None:
            for slot, worker in enumerate(workers):
                if worker.is_alive():
                    continue
                drain_results()
                worker.join()
                held = list(assigned.pop(worker.worker_id).values())
                logger.error(
                    "Worker %s exited with code %s holding %d jobs",
                    worker.worker_id,
                    worker.exitcode,
                    len(held),
                )
                workers[slot] = spawn()
                if not held:
                    continue
                lost, rest = held[0], held[1:]
                failure = WorkbenchError(f"Worker {worker.worker_id} exited while running this job")
                receive(
                    lost.index, error_record(lost.graph, lost.graph_id, CheckStatus.FAIL, failure)
                )
                for job in rest:
                    dispatch(job)

        def collect() -> None:
            while log_notification.poll():
                logger.debug(log_notification.recv())
            if error_notification.poll():
                exc, msg = error_notification.recv()
                logger.error(msg)
                raise WorkbenchError(msg) from exc
            replace_dead_workers()
            try:
                index, record = results.get(timeout=RESULT_POLL_INTERVAL)
            except Empty:
                return
            receive(index, record)

        def ready() -> Iterator[ReportRecord]:
            nonlocal emitted
            while emitted in pending:
                yield pending.pop(emitted)
                emitted += 1

        workers.extend(spawn() for _ in range(config.jobs))
        logger.info("Started %d %s workers", len(workers), self.pool_kind.value)
        try:
            for graph_id, g in graphs:
                while all(len(assigned[w.worker_id]) >= MAX_JOBS_QUEUED for w in workers):
                    collect()
                    yield from ready()
                dispatch(Job(submitted, graph_id, g, task))
                submitted += 1
            while emitted < submitted:
                collect()
                yield from ready()
        finally:
            self.stop_workers(workers, results)

    @staticmethod
    def stop_workers(workers: List[GraphWorker], results: "Queue") -> None:
        """Drop unstarted jobs and stop every worker.

        Records are drained while joining: a process cannot exit while its queue
        feeder still holds undelivered records.
        """
        for worker in workers:
            _discard(worker.inbox)
            worker.inbox.put(None)
        remaining = list(workers)
        while remaining:
            _discard(results)
            remaining[-1].join(timeout=RESULT_POLL_INTERVAL)
            if not remaining[-1].is_alive():
                remaining.pop()




def debug_from_env() -> bool:
    return os.getenv("EDGE_REGULARITY_DEBUG", "").lower() in ("1", "true", "yes")
