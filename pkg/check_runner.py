"""
Verification check runner
Evaluates relation residuals on a pool of worker threads and collects deterministic reports
"""

import logging
import os
import queue
import threading
import time
from dataclasses import dataclass
from typing import Callable, Iterable, List, Mapping, Optional, Tuple

from param_ring import Number

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckTask:
    """One identity to check; the residual is lhs - rhs and must vanish"""
    name: str
    indices: Tuple[int, ...]
    residual: Callable[[], object]


@dataclass
class RelationReport:
    check_name: str
    index_tuple: Tuple[int, ...]
    status: str
    residual_term_count: int
    residual_preview: List[str]
    elapsed_millis: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def sort_key(self):
        return (self.check_name, self.index_tuple)

    def to_json(self) -> dict:
        return {
            "name": self.check_name,
            "indices": list(self.index_tuple),
            "status": self.status,
            "residual_terms": self.residual_term_count,
            "residual_preview": list(self.residual_preview),
            "millis": self.elapsed_millis,
        }


def default_thread_count() -> int:
    """RACAH_THREADS when set, otherwise the number of available CPUs"""
    configured = os.environ.get("RACAH_THREADS")
    if configured:
        try:
            count = int(configured)
        except ValueError:
            raise ValueError(f"RACAH_THREADS must be a positive integer, got '{configured}'")
        if count < 1:
            raise ValueError(f"RACAH_THREADS must be a positive integer, got {count}")
        return count
    return os.cpu_count() or 1


class CheckRunner:
    """Runs check tasks on worker threads; report order never depends on scheduling"""

    def __init__(self, threads: Optional[int] = None, residual_bindings: Optional[Mapping[str, Number]] = None,
                 record_timings: bool = False):
        self.threads = threads or default_thread_count()
        self.residual_bindings = dict(residual_bindings or {})
        self.record_timings = record_timings

        # Residual previews stay readable
        self.preview_terms = 8

        self.task_queue = queue.Queue()
        self.reports: List[RelationReport] = []
        self._reports_lock = threading.Lock()

    def evaluate(self, task: CheckTask) -> RelationReport:
        """Compute one residual and turn it into a report"""
        started = time.perf_counter()
        try:
            residual = task.residual()
            if self.residual_bindings:
                residual = residual.substitute_params(self.residual_bindings)
            count = len(residual)
            status = "pass" if count == 0 else "fail"
            preview = residual.render(self.preview_terms)
        except Exception as e:
            logger.debug("check %s%s raised %r", task.name, task.indices, e)
            status, count, preview = "error", -1, [f"{type(e).__name__}: {e}"]
        millis = int((time.perf_counter() - started) * 1000) if self.record_timings else 0
        return RelationReport(task.name, tuple(task.indices), status, count, preview, millis)

    def _worker_loop(self):
        while True:
            try:
                task = self.task_queue.get_nowait()
            except queue.Empty:
                return
            report = self.evaluate(task)
            with self._reports_lock:
                self.reports.append(report)
            self.task_queue.task_done()

    def run(self, tasks: Iterable[CheckTask]) -> List[RelationReport]:
        tasks = list(tasks)
        self.reports = []
        for task in tasks:
            self.task_queue.put(task)

        workers = [threading.Thread(target=self._worker_loop, daemon=True)
                   for _ in range(min(self.threads, max(len(tasks), 1)))]
        logger.info("running %d checks on %d threads", len(tasks), len(workers))
        for worker in workers:
            worker.start()
        for worker in workers:
            worker.join()

        return sorted(self.reports, key=RelationReport.sort_key)


def run_checks(tasks: Iterable[CheckTask], runner: Optional[CheckRunner] = None) -> List[RelationReport]:
    return (runner or CheckRunner(threads=1)).run(tasks)


def summarize(reports: Iterable[RelationReport]) -> dict:
    reports = list(reports)
    passed = sum(1 for report in reports if report.passed)
    return {"total": len(reports), "passed": passed, "failed": len(reports) - passed}
