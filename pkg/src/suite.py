import logging
import traceback
from dataclasses import dataclass, field
from typing import Dict, List

from PySide6.QtCore import QMutex, QMutexLocker, QObject, QRunnable, Qt, QThreadPool, Signal, Slot

from const import *
from errors import InvalidArgument
from generators import GeneratorSpec, attach_function
from pipeline import approximate_decompose, residual_report

logger = logging.getLogger(APPLICATION)

SUITE_KINDS = (GeneratorKind.MONOTONE_CURVE, GeneratorKind.DISJOINT_CROSS_FREE)
SUITE_POINTS = 120


@dataclass
class SuiteResult:
    # instance name -> report
    reports: Dict[str, object] = field(default_factory=dict)
    # instance name -> formatted error
    errors: Dict[str, str] = field(default_factory=dict)

    @property
    def instances(self):
        return len(self.reports) + len(self.errors)

    @property
    def violations(self):
        return sum(report.violations for report in self.reports.values())

    @property
    def failures(self):
        return sorted(
            [name for name, report in self.reports.items() if not report.holds]
            + list(self.errors)
        )

    @property
    def passed(self):
        return self.instances > 0 and not self.failures


def suite_specs(count, seed):
    """count generator specs alternating between the array-free kinds"""
    return [
        GeneratorSpec(SUITE_KINDS[k % len(SUITE_KINDS)], SUITE_POINTS, seed + k)
        for k in range(count)
    ]


class WorkerSignals(QObject):
    finished = Signal(bool)
    error = Signal(str)
    report = Signal(object)

    def __init__(self):
        super().__init__()


class BoundCheckWorker(QRunnable):
    def __init__(self, spec: GeneratorSpec, epsilon_ratio):
        super().__init__()
        self.spec = spec
        self.epsilon_ratio = epsilon_ratio
        self.name = f"{spec.kind.value}-{spec.seed}"
        self.signals = WorkerSignals()
        self.setAutoDelete(False)

    def run(self):
        try:
            sample = attach_function(self.spec.generate(), "sin_poly", (3.0, 2.0))
            epsilon = self.epsilon_ratio * sample.norm
            decomposition = approximate_decompose(sample, epsilon)
            report = residual_report(sample, decomposition)
            self.signals.report.emit(report)
            self.signals.finished.emit(report.holds)
        except Exception:
            self.signals.error.emit(traceback.format_exc())
            self.signals.finished.emit(False)

    def __str__(self):
        return self.name


class BoundSuite(QObject):
    def __init__(self, threads=4):
        super().__init__()
        self.pool = QThreadPool.globalInstance()
        self.pool.setMaxThreadCount(max(1, int(threads)))
        self.mutex = QMutex()
        self.workers = []
        self.result = SuiteResult()
        self.total = 0

    def _report(self, worker, report):
        with QMutexLocker(self.mutex):
            self.result.reports[str(worker)] = report

    def _error(self, worker, error):
        with QMutexLocker(self.mutex):
            self.result.errors[str(worker)] = error
        logger.error(f"{worker} failed:\n{error}")

    def _finished(self, worker, success):
        with QMutexLocker(self.mutex):
            done = self.result.instances
        logger.debug(f"{worker} finished, success: {success}")
        logger.info(f"{done}/{self.total} instances checked")

    def add_worker(self, worker):
        # workers emit from pool threads and nothing runs an event loop here
        worker.signals.report.connect(
            lambda report, worker=worker: self._report(worker, report), Qt.DirectConnection
        )
        worker.signals.error.connect(
            lambda error, worker=worker: self._error(worker, error), Qt.DirectConnection
        )
        worker.signals.finished.connect(
            lambda success, worker=worker: self._finished(worker, success),
            Qt.DirectConnection,
        )
        self.workers.append(worker)
        return worker

    def run(self, specs, epsilon_ratio) -> SuiteResult:
        if not epsilon_ratio > 0:
            raise InvalidArgument(f"epsilon_ratio must be positive, got {epsilon_ratio}")
        for spec in specs:
            self.add_worker(BoundCheckWorker(spec, epsilon_ratio))
        self.total = len(self.workers)
        for worker in self.workers:
            self.pool.start(worker)
        self.pool.waitForDone()
        self.workers = []
        return self.result


def run_suite(count, seed=0, epsilon_ratio=0.05, threads=4) -> SuiteResult:
    if count < 1:
        raise InvalidArgument(f"count must be at least 1, got {count}")
    return BoundSuite(threads).run(suite_specs(count, seed), epsilon_ratio)
