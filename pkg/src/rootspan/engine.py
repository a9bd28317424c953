"""Step-synchronous data-parallel execution with barrier counting.

Each call to :meth:`StepEngine.parallel_for` models one kernel launch followed
by a global barrier. Kernels receive a half-open chunk ``[lo, hi)`` of the
domain and must only read arrays that are not written during the same step,
writing either private slots or through the engine's combine operations.
Under that contract the result does not depend on how the domain is split
or in which order chunks run, which the multi-worker mode exercises.
"""
from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

INF = np.iinfo(np.int64).max
_SHIFT = 32
_LOW = (1 << _SHIFT) - 1

Kernel = Callable[[int, int], None]


@dataclass
class StepReport:
    steps: int = 0
    work: int = 0
    wall_time: float = 0.0

    def __add__(self, other: "StepReport") -> "StepReport":
        return StepReport(self.steps + other.steps, self.work + other.work,
                          self.wall_time + other.wall_time)


def pack(value, writer):
    """Encode ``(value, writer)`` so that integer min equals lexicographic min."""
    value = np.asarray(value, dtype=np.int64)
    writer = np.asarray(writer, dtype=np.int64)
    return (value << _SHIFT) | writer


def unpack(key):
    key = np.asarray(key, dtype=np.int64)
    return key >> _SHIFT, key & _LOW


class StepEngine:
    """Runs steps and counts barriers and element updates.

    ``workers > 1`` splits every domain into that many chunks and runs them
    on a thread pool in reverse order, so any order dependence in a kernel
    shows up as a difference against the single-worker run.
    """

    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ValueError("workers must be >= 1")
        self.workers = workers
        self.steps = 0
        self.work = 0
        self.wall_time = 0.0
        self._lock = threading.Lock()
        self._pool: ThreadPoolExecutor | None = None
        self._t0: float | None = None

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        if self._t0 is not None:
            self.wall_time += time.perf_counter() - self._t0
            self._t0 = None
        self.close()
        return False

    def close(self):
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def parallel_for(self, size: int, kernel: Kernel, barrier: bool = True) -> None:
        """Run ``kernel`` over ``[0, size)``; ``barrier=False`` fuses the
        launch into the current step (work is still counted)."""
        self.steps += int(barrier)
        self.work += int(size)
        if size <= 0:
            return
        if self.workers == 1 or size < 2:
            kernel(0, size)
            return
        bounds = np.linspace(0, size, self.workers + 1).astype(np.int64)
        chunks = [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self.workers)
        futures = [self._pool.submit(kernel, lo, hi) for lo, hi in reversed(chunks)]
        for fut in futures:
            fut.result()

    def charge(self, steps: int, work: int = 0) -> None:
        """Account for a stage modeled by its step cost, e.g. a device sort."""
        self.steps += int(steps)
        self.work += int(work)

    # combine writes; the lock stands in for hardware atomics
    def min_write(self, target: np.ndarray, idx, values) -> None:
        with self._lock:
            np.minimum.at(target, idx, values)

    def max_write(self, target: np.ndarray, idx, values) -> None:
        with self._lock:
            np.maximum.at(target, idx, values)

    def or_flag(self, target: np.ndarray, idx=0) -> None:
        target[idx] = True

    def report(self) -> StepReport:
        wall = self.wall_time
        if self._t0 is not None:
            wall += time.perf_counter() - self._t0
        return StepReport(self.steps, self.work, wall)
