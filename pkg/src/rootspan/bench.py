"""Benchmark protocol and CSV records."""
from __future__ import annotations

import csv
import math
import os
import statistics
import time
from dataclasses import asdict, dataclass, fields
from typing import Callable, Iterable, TextIO

import numpy as np

from .bfs import bfs_rst
from .euler import cc_euler_rst
from .forest import RootedForest
from .graph import Graph, build_csr, generate, read_edge_list
from .prrst import pr_rst
from .validate import validate_rooted_forest

CSV_COLUMNS = ["dataset", "algorithm", "n", "m", "root", "median_ms", "steps", "work",
               "tree_depth", "components", "valid"]
ALGORITHM_NAMES = ("bfs", "cc-euler", "pr-rst")
WARMUP_RUNS = 1
TIMED_RUNS = 5


@dataclass
class BenchRecord:
    dataset: str
    algorithm: str
    n: int
    m: int
    root: int
    median_ms: float
    steps: int
    work: int
    tree_depth: int
    components: int
    valid: bool

    def to_row(self) -> dict[str, str]:
        row = {k: str(v) for k, v in asdict(self).items()}
        row["median_ms"] = repr(float(self.median_ms))
        row["valid"] = "true" if self.valid else "false"
        return row

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "BenchRecord":
        kwargs = {}
        for f in fields(cls):
            raw = row[f.name]
            if f.name == "valid":
                kwargs[f.name] = raw == "true"
            elif f.name == "median_ms":
                kwargs[f.name] = float(raw)
            elif f.name in ("dataset", "algorithm"):
                kwargs[f.name] = raw
            else:
                kwargs[f.name] = int(raw)
        return cls(**kwargs)


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(rec.to_row())


def read_csv(stream: TextIO) -> list[BenchRecord]:
    reader = csv.DictReader(stream)
    if reader.fieldnames != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [BenchRecord.from_row(row) for row in reader]


def load_source(source: str, seed: int | None = None) -> tuple[str, Graph]:
    """Resolve ``gen:<kind>:<p1>[:<p2>...]`` or an edge-list file path."""
    if source.startswith("gen:"):
        kind, *params = source[4:].split(":")
        return source, build_csr(generate(kind, *params, seed=seed))
    if not os.path.exists(source):
        raise FileNotFoundError(f"file not found: {source}")
    return os.path.basename(source), build_csr(read_edge_list(source))


def run_algorithm(g: Graph, algorithm: str, root: int = 0, jump_batch: int = 5,
                  workers: int = 1):
    if algorithm == "bfs":
        return bfs_rst(g, root, workers=workers)
    if algorithm == "cc-euler":
        return cc_euler_rst(g, root, workers=workers)
    if algorithm == "pr-rst":
        return pr_rst(g, root, jump_batch=jump_batch, workers=workers)
    raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHM_NAMES}")


def bench_one(dataset: str, g: Graph, algorithm: str, root: int = 0, jump_batch: int = 5,
              workers: int = 1, timer: Callable[[], float] = time.perf_counter,
              on_run: Callable[[int], None] | None = None) -> BenchRecord:
    """One warm-up plus five timed executions; the median of the timed ones is kept.

    The warm-up output is validated; every timed output must reproduce it.
    ``on_run`` is called with the execution index (0 is the warm-up).
    """
    record = BenchRecord(dataset, algorithm, g.n, g.m, root, math.nan, 0, 0, 0, 0, False)
    times = []
    reference: RootedForest | None = None
    try:
        for i in range(WARMUP_RUNS + TIMED_RUNS):
            if on_run is not None:
                on_run(i)
            t0 = timer()
            forest, report = run_algorithm(g, algorithm, root, jump_batch, workers)
            elapsed = timer() - t0
            if i < WARMUP_RUNS:
                check = validate_rooted_forest(g, forest)
                record.steps, record.work = report.steps, report.work
                record.tree_depth = check.depth
                record.components = check.components_found
                if not check.ok:
                    return record
                reference = forest
                continue
            if not np.array_equal(forest.parent, reference.parent):
                return record
            times.append(elapsed)
    except (ValueError, RuntimeError):
        return record
    record.median_ms = statistics.median(times) * 1e3
    record.valid = True
    return record


def bench(sources: list[str], algorithms: list[str], root: int = 0, jump_batch: int = 5,
          seed: int | None = None, workers: int = 1, **kwargs) -> list[BenchRecord]:
    records = []
    for source in sources:
        name, g = load_source(source, seed)
        for algo in algorithms:
            records.append(bench_one(name, g, algo, root, jump_batch, workers, **kwargs))
    return records
