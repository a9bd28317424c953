"""Level-synchronous BFS producing a rooted spanning forest."""
from __future__ import annotations

import numpy as np

from .engine import INF, StepEngine, StepReport
from .forest import RootedForest
from .graph import Graph


def _frontier_arcs(g: Graph, frontier: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sources and targets of every arc leaving ``frontier``."""
    starts = g.offsets[frontier]
    counts = g.offsets[frontier + 1] - starts
    total = int(counts.sum())
    src = np.repeat(frontier, counts)
    # position of each arc within its run, added to its run start
    run_base = np.repeat(np.cumsum(counts) - counts, counts)
    arcs = np.repeat(starts, counts) + (np.arange(total, dtype=np.int64) - run_base)
    return src, g.neighbors[arcs]


def bfs_rst(g: Graph, root: int = 0, workers: int = 1) -> tuple[RootedForest, StepReport]:
    """Rooted BFS forest; unreached components restart at their smallest id.

    One step per level: every arc out of the frontier whose head was not
    discovered at an earlier level min-combines its tail into the head's
    parent slot, so the smallest discoverer wins.
    """
    n = g.n
    if not 0 <= root < n:
        raise ValueError(f"root {root} out of range [0, {n})")
    parent = np.full(n, INF, dtype=np.int64)
    levels = np.full(n, -1, dtype=np.int64)
    roots = []

    with StepEngine(workers) as eng:
        def init(lo, hi):
            parent[lo:hi] = INF
            levels[lo:hi] = -1

        eng.parallel_for(n, init)
        start = root
        while start >= 0:
            parent[start] = start
            levels[start] = 0
            roots.append(start)
            frontier = np.array([start], dtype=np.int64)
            level = 0
            while frontier.size:
                level += 1
                src, dst = _frontier_arcs(g, frontier)
                fresh = np.zeros(n, dtype=bool)
                seen = levels.copy()

                def expand(lo, hi, src=src, dst=dst, fresh=fresh, seen=seen, level=level):
                    s, d = src[lo:hi], dst[lo:hi]
                    open_ = seen[d] < 0
                    s, d = s[open_], d[open_]
                    eng.min_write(parent, d, s)
                    levels[d] = level
                    fresh[d] = True

                eng.parallel_for(len(dst), expand)
                frontier = np.flatnonzero(fresh)
            unvisited = np.flatnonzero(levels < 0)
            start = int(unvisited[0]) if unvisited.size else -1
            if start >= 0:
                eng.charge(1, n)  # smallest-unvisited reduction
    forest = RootedForest(parent, np.asarray(sorted(roots), dtype=np.int64), levels)
    return forest, eng.report()
