"""Connectivity by alternating min/max hooking and pointer jumping.

Hooks only ever link a root onto another root, all in one direction per
round, so the union structure stays acyclic. The edge behind each hook is
recorded, which yields an unrooted spanning forest as a by-product.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import INF, StepEngine, StepReport, pack, unpack
from .graph import Graph


class StateError(RuntimeError):
    pass


@dataclass
class SpanningForest:
    n: int
    tree_edges: np.ndarray  # sorted undirected edge indices
    labels: np.ndarray
    edges: np.ndarray  # (len(tree_edges), 2) endpoint pairs

    @property
    def num_components(self) -> int:
        return len(np.unique(self.labels)) if self.n else 0


def _is_compressed(rep: np.ndarray) -> bool:
    return bool(np.array_equal(rep[rep], rep))


def hook_step(g: Graph, rep: np.ndarray, mode: str, eng: StepEngine | None = None,
              check: bool = True) -> tuple[bool, np.ndarray]:
    """One hooking round over all edges. Updates ``rep`` in place.

    Returns ``(changed, winners)`` where ``winners[r]`` is the edge index that
    hooked root ``r`` this round, or -1.
    """
    if mode not in ("min", "max"):
        raise ValueError(f"mode must be 'min' or 'max', got {mode!r}")
    if check and not _is_compressed(rep):
        raise StateError("hook_step requires a fully compressed rep array")
    eng = eng or StepEngine()
    n = len(rep)
    eu, ev = g.edges[:, 0], g.edges[:, 1]
    best = np.full(n, INF, dtype=np.int64)
    snap = rep.copy()

    def propose(lo, hi):
        ru, rv = snap[eu[lo:hi]], snap[ev[lo:hi]]
        live = ru != rv
        ru, rv = ru[live], rv[live]
        ids = np.arange(lo, hi, dtype=np.int64)[live]
        if mode == "min":
            loser, target = np.maximum(ru, rv), np.minimum(ru, rv)
        else:
            loser, target = np.minimum(ru, rv), np.maximum(ru, rv)
        eng.min_write(best, loser, pack(target, ids))

    eng.parallel_for(g.m, propose)

    winners = np.full(n, -1, dtype=np.int64)

    def apply(lo, hi):
        b = best[lo:hi]
        hit = b != INF
        target, edge = unpack(b[hit])
        idx = np.arange(lo, hi)[hit]
        rep[idx] = target
        winners[idx] = edge

    eng.parallel_for(n, apply)
    return bool(np.any(winners >= 0)), winners


def jump(rep: np.ndarray, eng: StepEngine | None = None, batch: int = 1,
         history: list | None = None) -> int:
    """Pointer-jump ``rep`` in place until every entry points at its root.

    Each barrier covers ``batch`` jumps; inside a barrier every jump reads the
    full result of the previous one, the deterministic best case of threads
    jumping several times between global synchronizations. Convergence is
    detected in the barrier that completes it by testing whether the new
    pointers are fixed points. Returns the number of barriers. When
    ``history`` is a list, the pointer array after each jump is appended.
    """
    if batch < 1:
        raise ValueError("batch must be >= 1")
    eng = eng or StepEngine()
    n = len(rep)
    max_jumps = int(np.ceil(np.log2(max(n, 2)))) + 1
    orig = rep.copy()
    barriers = jumps = 0
    while True:
        pending = np.zeros(1, dtype=bool)
        for sub in range(batch):
            src = rep.copy()

            def kernel(lo, hi, src=src):
                nxt = src[src[lo:hi]]
                rep[lo:hi] = nxt
                if np.any(src[src[nxt]] != nxt):
                    pending[0] = True

            pending[0] = False
            eng.parallel_for(n, kernel, barrier=(sub == 0))
            jumps += 1
            if history is not None:
                history.append(rep.copy())
            if not pending[0]:
                break
        barriers += 1
        if not pending[0]:
            if not np.array_equal(orig[rep], rep):
                raise StateError("pointer chains collapsed onto a non-root; rep contains a cycle")
            return barriers
        if jumps > max_jumps:
            raise StateError("pointer chains did not converge; rep contains a cycle")


def jump_to_convergence(rep: np.ndarray, eng: StepEngine | None = None) -> int:
    return jump(rep, eng, batch=1)


def cc_spanning_forest(g: Graph, workers: int = 1) -> tuple[SpanningForest, StepReport]:
    n = g.n
    rep = np.arange(n, dtype=np.int64)
    marked = np.zeros(g.m, dtype=bool)
    with StepEngine(workers) as eng:
        mode = "min"
        while True:
            changed, winners = hook_step(g, rep, mode, eng, check=False)
            if not changed:
                break
            marked[winners[winners >= 0]] = True
            jump(rep, eng)
            mode = "max" if mode == "min" else "min"
    tree = np.flatnonzero(marked)
    forest = SpanningForest(n, tree, rep.copy(), g.edges[tree])
    return forest, eng.report()
