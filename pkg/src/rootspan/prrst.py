"""Path-reversal rooted spanning trees.

Connectivity and rooting happen together. Each round every losing root
picks one cross edge ``(u, x)`` with ``u`` in its own tree, the tree path
``u -> root`` is marked with the power-of-two ancestor table, its pointers
are flipped in one step so that ``u`` becomes the tree's root, and ``u`` is
hung under ``x``. Representatives are then compressed by batched pointer
jumping and the ancestor table is rebuilt for the next round.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .connectivity import StateError, jump
from .engine import INF, StepEngine, StepReport, pack, unpack
from .forest import RootedForest, chain_depths
from .graph import Graph


def ancestor_levels(n: int) -> int:
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


@dataclass
class PrState:
    parent: np.ndarray
    rep: np.ndarray
    on_path: np.ndarray
    special_anc: np.ndarray  # (n, levels); [v, k] = ancestor at distance 2**k
    grafts: list = field(default_factory=list)  # (u, r) pairs of the last round
    shortcut_history: list = field(default_factory=list)

    @classmethod
    def initial(cls, n: int) -> "PrState":
        ident = np.arange(n, dtype=np.int64)
        anc = np.repeat(ident[:, None], ancestor_levels(n), axis=1)
        return cls(ident.copy(), ident.copy(), np.zeros(n, dtype=bool), anc)

    @classmethod
    def from_parent(cls, parent, eng: StepEngine | None = None) -> "PrState":
        """State for an existing forest, with reps set to tree roots."""
        parent = np.asarray(parent, dtype=np.int64).copy()
        depth, roots = chain_depths(parent)
        if np.any(depth < 0):
            raise StateError("parent array is not a forest")
        st = cls.initial(len(parent))
        st.parent = parent
        st.rep = roots
        rebuild_ancestors(st, eng)
        return st

    @property
    def n(self) -> int:
        return len(self.parent)


def rebuild_ancestors(st: PrState, eng: StepEngine | None = None) -> None:
    """Refill the ancestor table by doubling; entries clamp at roots."""
    eng = eng or StepEngine()
    anc = st.special_anc
    levels = anc.shape[1]

    def base(lo, hi):
        anc[lo:hi, 0] = st.parent[lo:hi]

    eng.parallel_for(st.n, base)
    for k in range(1, levels):
        prev = anc[:, k - 1]

        def double(lo, hi, prev=prev, k=k):
            anc[lo:hi, k] = prev[prev[lo:hi]]

        eng.parallel_for(st.n, double)


def graft_round(g: Graph, st: PrState, mode: str, eng: StepEngine | None = None):
    """Choose one graft per losing root.

    Returns ``(u, r, partner)`` arrays. ``st.rep`` of each losing root is
    pointed at the winning target, ``u`` is marked on ``st.on_path`` and
    ``st.grafts`` holds the ``(u, r)`` pairs.
    """
    if mode not in ("min", "max"):
        raise ValueError(f"mode must be 'min' or 'max', got {mode!r}")
    eng = eng or StepEngine()
    n = st.n
    eu, ev = g.edges[:, 0], g.edges[:, 1]
    rep = st.rep.copy()
    best = np.full(n, INF, dtype=np.int64)

    def propose(lo, hi):
        ru, rv = rep[eu[lo:hi]], rep[ev[lo:hi]]
        live = ru != rv
        ru, rv = ru[live], rv[live]
        ids = np.arange(lo, hi, dtype=np.int64)[live]
        if mode == "min":
            loser, target = np.maximum(ru, rv), np.minimum(ru, rv)
        else:
            loser, target = np.minimum(ru, rv), np.maximum(ru, rv)
        eng.min_write(best, loser, pack(target, ids))

    eng.parallel_for(g.m, propose)

    u_out = np.full(n, -1, dtype=np.int64)
    x_out = np.full(n, -1, dtype=np.int64)
    st.on_path[:] = False

    def apply(lo, hi):
        b = best[lo:hi]
        hit = b != INF
        roots = np.arange(lo, hi)[hit]
        target, edge = unpack(b[hit])
        a, c = eu[edge], ev[edge]
        a_side = rep[a] == roots
        u = np.where(a_side, a, c)
        x = np.where(a_side, c, a)
        st.rep[roots] = target
        u_out[roots] = u
        x_out[roots] = x
        st.on_path[u] = True

    eng.parallel_for(n, apply)
    r = np.flatnonzero(u_out >= 0)
    u, x = u_out[r], x_out[r]
    st.grafts = list(zip(u.tolist(), r.tolist()))
    return u, r, x


def mark_paths(st: PrState, eng: StepEngine | None = None) -> None:
    """Extend the marks on ``st.on_path`` to every ancestor of a marked vertex.

    Level ``k`` runs from the top down; marked vertices mark their
    ``2**k``-th ancestor, so after all levels every distance below
    ``2**levels`` has been covered as a sum of distinct powers of two.
    """
    eng = eng or StepEngine()
    anc = st.special_anc
    for k in range(anc.shape[1] - 1, -1, -1):
        marked = st.on_path.copy()

        def spread(lo, hi, marked=marked, k=k):
            v = np.arange(lo, hi)[marked[lo:hi]]
            st.on_path[anc[v, k]] = True

        eng.parallel_for(st.n, spread)


def mark_path(st: PrState, u: int, r: int, eng: StepEngine | None = None) -> np.ndarray:
    """Mark the ``u -> r`` parent chain; ``r`` must root ``u``'s tree."""
    if st.parent[r] != r:
        raise StateError(f"{r} is not a tree root")
    st.on_path[:] = False
    st.on_path[u] = True
    mark_paths(st, eng)
    if not st.on_path[r]:
        raise StateError(f"{r} is not an ancestor of {u}")
    return st.on_path


def reverse_paths(st: PrState, starts, partners=None, eng: StepEngine | None = None) -> None:
    """Flip every marked chain in one step.

    Each marked non-root ``v`` writes ``parent[parent[v]] = v``; each start
    then points at its partner, or at itself when ``partners`` is None.
    """
    eng = eng or StepEngine()
    starts = np.asarray(starts, dtype=np.int64)
    hang = starts if partners is None else np.asarray(partners, dtype=np.int64)
    old = st.parent.copy()
    marked = st.on_path

    def flip(lo, hi):
        v = np.arange(lo, hi)
        v = v[marked[lo:hi] & (old[lo:hi] != v)]
        st.parent[old[v]] = v

    def attach(lo, hi):
        st.parent[starts[lo:hi]] = hang[lo:hi]

    eng.parallel_for(st.n, flip)
    # starts are private slots of the same step
    eng.parallel_for(len(starts), attach, barrier=False)


def reverse_path(st: PrState, u: int, r: int, eng: StepEngine | None = None) -> np.ndarray:
    mark_path(st, u, r, eng)
    reverse_paths(st, [u], None, eng)
    return st.parent


def batched_jump(st: PrState, batch: int = 5, eng: StepEngine | None = None) -> int:
    """Compress ``st.rep``; every jump is appended to ``st.shortcut_history``."""
    st.shortcut_history = []
    return jump(st.rep, eng, batch=batch, history=st.shortcut_history)


def _check_state(st: PrState) -> None:
    depth, roots = chain_depths(st.parent)
    if np.any(depth < 0):
        raise StateError("parent array lost acyclicity")
    if not np.array_equal(roots, st.rep):
        raise StateError("representatives disagree with tree roots")


def pr_rst(g: Graph, root: int = 0, jump_batch: int = 5, workers: int = 1,
           check: bool = False) -> tuple[RootedForest, StepReport]:
    """Rooted spanning forest by path reversal.

    The component holding ``root`` is re-rooted at ``root`` at the end; the
    other components keep the root they converged to. With ``check`` the
    forest and representative invariants are verified after every round.
    """
    n = g.n
    if not 0 <= root < n:
        raise ValueError(f"root {root} out of range [0, {n})")
    st = PrState.initial(n)
    with StepEngine(workers) as eng:
        mode = "min"
        while True:
            u, r, x = graft_round(g, st, mode, eng)
            if len(u) == 0:
                break
            mark_paths(st, eng)
            reverse_paths(st, u, x, eng)
            batched_jump(st, jump_batch, eng)
            rebuild_ancestors(st, eng)
            if check:
                _check_state(st)
            mode = "max" if mode == "min" else "min"

        top = int(st.rep[root])
        if top != root:
            mark_path(st, root, top, eng)
            reverse_paths(st, [root], None, eng)
            members = st.rep == top
            st.rep[members] = root
    forest = RootedForest.from_parent(st.parent)
    return forest, eng.report()
