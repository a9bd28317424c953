"""Rooting an unrooted spanning forest with the Euler-tour technique.

Undirected tree edge ``i`` becomes directed edges ``i`` (u->v) and
``i + E/2`` (v->u), so the reverse of ``e`` is always ``(e + E/2) mod E``.
The lexicographic sort of ``(from, to)`` only produces a permutation used to
thread the per-vertex ``first``/``last``/``next`` adjacency; edges are never
relocated.
"""
from __future__ import annotations

import math
from contextlib import nullcontext
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .connectivity import SpanningForest, cc_spanning_forest
from .engine import StepEngine, StepReport
from .forest import RootedForest


class EulerError(ValueError):
    pass


@dataclass
class EulerStructure:
    n: int
    src: np.ndarray
    dst: np.ndarray
    first: np.ndarray
    last: np.ndarray
    next: np.ndarray
    succ: np.ndarray | None = None
    rank: np.ndarray | None = None
    labels: np.ndarray | None = field(default=None, repr=False)

    @property
    def E(self) -> int:
        return len(self.src)

    def rev(self, e):
        half = self.E // 2
        return (np.asarray(e) + half) % self.E


def _sort_steps(E: int) -> int:
    return max(1, math.ceil(math.log2(E))) if E > 1 else 1


def _forest_labels(n: int, pairs: np.ndarray) -> np.ndarray:
    if n == 0:
        return np.empty(0, dtype=np.int64)
    adj = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    ncomp, labels = connected_components(adj, directed=False)
    if len(pairs) != n - ncomp:
        raise EulerError("not a forest: tree edges contain a cycle")
    return labels.astype(np.int64)


def build_euler(edges, n: int, eng: StepEngine | None = None) -> EulerStructure:
    """Double the tree edges and thread each vertex's out-edges.

    ``edges`` is a :class:`SpanningForest` or an ``(k, 2)`` array of pairs.
    """
    pairs = edges.edges if isinstance(edges, SpanningForest) else edges
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if len(pairs) and (np.any(pairs[:, 0] == pairs[:, 1])):
        raise EulerError("not a forest: self-loop")
    labels = _forest_labels(n, pairs)
    eng = eng or StepEngine()
    T = len(pairs)
    E = 2 * T
    src = np.empty(E, dtype=np.int64)
    dst = np.empty(E, dtype=np.int64)

    def double(lo, hi):
        src[lo:hi], dst[lo:hi] = pairs[lo:hi, 0], pairs[lo:hi, 1]
        src[T + lo:T + hi], dst[T + lo:T + hi] = pairs[lo:hi, 1], pairs[lo:hi, 0]

    eng.parallel_for(T, double)
    order = np.lexsort((dst, src))  # stable; stands in for a device radix sort
    eng.charge(_sort_steps(E), E)

    first = np.full(n, -1, dtype=np.int64)
    last = np.full(n, -1, dtype=np.int64)
    nxt = np.full(E, -1, dtype=np.int64)
    s_sorted = src[order]

    def thread(lo, hi):
        j = np.arange(lo, hi)
        e = order[lo:hi]
        v = s_sorted[lo:hi]
        head = (j == 0) | (s_sorted[np.maximum(j - 1, 0)] != v)
        tail = (j == E - 1) | (s_sorted[np.minimum(j + 1, E - 1)] != v)
        first[v[head]] = e[head]
        last[v[tail]] = e[tail]
        inner = ~tail
        nxt[e[inner]] = order[j[inner] + 1]

    eng.parallel_for(E, thread)
    return EulerStructure(n, src, dst, first, last, nxt, labels=labels)


def compute_successor(es: EulerStructure, eng: StepEngine | None = None) -> np.ndarray:
    """``succ(e) = next(rev(e))``, wrapping to ``first(from(rev(e)))``."""
    eng = eng or StepEngine()
    E = es.E
    succ = np.empty(E, dtype=np.int64)

    def kernel(lo, hi):
        r = es.rev(np.arange(lo, hi))
        nr = es.next[r]
        succ[lo:hi] = np.where(nr != -1, nr, es.first[es.src[r]])

    eng.parallel_for(E, kernel)
    es.succ = succ
    return succ


def break_cycles(es: EulerStructure, roots, eng: StepEngine | None = None) -> np.ndarray:
    """Cut each tree's tour just before it would re-enter ``first[r]``."""
    if es.succ is None:
        raise EulerError("compute_successor must run first")
    eng = eng or StepEngine()
    roots = np.asarray(roots, dtype=np.int64).reshape(-1)
    if es.labels is not None and len(roots):
        tree = es.labels[roots]
        if len(np.unique(tree)) != len(tree):
            raise EulerError("two roots given for the same tree")
    E = es.E
    bare = roots[es.last[roots] == -1] if len(roots) else roots
    if es.labels is not None and len(bare):
        sizes = np.bincount(es.labels, minlength=es.n)
        if np.any(sizes[es.labels[bare]] > 1):
            raise EulerError("root without outgoing edges in a nonsingleton tree")
    cut = roots[es.last[roots] != -1] if len(roots) else roots
    succ = es.succ

    def kernel(lo, hi):
        r = cut[lo:hi]
        succ[(es.last[r] + E // 2) % E] = -1

    eng.parallel_for(len(cut), kernel)
    return succ


def list_rank(es: EulerStructure, eng: StepEngine | None = None) -> np.ndarray:
    """Head-based 0-indexed positions by pointer jumping over predecessors."""
    if es.succ is None:
        raise EulerError("compute_successor must run first")
    eng = eng or StepEngine()
    E = es.E
    succ = es.succ
    pred = np.full(E, -1, dtype=np.int64)
    dist = np.zeros(E, dtype=np.int64)

    def link(lo, hi):
        e = np.arange(lo, hi)
        s = succ[lo:hi]
        has = s != -1
        pred[s[has]] = e[has]

    eng.parallel_for(E, link)
    dist[pred != -1] = 1
    limit = math.ceil(math.log2(E)) + 1 if E > 1 else 1
    rounds = 0
    while np.any(pred != -1):
        if rounds >= limit:
            raise EulerError("successor links still contain a cycle")
        p0, d0 = pred.copy(), dist.copy()

        def jump(lo, hi):
            p = p0[lo:hi]
            live = p != -1
            idx = np.arange(lo, hi)[live]
            pl = p[live]
            dist[idx] = d0[idx] + d0[pl]
            pred[idx] = p0[pl]

        eng.parallel_for(E, jump)
        rounds += 1
    es.rank = dist
    return dist


def derive_parents(es: EulerStructure, roots) -> RootedForest:
    """The later edge of each ``(e, rev(e))`` pair walks child to parent."""
    if es.rank is None:
        raise EulerError("list_rank must run first")
    parent = np.arange(es.n, dtype=np.int64)
    half = es.E // 2
    e = np.arange(half)
    r = e + half
    re, rr = es.rank[e], es.rank[r]
    if np.any(re == rr):
        raise EulerError("equal ranks on a reverse pair")
    ret = np.where(re > rr, e, r)
    parent[es.src[ret]] = es.dst[ret]
    roots = np.asarray(sorted(int(x) for x in roots), dtype=np.int64)
    parent[roots] = roots
    return RootedForest(parent, np.flatnonzero(parent == np.arange(es.n)))


def default_roots(labels: np.ndarray, root: int | None = None) -> np.ndarray:
    """Smallest vertex per component; ``root`` replaces its own component's."""
    n = len(labels)
    lowest = np.full(n, n, dtype=np.int64)
    np.minimum.at(lowest, labels, np.arange(n))
    roots = lowest[lowest < n]
    if root is not None:
        if not 0 <= root < n:
            raise ValueError(f"root {root} out of range [0, {n})")
        roots = np.where(labels[roots] == labels[root], root, roots)
    return np.sort(roots)


def root_forest(sf: SpanningForest, root: int | None = None,
                eng: StepEngine | None = None) -> tuple[RootedForest, StepReport]:
    """Euler-tour rooting of every tree of ``sf``.

    Each component is rooted at its smallest vertex, except that the
    component containing ``root`` is rooted there.
    """
    own = eng is None
    eng = eng or StepEngine()
    with eng if own else nullcontext():
        es = build_euler(sf, sf.n, eng)
        roots = default_roots(sf.labels, root)
        eng.charge(1, sf.n)  # per-component min reduction
        compute_successor(es, eng)
        break_cycles(es, roots, eng)
        list_rank(es, eng)
        forest = derive_parents(es, roots)
        eng.charge(1, es.E // 2)
    return forest, eng.report()


def cc_euler_rst(g, root: int = 0, workers: int = 1) -> tuple[RootedForest, StepReport]:
    """Connectivity followed by Euler-tour rooting, under one step counter."""
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range [0, {g.n})")
    sf, cc_report = cc_spanning_forest(g, workers=workers)
    with StepEngine(workers) as eng:
        forest, _ = root_forest(sf, root, eng)
    return forest, cc_report + eng.report()
