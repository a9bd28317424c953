"""Sequential oracles and the rooted-forest validator."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .forest import RootedForest, chain_depths
from .graph import Graph


@dataclass
class ValidationReport:
    violations: list[tuple[str, int, str]] = field(default_factory=list)
    components_found: int = 0
    depth_per_root: dict[int, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def depth(self) -> int:
        return max(self.depth_per_root.values(), default=0)

    def add(self, rule: str, item: int, message: str) -> None:
        self.violations.append((rule, int(item), message))


def oracle_cc(g: Graph) -> np.ndarray:
    """Union-find labels; each vertex gets the smallest id in its component."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges.tolist():
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    return np.array([find(v) for v in range(g.n)], dtype=np.int64)


def oracle_bfs(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source`` (-1 where unreachable), queue based."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = [source]
    offsets, nbrs = g.offsets.tolist(), g.neighbors.tolist()
    for v in queue:
        for w in nbrs[offsets[v]:offsets[v + 1]]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return np.asarray(dist, dtype=np.int64)


def oracle_root(edges, root: int, n: int | None = None) -> np.ndarray:
    """Parent array of the tree ``edges`` hung from ``root`` (iterative DFS)."""
    pairs = [(int(a), int(b)) for a, b in np.asarray(edges, dtype=np.int64).reshape(-1, 2)]
    if n is None:
        n = max([root] + [max(p) for p in pairs]) + 1
    if len(pairs) != n - 1:
        raise ValueError(f"a tree on {n} vertices needs {n - 1} edges, got {len(pairs)}")
    adj = defaultdict(list)
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    parent = [-1] * n
    parent[root] = root
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w == parent[v]:
                continue
            if parent[w] != -1:
                raise ValueError("edges contain a cycle")
            parent[w] = v
            stack.append(w)
    if -1 in parent:
        raise ValueError("edges do not connect every vertex")
    return np.asarray(parent, dtype=np.int64)


def _edge_keys(g: Graph) -> np.ndarray:
    return np.sort(g.edges[:, 0] * g.n + g.edges[:, 1])


def validate_rooted_forest(g: Graph, f: RootedForest | np.ndarray, roots=None) -> ValidationReport:
    """Check a parent array against ``g``.

    Rules: ``root`` (declared roots self-point, nobody else does), ``edge``
    (child-parent pairs are graph edges), ``cycle`` (every chain reaches a
    root) and ``component`` (exactly one root per connected component).
    """
    if isinstance(f, RootedForest):
        parent, declared = np.asarray(f.parent, dtype=np.int64), f.roots
    else:
        parent, declared = np.asarray(f, dtype=np.int64), roots
    n = g.n
    if len(parent) != n:
        raise ValueError(f"parent has length {len(parent)}, graph has {n} vertices")
    rep = ValidationReport()
    ids = np.arange(n)
    selfp = parent == ids
    if declared is None:
        declared = np.flatnonzero(selfp)
    declared = np.unique(np.asarray(declared, dtype=np.int64))
    for r in declared[~selfp[declared]]:
        rep.add("root", r, f"declared root {r} has parent {parent[r]}")
    undeclared = np.setdiff1d(np.flatnonzero(selfp), declared)
    for v in undeclared:
        rep.add("root", v, f"vertex {v} points at itself but is not a declared root")

    out_of_range = (parent < 0) | (parent >= n)
    for v in np.flatnonzero(out_of_range):
        rep.add("edge", v, f"parent[{v}]={parent[v]} out of range")
    child = np.flatnonzero(~selfp & ~out_of_range)
    if len(child):
        a, b = np.minimum(child, parent[child]), np.maximum(child, parent[child])
        keys = _edge_keys(g)
        pos = np.searchsorted(keys, a * n + b)
        pos = np.minimum(pos, max(len(keys) - 1, 0))
        found = keys[pos] == a * n + b if len(keys) else np.zeros(len(child), dtype=bool)
        for v in child[~found]:
            rep.add("edge", v, f"({v}, {parent[v]}) is not an edge")

    depth, root_of = chain_depths(parent)
    for v in np.flatnonzero(depth < 0):
        rep.add("cycle", v, f"parent chain from {v} never reaches a root")

    labels = oracle_cc(g)
    rep.components_found = len(np.unique(labels)) if n else 0
    roots_here = np.flatnonzero(selfp)
    per_comp = np.bincount(labels[roots_here], minlength=n) if n else np.zeros(0, dtype=np.int64)
    for c in np.flatnonzero(per_comp > 1):
        rep.add("component", c, f"component {c} has {per_comp[c]} roots")
    for c in np.setdiff1d(np.unique(labels), labels[roots_here]):
        rep.add("component", c, f"component {c} has no root")
    ok_chain = depth >= 0
    stray = np.flatnonzero(ok_chain & (labels != labels[np.where(ok_chain, root_of, 0)]))
    for v in stray:
        rep.add("component", v, f"vertex {v} hangs under root {root_of[v]} of another component")

    for r in roots_here:
        rep.depth_per_root[int(r)] = 0
    if n:
        best = np.full(n, -1, dtype=np.int64)
        good = np.flatnonzero(ok_chain)
        np.maximum.at(best, root_of[good], depth[good])
        for r in roots_here:
            rep.depth_per_root[int(r)] = int(best[r])
    return rep
