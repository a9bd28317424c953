from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class CycleError(ValueError):
    """Parent array contains a cycle other than root self-loops."""


@dataclass
class RootedForest:
    """Parent array with ``parent[r] == r`` exactly for the roots.

    ``levels`` is filled by algorithms that know hop distances (BFS).
    """

    parent: np.ndarray
    roots: np.ndarray
    levels: np.ndarray | None = None

    @classmethod
    def from_parent(cls, parent) -> "RootedForest":
        parent = np.asarray(parent, dtype=np.int64)
        roots = np.flatnonzero(parent == np.arange(len(parent)))
        return cls(parent, roots)

    @property
    def n(self) -> int:
        return len(self.parent)

    def tree_edges(self) -> np.ndarray:
        """Child-parent pairs for every non-root vertex, shape ``(n - roots, 2)``."""
        v = np.flatnonzero(self.parent != np.arange(self.n))
        return np.stack([v, self.parent[v]], axis=1)


def chain_depths(parent) -> tuple[np.ndarray, np.ndarray]:
    """Walk every parent chain once, memoizing depths.

    Returns ``(depth, root)``. Vertices whose chain never reaches a self-loop
    (a cycle, or an out-of-range pointer) get ``depth == -1`` and
    ``root == -1``.
    """
    parent = np.asarray(parent, dtype=np.int64).tolist()
    n = len(parent)
    depth = [-2] * n  # -2 unknown, -1 bad
    root = [-1] * n
    stamp = [-1] * n
    for v in range(n):
        if depth[v] != -2:
            continue
        path = []
        x = v
        bad = False
        while True:
            if depth[x] != -2:
                bad = depth[x] == -1
                break
            if stamp[x] == v:
                bad = True
                break
            stamp[x] = v
            p = parent[x]
            if p == x:
                depth[x] = 0
                root[x] = x
                break
            path.append(x)
            if not 0 <= p < n:
                bad = True
                break
            x = p
        if bad:
            for y in path:
                depth[y] = -1
            if depth[x] == -2:
                depth[x] = -1
            continue
        for y in reversed(path):
            p = parent[y]
            depth[y] = depth[p] + 1
            root[y] = root[p]
    return np.asarray(depth, dtype=np.int64), np.asarray(root, dtype=np.int64)


def forest_depth(f: RootedForest | np.ndarray) -> tuple[dict[int, int], int]:
    """Maximum parent-chain length per root, plus the overall maximum."""
    parent = f.parent if isinstance(f, RootedForest) else np.asarray(f)
    depth, root = chain_depths(parent)
    if np.any(depth < 0):
        raise CycleError(f"parent array has a cycle through vertex {int(np.flatnonzero(depth < 0)[0])}")
    per_root: dict[int, int] = {}
    if len(parent):
        best = np.zeros(len(parent), dtype=np.int64)
        np.maximum.at(best, root, depth)
        for r in np.flatnonzero(parent == np.arange(len(parent))):
            per_root[int(r)] = int(best[r])
    return per_root, max(per_root.values(), default=0)
