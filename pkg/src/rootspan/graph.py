"""Edge-list ingestion, CSR construction and synthetic graph generators."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

COMMENT_CHARS = ("#", "%")


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input."""


@dataclass(frozen=True)
class EdgeList:
    """Normalized undirected edge set.

    ``edges`` is an ``(m, 2)`` int64 array with ``u < v`` per row, rows sorted
    and unique. ``id_map[i]`` is the external id of dense vertex ``i`` when the
    list came from a remapped source, otherwise ``None``.
    """

    num_vertices: int
    edges: np.ndarray
    id_map: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.num_vertices < 0:
            raise ValueError("num_vertices must be nonnegative")
        if self.edges.ndim != 2 or self.edges.shape[1] != 2:
            raise ValueError("edges must have shape (m, 2)")
        if self.edges.size and (self.edges.min() < 0 or self.edges.max() >= self.num_vertices):
            raise ValueError("vertex id out of range")

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    def __eq__(self, other):
        if not isinstance(other, EdgeList):
            return NotImplemented
        return self.num_vertices == other.num_vertices and np.array_equal(self.edges, other.edges)


def normalize_edges(pairs, num_vertices: int) -> EdgeList:
    """Drop self-loops, orient every pair as ``(min, max)``, sort and dedupe."""
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    arr = arr[arr[:, 0] != arr[:, 1]]
    arr = np.sort(arr, axis=1)
    if arr.shape[0]:
        arr = np.unique(arr, axis=0)
    return EdgeList(num_vertices, np.ascontiguousarray(arr))


def load_edge_list(stream: TextIO | str | Iterable[str], remap: bool = True) -> EdgeList:
    """Parse whitespace-separated ``u v`` lines.

    Lines starting with ``#`` or ``%`` are comments. If a ``%%`` header was
    seen, a leading three-token data line is taken as a Matrix Market size
    line and skipped. With ``remap`` the distinct ids are mapped to
    ``0..k-1`` by sorted order; for already dense ids this is the identity.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    saw_mm_header = False
    first_data = True
    raw: list[tuple[int, int]] = []
    for lineno, line in enumerate(stream, start=1):
        text = line.strip()
        if not text:
            continue
        if text.startswith(COMMENT_CHARS):
            if text.startswith("%%"):
                saw_mm_header = True
            continue
        tokens = text.split()
        if first_data and saw_mm_header and len(tokens) == 3:
            first_data = False
            continue
        first_data = False
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected 2 tokens, got {len(tokens)}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {text!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex id")
        raw.append((u, v))
    if not raw:
        raise GraphFormatError("empty edge list")

    arr = np.asarray(raw, dtype=np.int64)
    if remap:
        ids, dense = np.unique(arr, return_inverse=True)
        arr = dense.reshape(-1, 2)
        el = normalize_edges(arr, len(ids))
        return EdgeList(el.num_vertices, el.edges, id_map=ids)
    return normalize_edges(arr, int(arr.max()) + 1)


def read_edge_list(path, remap: bool = True) -> EdgeList:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh, remap=remap)


def format_edge_list(edges) -> str:
    """Render pairs in the ingestion format, one ``u v`` per line."""
    arr = np.asarray(edges.edges if isinstance(edges, (EdgeList, Graph)) else edges, dtype=np.int64)
    return "".join(f"{u} {v}\n" for u, v in arr.reshape(-1, 2))


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph in CSR form.

    Every undirected edge ``i`` shows up as two arcs; ``edge_origin[a]`` gives
    the undirected index of arc ``a``. Neighbor ranges are sorted ascending.
    """

    n: int
    m: int
    offsets: np.ndarray
    neighbors: np.ndarray
    edge_origin: np.ndarray
    edges: np.ndarray

    def degree(self) -> np.ndarray:
        return np.diff(self.offsets)

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def arc_sources(self) -> np.ndarray:
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degree())

    def to_edge_list(self) -> EdgeList:
        return EdgeList(self.n, self.edges.copy())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.neighbors, other.neighbors)
            and np.array_equal(self.edge_origin, other.edge_origin)
        )

    __hash__ = None


def build_csr(el: EdgeList) -> Graph:
    n, m = el.num_vertices, el.m
    u, v = el.edges[:, 0], el.edges[:, 1]
    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    origin = np.concatenate([np.arange(m), np.arange(m)]).astype(np.int64)
    order = np.lexsort((dst, src))
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    neighbors = np.ascontiguousarray(dst[order])
    edge_origin = np.ascontiguousarray(origin[order])
    edges = el.edges.copy()
    for arr in (offsets, neighbors, edge_origin, edges):
        arr.setflags(write=False)
    return Graph(n, m, offsets, neighbors, edge_origin, edges)


def check_graph(g: Graph) -> list[str]:
    """Return the list of violated CSR invariants (empty when sound)."""
    problems = []
    if len(g.offsets) != g.n + 1:
        problems.append("offsets length != n+1")
        return problems
    if g.offsets[0] != 0 or g.offsets[-1] != 2 * g.m:
        problems.append("offsets endpoints")
    if np.any(np.diff(g.offsets) < 0):
        problems.append("offsets decreasing")
    src = g.arc_sources()
    dst = g.neighbors
    if len(dst) and np.any(dst[1:][src[1:] == src[:-1]] <= dst[:-1][src[1:] == src[:-1]]):
        problems.append("neighbors not strictly ascending")
    fwd = np.sort(src * max(g.n, 1) + dst)
    bwd = np.sort(dst * max(g.n, 1) + src)
    if not np.array_equal(fwd, bwd):
        problems.append("adjacency not symmetric")
    if len(dst):
        e = g.edges[g.edge_origin]
        lo, hi = np.minimum(src, dst), np.maximum(src, dst)
        if not (np.array_equal(e[:, 0], lo) and np.array_equal(e[:, 1], hi)):
            problems.append("edge_origin mismatch")
    return problems


# ---------------------------------------------------------------- generators

def _require_positive(**dims):
    for name, value in dims.items():
        if value < 1:
            raise ValueError(f"{name} must be >= 1, got {value}")


def path_graph(n: int) -> EdgeList:
    _require_positive(n=n)
    a = np.arange(n - 1, dtype=np.int64)
    return EdgeList(n, np.stack([a, a + 1], axis=1))


def star_graph(n: int) -> EdgeList:
    _require_positive(n=n)
    leaves = np.arange(1, n, dtype=np.int64)
    return EdgeList(n, np.stack([np.zeros_like(leaves), leaves], axis=1))


def grid_graph(rows: int, cols: int) -> EdgeList:
    _require_positive(rows=rows, cols=cols)
    ids = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols)
    horiz = np.stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()], axis=1)
    vert = np.stack([ids[:-1, :].ravel(), ids[1:, :].ravel()], axis=1)
    return normalize_edges(np.concatenate([horiz, vert]), rows * cols)


def complete_graph(n: int) -> EdgeList:
    _require_positive(n=n)
    i, j = np.triu_indices(n, k=1)
    return EdgeList(n, np.stack([i, j], axis=1).astype(np.int64))


def random_graph(n: int, p: float, seed: int = 0) -> EdgeList:
    """Erdos-Renyi G(n, p) via geometric skipping over the upper triangle."""
    _require_positive(n=n)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return EdgeList(n, np.empty((0, 2), dtype=np.int64))
    rng = np.random.default_rng(seed)
    chunks = []
    pos = -1
    expected = total * p
    while True:
        batch = int(expected + 5 * math.sqrt(expected) + 16)
        cum = pos + np.cumsum(rng.geometric(p, size=batch))
        chunks.append(cum[cum < total])
        if cum[-1] >= total:
            break
        pos = int(cum[-1])
    lin = np.concatenate(chunks)
    # row i of the upper triangle starts at i*(2n-i-1)/2
    rows = np.arange(n, dtype=np.int64)
    starts = rows * (2 * n - rows - 1) // 2
    i = np.searchsorted(starts, lin, side="right") - 1
    j = lin - starts[i] + i + 1
    return EdgeList(n, np.stack([i, j], axis=1).astype(np.int64))


GENERATORS = {
    "path": path_graph,
    "star": star_graph,
    "grid": grid_graph,
    "random": random_graph,
    "complete": complete_graph,
}


def generate(kind: str, *params, seed: int | None = None) -> EdgeList:
    """Build a synthetic graph, e.g. ``generate("grid", 3, 4)``.

    For ``random`` the seed may be given positionally or via ``seed``.
    """
    if kind not in GENERATORS:
        raise ValueError(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}")
    if kind == "random":
        if len(params) not in (2, 3):
            raise ValueError("random expects n, p[, seed]")
        n, p = int(params[0]), float(params[1])
        s = int(params[2]) if len(params) == 3 else (seed if seed is not None else 0)
        return random_graph(n, p, s)
    arity = 2 if kind == "grid" else 1
    if len(params) != arity:
        raise ValueError(f"{kind} expects {arity} integer parameter(s)")
    return GENERATORS[kind](*(int(x) for x in params))


def disjoint_union(*lists: EdgeList) -> EdgeList:
    shift = 0
    parts = []
    for el in lists:
        parts.append(el.edges + shift)
        shift += el.num_vertices
    return normalize_edges(np.concatenate(parts) if parts else np.empty((0, 2)), shift)
