"""Labeled simple graphs and the property maps whose fibers are counted.

Vertices are ``0 .. n-1``.  Mixing matrices are plain square ``numpy``
integer arrays; a degree mixing matrix is indexed by degree and sized to the
largest degree that carries an edge, so lookups past its edge read as 0.
"""

from __future__ import annotations

import io
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InputError

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable labeled simple undirected graph."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        seen: set[Edge] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            p = _norm(u, v)
            if p in seen:
                raise InputError(f"duplicate edge {p}")
            seen.add(p)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(frozenset(a) for a in adj)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={len(self.edges)})"


@dataclass(frozen=True)
class DegreeDistribution:
    """Vertex counts per degree: ``counts[k]`` vertices have degree ``k``."""

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if any(c < 0 for c in self.counts):
            raise InputError("degree counts must be nonnegative")

    @classmethod
    def from_sequence(cls, degrees: Sequence[int]) -> DegreeDistribution:
        n = len(degrees)
        counts = [0] * max(n, 1)
        for d in degrees:
            if d < 0 or d >= max(n, 1):
                raise InputError(f"degree {d} impossible with {n} vertices")
            counts[d] += 1
        return cls(tuple(counts[:n]))

    @classmethod
    def from_mapping(cls, n: int, counts: Mapping[int, int]) -> DegreeDistribution:
        out = [0] * n
        for k, c in counts.items():
            if not 0 <= k < n:
                raise InputError(f"degree {k} impossible with {n} vertices")
            out[k] = c
        if sum(out) != n:
            raise InputError("degree counts must sum to n")
        return cls(tuple(out))

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def num_stubs(self) -> int:
        return sum(k * c for k, c in enumerate(self.counts))

    def __getitem__(self, k: int) -> int:
        return self.counts[k] if 0 <= k < len(self.counts) else 0

    def as_dict(self) -> dict[int, int]:
        return {k: c for k, c in enumerate(self.counts) if c}

    def to_sequence(self) -> list[int]:
        """Degrees in ascending order, ``k`` repeated ``counts[k]`` times."""
        return [k for k, c in enumerate(self.counts) for _ in range(c)]

    def check(self) -> None:
        """Raise ``InputError`` unless the basic invariants hold."""
        n = self.n
        if any(c and k >= n for k, c in enumerate(self.counts)):
            raise InputError("a degree is at least the vertex count")
        if self.num_stubs % 2:
            raise InputError("degree sum is odd")


@dataclass(frozen=True)
class CovariateAssignment:
    """Category label in ``1..q`` for every vertex."""

    labels: tuple[int, ...]
    q: int = field(default=0)

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        q = self.q or (max(labels) if labels else 0)
        object.__setattr__(self, "q", q)
        for x in labels:
            if not 1 <= x <= q:
                raise InputError(f"category label {x} outside 1..{q}")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def counts(self) -> tuple[int, ...]:
        c = Counter(self.labels)
        return tuple(c.get(k, 0) for k in range(1, self.q + 1))


def phi_edges(g: Graph) -> int:
    return g.num_edges


def degree_sequence(g: Graph) -> tuple[int, ...]:
    return tuple(len(g.neighbors(v)) for v in range(g.n))


def degree_distribution(g: Graph) -> DegreeDistribution:
    return DegreeDistribution.from_sequence(degree_sequence(g))


def mixing_matrix(g: Graph, a: CovariateAssignment) -> np.ndarray:
    """``q x q`` symmetric count of edges between categories (0-based rows)."""
    if a.n != g.n:
        raise InputError(f"covariate assignment has {a.n} labels, graph has {g.n} vertices")
    mm = np.zeros((a.q, a.q), dtype=np.int64)
    for u, v in g.edges:
        k, l = a.labels[u] - 1, a.labels[v] - 1
        mm[k, l] += 1
        if k != l:
            mm[l, k] += 1
    return mm


def degree_mixing_matrix(g: Graph) -> np.ndarray:
    deg = degree_sequence(g)
    size = max((deg[u] for e in g.edges for u in e), default=0) + 1
    dmm = np.zeros((size, size), dtype=np.int64)
    for u, v in g.edges:
        a, b = deg[u], deg[v]
        dmm[a, b] += 1
        if a != b:
            dmm[b, a] += 1
    return dmm


def neighbor_degree_counts(g: Graph, v: int, z: int) -> int:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range")
    return sum(1 for u in g.neighbors(v) if len(g.neighbors(u)) == z)


def dmm_entry(dmm: np.ndarray, k: int, l: int) -> int:
    if k < dmm.shape[0] and l < dmm.shape[1]:
        return int(dmm[k, l])
    return 0


def dmm_from_entries(entries: Iterable[Sequence[int]]) -> np.ndarray:
    """Build a symmetric matrix from ``(k, l, count)`` triples."""
    triples = [(int(k), int(l), int(c)) for k, l, c in entries]
    size = max((max(k, l) for k, l, c in triples if c), default=0) + 1
    dmm = np.zeros((size, size), dtype=np.int64)
    for k, l, c in triples:
        if c == 0:
            continue
        if k >= size or l >= size:
            continue
        dmm[k, l] = c
        dmm[l, k] = c
    return dmm


def dmm_entries(dmm: np.ndarray) -> list[tuple[int, int, int]]:
    """Nonzero upper-triangle ``(k, l, count)`` triples in lexicographic order."""
    out = []
    rows, cols = np.nonzero(np.triu(dmm))
    for k, l in zip(rows.tolist(), cols.tolist()):
        out.append((k, l, int(dmm[k, l])))
    return out


def trim_dmm(dmm: np.ndarray) -> np.ndarray:
    """Drop trailing all-zero degree classes."""
    dmm = np.asarray(dmm, dtype=np.int64)
    nz = np.nonzero(dmm.any(axis=0))[0]
    size = int(nz[-1]) + 1 if nz.size else 1
    return dmm[:size, :size].copy()


def upper_edge_total(mat: np.ndarray) -> int:
    return int(np.triu(mat).sum())


class GraphBuilder:
    """Mutable graph grown one edge at a time.

    Keeps degrees, the degree distribution and, when ``track_dmm`` is set,
    the degree mixing matrix current in O(degree) per insertion.
    """

    def __init__(self, n: int, track_dmm: bool = False):
        self.n = n
        self.degree = [0] * n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.dist: Counter[int] = Counter({0: n}) if n else Counter()
        self.track_dmm = track_dmm
        # keys may linger with a zero count
        self.dmm: Counter[tuple[int, int]] = Counter()
        self.edges: list[Edge] = []

    def _touch(self, v: int, sign: int, skip: int = -1) -> None:
        dv = self.degree[v]
        for w in self.adj[v]:
            if w == skip:
                continue
            self.dmm[_norm(dv, self.degree[w])] += sign

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        if v in self.adj[u]:
            raise InputError(f"duplicate edge {_norm(u, v)}")
        if self.track_dmm:
            self._touch(u, -1)
            self._touch(v, -1)
        for x in (u, v):
            d = self.degree[x]
            self.dist[d] -= 1
            if not self.dist[d]:
                del self.dist[d]
            self.dist[d + 1] += 1
            self.degree[x] = d + 1
        self.adj[u].add(v)
        self.adj[v].add(u)
        if self.track_dmm:
            self._touch(u, 1)
            self._touch(v, 1, skip=u)
        self.edges.append(_norm(u, v))

    def dmm_value(self, a: int, b: int) -> int:
        return self.dmm.get(_norm(a, b), 0)

    def neighbor_degrees(self, v: int) -> Counter[int]:
        return Counter(self.degree[w] for w in self.adj[v])

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def _text(source) -> str:
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source) as fh:
            return fh.read()
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        return source.read()
    return str(source)


def parse_edge_list(text: str, ordered: bool = False) -> tuple[int, list[Edge]]:
    """Parse ``n <count>`` followed by ``i j`` lines; return ``(n, edges)``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError("empty edge list")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise InputError("edge list must start with 'n <vertex-count>'")
    try:
        n = int(head[1])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise InputError(f"bad edge line: {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise InputError(f"edge list: {exc}") from None
    if not ordered:
        edges = [_norm(u, v) for u, v in edges]
    return n, edges


def read_edge_list(source) -> Graph:
    n, edges = parse_edge_list(_text(source))
    return Graph(n, edges)


def format_edge_list(n: int, edges: Iterable[Sequence[int]]) -> str:
    out = [f"n {n}"]
    out.extend(f"{min(u, v)} {max(u, v)}" for u, v in edges)
    return "\n".join(out) + "\n"


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(g.n, g.edges))


def read_covariates(source, q: int = 0) -> CovariateAssignment:
    labels = []
    for ln in _text(source).splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        try:
            labels.append(int(ln))
        except ValueError:
            raise InputError(f"bad covariate label {ln!r}") from None
    return CovariateAssignment(tuple(labels), q)
