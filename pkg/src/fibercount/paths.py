"""Ordered edge sets whose prefix graphs walk from the empty graph to a target.

Each construction returns an :class:`EdgePath`; adding its edges one at a
time produces graphs ``g_0 (empty), g_1, ..., g_k`` with ``g_k`` realizing
the requested property value.  Ties are always broken by lowest vertex index
so paths are reproducible.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator

import numpy as np

from .errors import InputError, NotGraphicalError
from .graph import (
    CovariateAssignment,
    DegreeDistribution,
    Edge,
    Graph,
    degree_distribution,
    degree_mixing_matrix,
    mixing_matrix,
    trim_dmm,
)

KINDS = ("edges", "degree_distribution", "mixing", "degree_mixing")


class InfeasibleError(NotGraphicalError):
    """A mixing-matrix block asks for more pairs than exist."""


@dataclass
class EdgePath:
    n: int
    ordered_edges: list[Edge]
    property_kind: str
    target: Any = None
    covariates: CovariateAssignment | None = None
    # final degree label per vertex (degree paths only)
    final_degrees: list[int] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.ordered_edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.ordered_edges)


@dataclass(frozen=True)
class PathCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _edge(u: int, v: int) -> Edge:
    u, v = int(u), int(v)
    return (u, v) if u < v else (v, u)


def edge_count_path(n: int, x: int) -> EdgePath:
    total = n * (n - 1) // 2
    if not 0 <= x <= total:
        raise InputError(f"edge count {x} outside 0..{total}")
    edges = list(itertools.islice(itertools.combinations(range(n), 2), x))
    return EdgePath(n, edges, "edges", target=x)


def havel_hakimi_edges(residual) -> list[Edge]:
    """Havel-Hakimi construction on a residual degree list.

    Repeatedly zero the vertex of largest residual and join it to the next
    ``l`` largest.  Raises ``NotGraphicalError`` when a residual would go
    negative.
    """
    s = np.array(residual, dtype=np.int64)
    if s.size and s.min() < 0:
        raise NotGraphicalError("negative degree")
    edges: list[Edge] = []
    while s.size:
        order = np.argsort(-s, kind="stable")
        v = int(order[0])
        l = int(s[v])
        if l == 0:
            break
        s[v] = 0
        targets = order[1:l + 1]
        if len(targets) < l or s[targets[-1]] <= 0:
            raise NotGraphicalError(f"vertex {v} needs {l} partners, too few remain")
        s[targets] -= 1
        edges.extend(_edge(v, t) for t in targets)
    return edges


def is_graphical(degrees) -> bool:
    """Erdos-Gallai test."""
    d = np.sort(np.asarray(degrees, dtype=np.int64))[::-1]
    n = d.size
    if n == 0:
        return True
    if d[-1] < 0 or d[0] >= n or int(d.sum()) % 2:
        return False
    cs = np.concatenate([[0], np.cumsum(d)])
    k = np.arange(1, n + 1)
    # p[k-1] = number of degrees >= k
    p = np.searchsorted(-d, -k, side="right")
    split = np.maximum(k, p)
    rhs = k * (k - 1) + k * np.maximum(0, p - k) + (cs[n] - cs[split])
    return bool((cs[1:] <= rhs).all())


def havel_hakimi_path(D: DegreeDistribution) -> EdgePath:
    n = D.n
    if any(c and k >= n for k, c in enumerate(D.counts)):
        raise NotGraphicalError("a degree is at least the vertex count")
    if D.num_stubs % 2:
        raise NotGraphicalError("degree sum is odd")
    seq = D.to_sequence()
    return EdgePath(n, havel_hakimi_edges(seq), "degree_distribution", target=D,
                    final_degrees=seq)


def _check_symmetric(mat: np.ndarray, what: str) -> np.ndarray:
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise InputError(f"{what} must be square")
    if not np.array_equal(mat, mat.T):
        raise InputError(f"{what} must be symmetric")
    if (mat < 0).any():
        raise InputError(f"{what} entries must be nonnegative")
    return mat.astype(np.int64)


def mixing_blocks(q: int) -> list[tuple[int, int]]:
    """Block order (0-based): (0,0), (0,1), ..., (0,q-1), (1,1), ..."""
    return [(k, l) for k in range(q) for l in range(k, q)]


def _block_pairs(members: list[list[int]], k: int, l: int) -> Iterator[Edge]:
    if k == l:
        yield from itertools.combinations(members[k], 2)
        return
    mk, ml = set(members[k]), set(members[l])
    union = sorted(mk | ml)
    for i, u in enumerate(union):
        other = ml if u in mk else mk
        for v in union[i + 1:]:
            if v in other:
                yield (u, v)


def check_mixing(counts, mm: np.ndarray) -> np.ndarray:
    mm = _check_symmetric(mm, "mixing matrix")
    q = len(counts)
    if mm.shape != (q, q):
        raise InputError(f"mixing matrix must be {q}x{q}")
    for k, l in mixing_blocks(q):
        cap = counts[k] * (counts[k] - 1) // 2 if k == l else counts[k] * counts[l]
        if mm[k, l] > cap:
            raise InfeasibleError(
                f"block ({k + 1},{l + 1}) needs {mm[k, l]} edges but only {cap} pairs exist")
    return mm


def mixing_path(a: CovariateAssignment, mm) -> EdgePath:
    mm = check_mixing(a.counts, mm)
    members: list[list[int]] = [[] for _ in range(a.q)]
    for v, lab in enumerate(a.labels):
        members[lab - 1].append(v)
    edges: list[Edge] = []
    for k, l in mixing_blocks(a.q):
        want = int(mm[k, l])
        if want:
            edges.extend(itertools.islice(_block_pairs(members, k, l), want))
    return EdgePath(a.n, edges, "mixing", target=mm, covariates=a)


def implied_degree_counts(dmm, n: int) -> list[int]:
    """Vertex count per degree implied by a degree mixing matrix.

    Degree ``j >= 1`` holds ``(column sum + diagonal) / j`` vertices; the
    isolated vertices are whatever is left of ``n``.
    """
    dmm = _check_symmetric(dmm, "degree mixing matrix")
    if dmm.size and (dmm[0].any()):
        raise NotGraphicalError("degree-0 vertices cannot carry edges")
    size = dmm.shape[0]
    counts = [0] * max(size, 1)
    for j in range(1, size):
        stubs = int(dmm[:, j].sum() + dmm[j, j])
        if stubs % j:
            raise NotGraphicalError(f"degree-{j} stubs ({stubs}) not divisible by {j}")
        counts[j] = stubs // j
    used = sum(counts)
    if used > n:
        raise NotGraphicalError(f"matrix needs {used} non-isolated vertices, n={n}")
    counts[0] = n - used
    if size > n and any(counts[n:]):
        raise NotGraphicalError("a degree is at least the vertex count")
    return counts


def check_degree_mixing(dmm, n: int) -> tuple[np.ndarray, list[int]]:
    dmm = trim_dmm(_check_symmetric(dmm, "degree mixing matrix"))
    counts = implied_degree_counts(dmm, n)
    size = dmm.shape[0]
    for j in range(1, size):
        if dmm[j, j] > counts[j] * (counts[j] - 1) // 2:
            raise NotGraphicalError(f"too many edges inside degree class {j}")
        for i in range(j + 1, size):
            if dmm[j, i] > counts[j] * counts[i]:
                raise NotGraphicalError(f"too many edges between degree classes {j} and {i}")
    return dmm, counts


def _spread(total: int, parts: int) -> np.ndarray:
    """Tabulate ``0..total-1 mod parts``: near-equal shares, larger first."""
    if parts == 0:
        return np.zeros(0, dtype=np.int64)
    return np.bincount(np.arange(total) % parts, minlength=parts).astype(np.int64)


def degree_mixing_path(dmm, n: int) -> EdgePath:
    """Edge order realizing a degree mixing matrix.

    Vertices are laid out by ascending final degree.  Edges inside each
    degree class come first (class by class, stubs spread evenly and joined
    by Havel-Hakimi), then edges between classes ``j < i``: each class-``j``
    vertex, least-filled first, takes its share and links to the least
    filled class-``i`` vertices.
    """
    dmm, counts = check_degree_mixing(dmm, n)
    size = dmm.shape[0]
    final = [k for k, c in enumerate(counts) for _ in range(c)]
    start = list(itertools.accumulate([0] + counts))
    current = np.zeros(n, dtype=np.int64)
    edges: list[Edge] = []

    for j in range(1, size):
        if not dmm[j, j]:
            continue
        share = _spread(2 * int(dmm[j, j]), counts[j])
        local = havel_hakimi_edges(share)
        off = start[j]
        edges.extend((u + off, v + off) for u, v in local)
        current[off:off + counts[j]] += share

    for j in range(1, size):
        members_j = range(start[j], start[j] + counts[j])
        for i in range(j + 1, size):
            want = int(dmm[j, i])
            if not want:
                continue
            share = _spread(want, counts[j])
            order = sorted(members_j, key=lambda v: (current[v], v))
            heap = [(int(current[w]), w) for w in range(start[i], start[i] + counts[i])]
            heapq.heapify(heap)
            for v, t in zip(order, share.tolist()):
                if t == 0:
                    break
                if current[v] + t > j:
                    raise NotGraphicalError(
                        f"vertex {v} in degree class {j} would exceed its degree")
                picked = []
                for _ in range(t):
                    if not heap or heap[0][0] >= i:
                        raise NotGraphicalError(
                            f"degree class {i} exhausted while linking class {j}")
                    picked.append(heapq.heappop(heap))
                # pops come out by (current, index), the min-first selection
                for c, w in picked:
                    current[v] += 1
                    current[w] += 1
                    edges.append(_edge(v, w))
                    heapq.heappush(heap, (c + 1, w))

    if current.tolist() != final:
        raise NotGraphicalError("construction did not reach the implied degrees")
    return EdgePath(n, edges, "degree_mixing", target=dmm, final_degrees=final)


def verify_path(path: EdgePath, phi: str | None = None) -> PathCheck:
    """Check that prefixes are simple graphs growing one edge at a time and
    that the full graph has the declared target value."""
    kind = phi or path.property_kind
    if kind != path.property_kind:
        return PathCheck(False, f"path built for {path.property_kind}, not {kind}")
    seen: set[Edge] = set()
    for step, (u, v) in enumerate(path.ordered_edges, 1):
        if u == v:
            return PathCheck(False, f"step {step}: self-loop at {u}")
        if not (0 <= u < path.n and 0 <= v < path.n):
            return PathCheck(False, f"step {step}: vertex out of range")
        e = _edge(u, v)
        if e in seen:
            return PathCheck(False, f"step {step}: edge {e} repeated")
        seen.add(e)
    g = Graph(path.n, seen)
    target = path.target
    if target is None:
        return PathCheck(True, "no target declared")
    if kind == "edges":
        ok = g.num_edges == target
    elif kind == "degree_distribution":
        ok = degree_distribution(g).as_dict() == target.as_dict()
    elif kind == "mixing":
        ok = np.array_equal(mixing_matrix(g, path.covariates), target)
    elif kind == "degree_mixing":
        ok = np.array_equal(trim_dmm(degree_mixing_matrix(g)), trim_dmm(target))
    else:
        return PathCheck(False, f"unknown property kind {kind!r}")
    return PathCheck(ok, "" if ok else "final graph does not match the target")
