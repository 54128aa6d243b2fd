"""Random graph models: preferential attachment, fixed-size Erdos-Renyi and
the configuration model for a fixed degree sequence.

All randomness comes from ``numpy.random.PCG64`` seeded through
``numpy.random.SeedSequence((seed, *path))``, so a given :class:`RngStream`
reproduces the same graph on every run.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InputError, NotGraphicalError
from .graph import Graph
from .paths import havel_hakimi_edges, is_graphical

log = logging.getLogger(__name__)

RNG_ALGORITHM = "numpy PCG64 via SeedSequence((seed, *path))"


@dataclass(frozen=True)
class RngStream:
    seed: int
    path: tuple[int, ...] = ()

    algorithm = RNG_ALGORITHM

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence((self.seed, *self.path))))

    def spawn(self, index: int) -> RngStream:
        """Independent child stream, e.g. one per sample index."""
        return RngStream(self.seed, self.path + (index,))


RngLike = Union[RngStream, int, np.random.Generator, None]


def as_generator(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngStream):
        return rng.generator()
    return RngStream(0 if rng is None else int(rng)).generator()


def gen_ba(n: int, m: int = 1, rng: RngLike = None) -> Graph:
    """Barabasi-Albert graph grown from a complete graph on ``m + 1`` vertices."""
    if not n > m >= 1:
        raise InputError(f"preferential attachment needs n > m >= 1 (got n={n}, m={m})")
    gen = as_generator(rng)
    edges = [(u, v) for u in range(m + 1) for v in range(u + 1, m + 1)]
    # each vertex appears once per incident edge
    stubs = [v for e in edges for v in e]
    for v in range(m + 1, n):
        chosen: list[int] = []
        while len(chosen) < m:
            t = stubs[int(gen.integers(len(stubs)))]
            if t not in chosen:
                chosen.append(t)
        for t in chosen:
            edges.append((t, v))
            stubs.append(t)
            stubs.append(v)
    return Graph(n, edges)


def _decode_pairs(index: np.ndarray, n: int) -> np.ndarray:
    rows = np.arange(n, dtype=np.int64)
    offsets = rows * (2 * n - rows - 1) // 2
    i = np.searchsorted(offsets, index, side="right") - 1
    j = index - offsets[i] + i + 1
    return np.stack([i, j], axis=1)


def gen_er_gnm(n: int, m_edges: int, rng: RngLike = None) -> Graph:
    """Uniform graph with exactly ``m_edges`` edges."""
    pairs = n * (n - 1) // 2
    if not 0 <= m_edges <= pairs:
        raise InputError(f"edge count {m_edges} outside 0..{pairs}")
    gen = as_generator(rng)
    idx = gen.choice(pairs, size=m_edges, replace=False)
    idx = np.sort(np.asarray(idx, dtype=np.int64))
    return Graph(n, _decode_pairs(idx, n).tolist())


def _stub_match(degrees: np.ndarray, gen: np.random.Generator) -> list[tuple[int, int]] | None:
    stubs = np.repeat(np.arange(len(degrees)), degrees)
    gen.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    if (pairs[:, 0] == pairs[:, 1]).any():
        return None
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    keys = lo * len(degrees) + hi
    if np.unique(keys).size != keys.size:
        return None
    return list(zip(lo.tolist(), hi.tolist()))


def double_edge_swap(n: int, edges: list[tuple[int, int]], swaps: int,
                     gen: np.random.Generator, max_tries: int | None = None) -> list[tuple[int, int]]:
    """Degree-preserving randomization; returns the edge list after
    ``swaps`` accepted simple-graph-preserving swaps (or ``max_tries``)."""
    edges = [tuple(e) for e in edges]
    present = set(edges)
    if len(edges) < 2:
        return sorted(edges)
    max_tries = 100 * swaps if max_tries is None else max_tries
    done = tries = 0
    while done < swaps and tries < max_tries:
        tries += 1
        a, b = gen.choice(len(edges), size=2, replace=False)
        u, v = edges[a]
        x, y = edges[b]
        if gen.random() < 0.5:
            x, y = y, x
        if len({u, v, x, y}) < 4:
            continue
        e1 = (min(u, y), max(u, y))
        e2 = (min(x, v), max(x, v))
        if e1 in present or e2 in present:
            continue
        present.difference_update((edges[a], edges[b]))
        present.update((e1, e2))
        edges[a], edges[b] = e1, e2
        done += 1
    if done < swaps:
        log.warning("edge swap stopped after %d of %d accepted swaps", done, swaps)
    return sorted(edges)


def gen_config_uniform(d: Sequence[int], rng: RngLike = None, max_retries: int = 100) -> Graph:
    """Simple graph with degree sequence ``d``.

    Stub matching with rejection gives an exactly uniform sample; after
    ``max_retries`` rejections a Havel-Hakimi graph is randomized with
    ``10 * |E|`` double-edge swaps, which is only approximately uniform.
    """
    degrees = np.asarray(d, dtype=np.int64)
    if not is_graphical(degrees.tolist()):
        raise NotGraphicalError("degree sequence is not graphical")
    n = len(degrees)
    gen = as_generator(rng)
    for _ in range(max_retries):
        edges = _stub_match(degrees, gen)
        if edges is not None:
            return Graph(n, edges)
    edges = havel_hakimi_edges(degrees)
    edges = double_edge_swap(n, edges, 10 * len(edges), gen)
    return Graph(n, edges)
