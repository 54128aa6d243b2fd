"""Exact fiber sizes by enumerating every labeled graph on n <= 7 vertices.

Graphs are bitmasks over the ``C(n, 2)`` vertex pairs in lexicographic
order and are processed in vectorized chunks; per-chunk tallies are merged,
so the chunking never changes the result.  Property values are keyed by a
canonical text encoding (see :func:`encode_value`).
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import InputError, OracleSizeError
from .graph import CovariateAssignment, DegreeDistribution

MAX_N = 7
CHUNK = 1 << 17
PROPERTIES = ("edges", "degree_sequence", "degree_distribution", "mixing", "degree_mixing")


@dataclass
class FiberTable:
    property_kind: str
    n: int
    counts: dict[str, int]
    covariates: CovariateAssignment | None = field(default=None, repr=False)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> str:
        doc = {"property": self.property_kind, "n": self.n,
               "counts": dict(sorted(self.counts.items()))}
        if self.covariates is not None:
            doc["covariates"] = list(self.covariates.labels)
        return json.dumps(doc, indent=1, sort_keys=True)


def _triples(entries) -> str:
    return ";".join(f"{k}-{l}:{c}" for k, l, c in entries if c)


def encode_value(kind: str, value: Any, n: int) -> str:
    """Canonical text key for a property value."""
    if kind == "edges":
        return str(int(value))
    if kind == "degree_sequence":
        return ",".join(str(int(x)) for x in value)
    if kind == "degree_distribution":
        counts = list(value.counts) if isinstance(value, DegreeDistribution) else list(value)
        counts = counts + [0] * (n - len(counts))
        if any(counts[n:]):
            return "impossible"
        return ",".join(str(int(c)) for c in counts[:n])
    if kind in ("mixing", "degree_mixing"):
        mat = np.asarray(value)
        base = 1 if kind == "mixing" else 0
        rows, cols = np.nonzero(np.triu(mat))
        return _triples((k + base, l + base, int(mat[k, l]))
                        for k, l in zip(rows.tolist(), cols.tolist()))
    raise InputError(f"unknown property {kind!r}")


def decode_key(kind: str, key: str, n: int, q: int = 0) -> Any:
    """Inverse of :func:`encode_value` (matrices come back as arrays)."""
    if kind == "edges":
        return int(key)
    if kind == "degree_sequence":
        return tuple(int(x) for x in key.split(",")) if key else ()
    if kind == "degree_distribution":
        return DegreeDistribution(tuple(int(x) for x in key.split(",")))
    size = q if kind == "mixing" else n
    base = 1 if kind == "mixing" else 0
    mat = np.zeros((size, size), dtype=np.int64)
    for part in filter(None, key.split(";")):
        kl, c = part.split(":")
        k, l = (int(x) - base for x in kl.split("-"))
        mat[k, l] = mat[l, k] = int(c)
    return mat


def _pair_index(size: int) -> np.ndarray:
    idx = np.zeros((size, size), dtype=np.int64)
    for p, (a, b) in enumerate(itertools.combinations_with_replacement(range(size), 2)):
        idx[a, b] = idx[b, a] = p
    return idx


def _tally_rows(rows: np.ndarray, into: Counter) -> None:
    uniq, cnt = np.unique(rows, axis=0, return_counts=True)
    for r, c in zip(uniq, cnt.tolist()):
        into[tuple(r.tolist())] += c


def enumerate_fibers(n: int, phi: str, a: CovariateAssignment | None = None) -> FiberTable:
    if not 0 <= n <= MAX_N:
        raise OracleSizeError(f"exhaustive enumeration supports n <= {MAX_N}, got {n}")
    if phi not in PROPERTIES:
        raise InputError(f"unknown property {phi!r}")
    if phi == "mixing":
        if a is None or a.n != n:
            raise InputError("mixing enumeration needs a covariate assignment of length n")
    slots = list(itertools.combinations(range(n), 2))
    total = 1 << len(slots)
    tally: Counter = Counter()

    if phi == "mixing":
        q = a.q
        cat_idx = _pair_index(q)
        slot_pair = [cat_idx[a.labels[u] - 1, a.labels[v] - 1] for u, v in slots]
        width = q * (q + 1) // 2
    elif phi == "degree_mixing":
        deg_idx = _pair_index(max(n, 1))
        width = deg_idx.max() + 1

    for start in range(0, total, CHUNK):
        masks = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        m = masks.size
        bits = [((masks >> s) & 1).astype(np.int64) for s in range(len(slots))]
        if phi == "edges":
            pop = np.sum(bits, axis=0) if bits else np.zeros(m, dtype=np.int64)
            for k, c in enumerate(np.bincount(pop).tolist()):
                if c:
                    tally[(k,)] += c
            continue
        if phi == "mixing":
            rows = np.zeros((m, width), dtype=np.int64)
            for s, p in enumerate(slot_pair):
                rows[:, p] += bits[s]
            _tally_rows(rows, tally)
            continue
        deg = np.zeros((m, n), dtype=np.int64)
        for s, (u, v) in enumerate(slots):
            deg[:, u] += bits[s]
            deg[:, v] += bits[s]
        if phi == "degree_sequence":
            _tally_rows(deg, tally)
        elif phi == "degree_distribution":
            dist = np.stack([(deg == k).sum(axis=1) for k in range(n)], axis=1)
            _tally_rows(dist, tally)
        else:
            rows = np.zeros((m, width), dtype=np.int64)
            ar = np.arange(m)
            for s, (u, v) in enumerate(slots):
                rows[ar, deg_idx[deg[:, u], deg[:, v]]] += bits[s]
            _tally_rows(rows, tally)

    counts: dict[str, int] = {}
    for key, c in tally.items():
        if phi == "edges":
            text = str(key[0])
        elif phi in ("degree_sequence", "degree_distribution"):
            text = ",".join(map(str, key))
        elif phi == "mixing":
            pairs = itertools.combinations_with_replacement(range(1, a.q + 1), 2)
            text = _triples((k, l, x) for (k, l), x in zip(pairs, key))
        else:
            pairs = itertools.combinations_with_replacement(range(n), 2)
            text = _triples((k, l, x) for (k, l), x in zip(pairs, key))
        counts[text] = counts.get(text, 0) + c
    return FiberTable(phi, n, counts, a if phi == "mixing" else None)


def exact_count(table: FiberTable, value: Any) -> int:
    if isinstance(value, str):
        key = value
    else:
        key = encode_value(table.property_kind, value, table.n)
    return table.counts.get(key, 0)
