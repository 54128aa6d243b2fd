"""Fiber-size estimates: multiply step ratios along a construction path.

Every path starts at the empty graph, whose fiber has exactly one member,
so ``ln |c(x_k)|`` is the sum of the log step ratios.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import EstimationError, FiberError, InputError
from .generators import RngStream, gen_config_uniform
from .graph import (
    CovariateAssignment,
    DegreeDistribution,
    GraphBuilder,
    degree_mixing_matrix,
    dmm_entries,
)
from .logspace import LogCount, log_binomial, log_prod
from .paths import (
    check_mixing,
    degree_mixing_path,
    edge_count_path,
    havel_hakimi_path,
    mixing_blocks,
    mixing_path,
)
from .ratios import (
    STANDARD,
    advance,
    log_ratio_degdist,
    log_ratio_degmix,
    ratio_edges,
    ratio_mixing,
)

log = logging.getLogger(__name__)

ROUNDING_SLACK = 1e-12


@dataclass
class FiberEstimate:
    property_kind: str
    target: Any
    log_count: LogCount
    path_length: int
    n: int
    # Newman normalization; None for properties that do not use it
    mode: str | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def ln_count(self) -> float:
        return self.log_count.ln_value

    @property
    def log10_count(self) -> float:
        return self.log_count.log10

    def to_record(self) -> dict:
        return {
            "property": self.property_kind,
            "n": self.n,
            "target_digest": target_digest(self.property_kind, self.target),
            "ln_count": self.ln_count,
            "log10_count": self.log10_count,
            "path_length": self.path_length,
            "mode": self.mode,
            "failures": list(self.failures),
        }


def canonical_target(kind: str, target: Any) -> Any:
    if kind == "edges":
        return int(target)
    if kind == "degree_distribution":
        return list(target.counts)
    if kind == "degree_sequence":
        return [int(x) for x in target]
    if kind == "mixing":
        a, mm = target
        return {"M": list(a.counts), "MM": np.asarray(mm).tolist()}
    if kind == "degree_mixing":
        return [list(t) for t in dmm_entries(np.asarray(target))]
    return target


def target_digest(kind: str, target: Any) -> str:
    blob = json.dumps(canonical_target(kind, target), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(f"{kind}:{blob}".encode()).hexdigest()[:16]


def _sum_logs(terms: list[float]) -> LogCount:
    return LogCount(math.fsum(terms))


def count_edges_fiber(n: int, x: int) -> FiberEstimate:
    path = edge_count_path(n, x)
    terms = [math.log(ratio_edges(n, i - 1, i)) for i in range(1, len(path) + 1)]
    return FiberEstimate("edges", x, _sum_logs(terms), len(path), n)


def closed_form_edges(n: int, x: int) -> LogCount:
    return log_binomial(n * (n - 1) // 2, x)


def count_degdist_fiber(D: DegreeDistribution, mode: str = STANDARD) -> FiberEstimate:
    path = havel_hakimi_path(D)
    b = GraphBuilder(path.n)
    terms = []
    for step, (l, j) in enumerate(path.ordered_edges, 1):
        ctx = advance(b, l, j, step)
        terms.append(log_ratio_degdist(ctx, mode))
    return FiberEstimate("degree_distribution", D, _sum_logs(terms), len(path), path.n, mode)


def log_degree_permutations(D: DegreeDistribution) -> LogCount:
    """ln of the ways to hand out degree labels: the multinomial n! / prod D_k!."""
    remaining = D.n
    factors = []
    for c in D.counts:
        factors.append(log_binomial(remaining, c))
        remaining -= c
    return log_prod(factors)


def count_degseq_fiber(d: Sequence[int], mode: str = STANDARD) -> FiberEstimate:
    D = DegreeDistribution.from_sequence(list(d))
    est = count_degdist_fiber(D, mode)
    count = est.log_count / log_degree_permutations(D)
    return FiberEstimate("degree_sequence", tuple(d), count, est.path_length, len(d), mode)


def count_mixing_fiber(a: CovariateAssignment, mm) -> FiberEstimate:
    mm = np.asarray(mm)
    path = mixing_path(a, mm)
    M = a.counts
    filled: dict[tuple[int, int], int] = {}
    terms = []
    for u, v in path.ordered_edges:
        cu, cv = sorted((a.labels[u], a.labels[v]))
        prev = filled.get((cu, cv), 0)
        terms.append(math.log(ratio_mixing(M, prev, prev + 1, cu == cv, cu, cv)))
        filled[(cu, cv)] = prev + 1
    return FiberEstimate("mixing", (a, mm), _sum_logs(terms), len(path), a.n)


def closed_form_mixing(M: Sequence[int], mm) -> LogCount:
    mm = check_mixing(M, mm)
    factors = []
    for k, l in mixing_blocks(len(M)):
        pairs = M[k] * (M[k] - 1) // 2 if k == l else M[k] * M[l]
        factors.append(log_binomial(pairs, int(mm[k, l])))
    return log_prod(factors)


def exact_mixing_count(M: Sequence[int], mm) -> int:
    """Integer version of :func:`closed_form_mixing`."""
    mm = np.asarray(mm)
    total = 1
    for k, l in mixing_blocks(len(M)):
        pairs = M[k] * (M[k] - 1) // 2 if k == l else M[k] * M[l]
        total *= math.comb(pairs, int(mm[k, l]))
    return total


def count_degmix_fiber(dmm, n: int) -> FiberEstimate:
    path = degree_mixing_path(dmm, n)
    b = GraphBuilder(n, track_dmm=True)
    terms = []
    for step, (l, j) in enumerate(path.ordered_edges, 1):
        ctx = advance(b, l, j, step, mixing=True)
        terms.append(log_ratio_degmix(ctx))
    return FiberEstimate("degree_mixing", path.target, _sum_logs(terms), len(path), n)


def liebenau_regular_reference(n: int, d: int) -> LogCount:
    """Asymptotic count of labeled d-regular graphs (Liebenau-Wormald):

        sqrt(2) e^{1/4} (lam^lam (1-lam)^(1-lam))^C(n,2) C(n-1, d)^n,
        lam = d / (n - 1).
    """
    if not 1 <= d <= n - 1:
        raise InputError(f"degree {d} must lie in 1..{n - 1}")
    if (n * d) % 2:
        raise InputError(f"n*d = {n * d} is odd; no {d}-regular graph on {n} vertices")
    lam = d / (n - 1)
    entropy = lam * math.log(lam) + (math.log1p(-lam) * (1 - lam) if lam < 1 else 0.0)
    ln = (0.5 * math.log(2) + 0.25 + (n * (n - 1) / 2) * entropy
          + n * log_binomial(n - 1, d).ln_value)
    return LogCount(ln)


def regular_sequence_estimate(n: int, d: int, mode: str = STANDARD) -> FiberEstimate:
    return count_degseq_fiber([d] * n, mode)


@dataclass
class DiversityEstimate:
    log_count: LogCount
    ln_degdist: float
    ln_degmix: list[float]
    failures: list[str]


def distinct_dmm_detail(D: DegreeDistribution, sample_count: int, rng_seed: int,
                        mode: str = STANDARD, max_retries: int = 100) -> DiversityEstimate:
    if sample_count < 1:
        raise InputError("sample_count must be at least 1")
    ln_dd = count_degdist_fiber(D, mode).ln_count
    seq = D.to_sequence()
    stream = RngStream(rng_seed)
    logs, failures = [], []
    for i in range(sample_count):
        try:
            g = gen_config_uniform(seq, stream.spawn(i), max_retries)
            logs.append(count_degmix_fiber(degree_mixing_matrix(g), D.n).ln_count)
        except FiberError as exc:
            failures.append(f"sample {i}: {exc}")
    if failures:
        log.warning("%d of %d configuration samples failed", len(failures), sample_count)
    if not logs:
        raise EstimationError("every configuration-model sample failed")
    value = ln_dd - math.fsum(logs) / len(logs)
    if abs(value) <= ROUNDING_SLACK * max(1.0, abs(ln_dd)):
        # residue of summing per-step logs; the count itself is an integer >= 1
        value = 0.0
    if value < 0:
        log.warning("distinct-DMM estimate %.4g below zero, floored at 0", value)
        value = 0.0
    return DiversityEstimate(LogCount(value), ln_dd, logs, failures)


def estimate_distinct_dmm(D: DegreeDistribution, sample_count: int, rng_seed: int,
                          mode: str = STANDARD) -> LogCount:
    """Log number of distinct degree mixing matrices with degree distribution D.

    Fiber size of D divided by the mean (on the log scale) fiber size of the
    degree mixing matrices of configuration-model graphs drawn from D.
    """
    return distinct_dmm_detail(D, sample_count, rng_seed, mode).log_count
