"""Reproduction harness: edge-count table, d-regular comparison and the
preferential-attachment fiber experiments.

Each experiment returns an :class:`ExperimentReport` with one record per
sample.  Sample ``i`` draws from ``RngStream(seed).spawn(i)``, so results do
not depend on how many worker processes evaluate them.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import FiberError, InputError
from .fibers import (
    closed_form_edges,
    count_degdist_fiber,
    count_degmix_fiber,
    distinct_dmm_detail,
    liebenau_regular_reference,
    regular_sequence_estimate,
)
from .generators import RngStream, gen_ba, gen_config_uniform, gen_er_gnm
from .graph import degree_distribution, degree_mixing_matrix, degree_sequence
from .logspace import LN10, log_factorial
from .oracle import MAX_N, enumerate_fibers, exact_count
from .ratios import STANDARD, ratio_edges

log = logging.getLogger(__name__)

TABLE_EDGES_COLUMNS = ["x", "ln_ratio", "ln_count_recursive", "ln_count_closed_form",
                       "log10_count_recursive", "log10_count_closed_form"]
REGULAR_COLUMNS = ["n", "d", "ln_recursive", "ln_reference", "rel_diff",
                   "log10_recursive", "log10_reference", "ln_exact", "note"]
BA_ER_COLUMNS = ["sample", "n", "edges", "ln_ba", "ln_er", "ln_diff",
                 "log10_ba", "log10_er", "log10_diff"]
BA_CONF_COLUMNS = ["sample", "n", "edges", "ln_ba", "ln_conf", "ln_diff",
                   "log10_ba", "log10_conf", "log10_diff"]
DIVERSITY_COLUMNS = ["sample", "n", "edges", "ln_degdist", "ln_distinct", "log10_distinct",
                     "ln_degmix_self", "ln_distinct_self", "log10_distinct_self",
                     "conf_samples", "conf_failures"]


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


@dataclass
class ExperimentReport:
    experiment: str
    parameters: dict
    columns: list[str]
    records: list[dict] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def summary(self) -> dict:
        out = {}
        for col in self.columns:
            vals = [r[col] for r in self.records if isinstance(r.get(col), float)]
            if vals and col not in ("sample", "n"):
                sd = statistics.stdev(vals) if len(vals) > 1 else 0.0
                out[col] = {"mean": statistics.fmean(vals), "sd": sd}
        return out

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "parameters": self.parameters,
            "records": self.records,
            "failures": self.failures,
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.records:
            w.writerow([fmt(r.get(c)) for c in self.columns])

    def csv_text(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def table_edges(n: int, x_max: int) -> ExperimentReport:
    """Recursive vs closed-form edge-count fiber sizes for x = 0..x_max."""
    report = ExperimentReport("table_edges", {"n": n, "x_max": x_max}, TABLE_EDGES_COLUMNS)
    pairs = n * (n - 1) // 2
    if not 0 <= x_max <= pairs:
        raise InputError(f"x_max {x_max} outside 0..{pairs}")
    terms: list[float] = []
    for x in range(x_max + 1):
        ln_ratio = None
        if x:
            ln_ratio = math.log(ratio_edges(n, x - 1, x))
            terms.append(ln_ratio)
        rec = math.fsum(terms)
        closed = closed_form_edges(n, x).ln_value
        report.records.append({
            "x": x, "ln_ratio": ln_ratio,
            "ln_count_recursive": rec, "ln_count_closed_form": closed,
            "log10_count_recursive": rec / LN10, "log10_count_closed_form": closed / LN10,
        })
    return report


def _exact_regular(n: int, d: int) -> float | None:
    if d == 1:
        half = n // 2
        return (log_factorial(n).ln_value - half * math.log(2)
                - log_factorial(half).ln_value)
    if n <= MAX_N:
        return math.log(exact_count(enumerate_fibers(n, "degree_sequence"), [d] * n))
    return None


def regular_compare(ns: Sequence[int], ds: Sequence[int], mode: str = STANDARD) -> ExperimentReport:
    report = ExperimentReport("regular_compare", {"n": list(ns), "d": list(ds), "mode": mode},
                              REGULAR_COLUMNS)
    for n in ns:
        for d in ds:
            row = {"n": n, "d": d}
            if (n * d) % 2:
                row["note"] = "skipped: parity (n*d odd)"
            elif not 1 <= d <= n - 1:
                row["note"] = "skipped: degree out of range"
            else:
                try:
                    rec = regular_sequence_estimate(n, d, mode).ln_count
                    ref = liebenau_regular_reference(n, d).ln_value
                except FiberError as exc:
                    row["note"] = f"failed: {exc}"
                    report.failures.append(f"n={n} d={d}: {exc}")
                else:
                    row.update(ln_recursive=rec, ln_reference=ref,
                               rel_diff=abs(rec - ref) / abs(ref) if ref else None,
                               log10_recursive=rec / LN10, log10_reference=ref / LN10,
                               ln_exact=_exact_regular(n, d), note="")
            report.records.append(row)
    return report


def _run_samples(fn: Callable[[int], dict], samples: int, jobs: int) -> list[tuple[int, dict | str]]:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, range(samples)))
    else:
        results = [fn(i) for i in range(samples)]
    return list(enumerate(results))


def _collect(report: ExperimentReport, results: Iterable[tuple[int, dict | str]]) -> ExperimentReport:
    for i, res in results:
        if isinstance(res, str):
            report.failures.append(f"sample {i}: {res}")
            log.warning("sample %d failed: %s", i, res)
        else:
            report.records.append(res)
    return report


def _ba_er_sample(i: int, n: int, m: int, seed: int, mode: str) -> dict | str:
    gen = RngStream(seed).spawn(i).generator()
    try:
        ba = gen_ba(n, m, gen)
        er = gen_er_gnm(n, ba.num_edges, gen)
        a = count_degdist_fiber(degree_distribution(ba), mode).ln_count
        b = count_degdist_fiber(degree_distribution(er), mode).ln_count
    except FiberError as exc:
        return str(exc)
    return {"sample": i, "n": n, "edges": ba.num_edges, "ln_ba": a, "ln_er": b,
            "ln_diff": a - b, "log10_ba": a / LN10, "log10_er": b / LN10,
            "log10_diff": (a - b) / LN10}


def ba_er(n: int, samples: int, seed: int, m: int = 1, mode: str = STANDARD,
          jobs: int = 1) -> ExperimentReport:
    """Degree-distribution fiber sizes of paired BA and equal-size G(n, m) graphs."""
    report = ExperimentReport("ba_er", {"n": n, "samples": samples, "seed": seed, "m": m,
                                        "mode": mode}, BA_ER_COLUMNS)
    fn = partial(_ba_er_sample, n=n, m=m, seed=seed, mode=mode)
    return _collect(report, _run_samples(fn, samples, jobs))


def _ba_conf_sample(i: int, n: int, m: int, seed: int) -> dict | str:
    gen = RngStream(seed).spawn(i).generator()
    try:
        ba = gen_ba(n, m, gen)
        conf = gen_config_uniform(degree_sequence(ba), gen)
        a = count_degmix_fiber(degree_mixing_matrix(ba), n).ln_count
        b = count_degmix_fiber(degree_mixing_matrix(conf), n).ln_count
    except FiberError as exc:
        return str(exc)
    return {"sample": i, "n": n, "edges": ba.num_edges, "ln_ba": a, "ln_conf": b,
            "ln_diff": a - b, "log10_ba": a / LN10, "log10_conf": b / LN10,
            "log10_diff": (a - b) / LN10}


def ba_conf(n: int, samples: int, seed: int, m: int = 1, jobs: int = 1) -> ExperimentReport:
    """Degree-mixing fiber sizes of paired BA and configuration-model graphs."""
    report = ExperimentReport("ba_conf", {"n": n, "samples": samples, "seed": seed, "m": m},
                              BA_CONF_COLUMNS)
    fn = partial(_ba_conf_sample, n=n, m=m, seed=seed)
    return _collect(report, _run_samples(fn, samples, jobs))


def _substream_seed(seed: int, i: int) -> int:
    return int(np.random.SeedSequence((seed, i, 1)).generate_state(1, np.uint64)[0])


def _diversity_sample(i: int, n: int, m: int, seed: int, dmm_samples: int, mode: str) -> dict | str:
    gen = RngStream(seed).spawn(i).generator()
    try:
        ba = gen_ba(n, m, gen)
        D = degree_distribution(ba)
        detail = distinct_dmm_detail(D, dmm_samples, _substream_seed(seed, i), mode)
        self_mix = count_degmix_fiber(degree_mixing_matrix(ba), n).ln_count
    except FiberError as exc:
        return str(exc)
    ln_distinct = detail.log_count.ln_value
    ln_self = max(detail.ln_degdist - self_mix, 0.0)
    return {"sample": i, "n": n, "edges": ba.num_edges, "ln_degdist": detail.ln_degdist,
            "ln_distinct": ln_distinct, "log10_distinct": ln_distinct / LN10,
            "ln_degmix_self": self_mix, "ln_distinct_self": ln_self,
            "log10_distinct_self": ln_self / LN10,
            "conf_samples": len(detail.ln_degmix), "conf_failures": len(detail.failures)}


def diversity(n: int, samples: int, seed: int, m: int = 1, dmm_samples: int = 10,
              mode: str = STANDARD, jobs: int = 1) -> ExperimentReport:
    """Estimated number of distinct degree mixing matrices per BA degree distribution.

    ``ln_distinct`` references configuration-model samples from the
    distribution; ``ln_distinct_self`` uses the BA graph's own matrix.
    """
    report = ExperimentReport("diversity", {"n": n, "samples": samples, "seed": seed, "m": m,
                                            "dmm_samples": dmm_samples, "mode": mode},
                              DIVERSITY_COLUMNS)
    fn = partial(_diversity_sample, n=n, m=m, seed=seed, dmm_samples=dmm_samples, mode=mode)
    return _collect(report, _run_samples(fn, samples, jobs))
