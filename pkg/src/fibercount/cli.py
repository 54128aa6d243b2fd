"""Command line front end.

Exit codes: 0 success, 2 parse/input error, 3 not graphical, 4 estimation
failure, 5 oracle size limit.  Flags override the environment variables
``FIBERCOUNT_NEWMAN_MODE`` and ``FIBERCOUNT_SEED``, which override defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager

import numpy as np

from . import experiments
from .errors import FiberError, InputError
from .fibers import (
    count_degdist_fiber,
    count_degmix_fiber,
    count_degseq_fiber,
    count_edges_fiber,
    count_mixing_fiber,
)
from .generators import RngStream, gen_ba, gen_config_uniform, gen_er_gnm
from .graph import (
    CovariateAssignment,
    DegreeDistribution,
    degree_distribution,
    degree_mixing_matrix,
    degree_sequence,
    dmm_from_entries,
    format_edge_list,
    mixing_matrix,
    read_covariates,
    read_edge_list,
)
from .oracle import enumerate_fibers
from .paths import degree_mixing_path, edge_count_path, havel_hakimi_path, mixing_path
from .ratios import NEWMAN_MODES, STANDARD

PROPERTY_ALIASES = {
    "edges": "edges",
    "degdist": "degree_distribution",
    "degree_distribution": "degree_distribution",
    "degseq": "degree_sequence",
    "degree_sequence": "degree_sequence",
    "mixing": "mixing",
    "degmix": "degree_mixing",
    "degree_mixing": "degree_mixing",
}


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    return doc


def _first(doc: dict, *keys):
    for k in keys:
        if k in doc:
            return doc[k]
    raise InputError(f"input needs one of: {', '.join(keys)}")


def _covariates_from(doc: dict, args) -> CovariateAssignment:
    if args.covariates:
        return read_covariates(args.covariates)
    if "labels" in doc or "m" in doc:
        return CovariateAssignment(tuple(_first(doc, "labels", "m")))
    if "M" in doc:
        M = doc["M"]
        # only the category sizes matter for the count
        return CovariateAssignment(tuple(k + 1 for k, c in enumerate(M) for _ in range(c)), len(M))
    raise InputError("mixing input needs --covariates or 'labels'/'M' in the file")


def _dmm_from(doc: dict) -> np.ndarray:
    if "DMM" in doc:
        return np.asarray(doc["DMM"], dtype=np.int64)
    return dmm_from_entries(_first(doc, "entries"))


def _target(args):
    """Resolve (kind, payload) for --property from flags, --file or --graph."""
    kind = PROPERTY_ALIASES.get(args.property)
    if kind is None:
        raise InputError(f"unknown property {args.property!r}")
    g = read_edge_list(args.graph) if args.graph else None
    doc = _load_json(args.file) if args.file else {}
    if kind == "edges":
        if g is not None:
            return kind, (g.n, g.num_edges)
        if args.n is None or args.x is None:
            raise InputError("edges needs --n and --x (or --graph)")
        return kind, (args.n, args.x)
    if kind == "degree_distribution":
        if g is not None:
            return kind, degree_distribution(g)
        return kind, DegreeDistribution(tuple(_first(doc, "D", "degree_distribution")))
    if kind == "degree_sequence":
        if g is not None:
            return kind, degree_sequence(g)
        return kind, tuple(_first(doc, "d", "degree_sequence"))
    if kind == "mixing":
        a = _covariates_from(doc, args)
        if g is not None:
            return kind, (a, mixing_matrix(g, a))
        return kind, (a, np.asarray(_first(doc, "MM"), dtype=np.int64))
    if g is not None:
        return kind, (g.n, degree_mixing_matrix(g))
    n = args.n if args.n is not None else doc.get("n")
    if n is None:
        raise InputError("degree mixing needs the vertex count (--n or 'n' in the file)")
    return kind, (int(n), _dmm_from(doc))


def cmd_count(args) -> int:
    kind, payload = _target(args)
    if kind == "edges":
        est = count_edges_fiber(*payload)
    elif kind == "degree_distribution":
        est = count_degdist_fiber(payload, args.newman_mode)
    elif kind == "degree_sequence":
        est = count_degseq_fiber(payload, args.newman_mode)
    elif kind == "mixing":
        est = count_mixing_fiber(*payload)
    else:
        n, dmm = payload
        est = count_degmix_fiber(dmm, n)
    _emit(args, json.dumps(est.to_record(), indent=1, sort_keys=True) + "\n")
    return 0


def cmd_path(args) -> int:
    kind, payload = _target(args)
    if kind == "edges":
        path = edge_count_path(*payload)
    elif kind == "degree_distribution":
        path = havel_hakimi_path(payload)
    elif kind == "degree_sequence":
        path = havel_hakimi_path(DegreeDistribution.from_sequence(list(payload)))
    elif kind == "mixing":
        path = mixing_path(*payload)
    else:
        n, dmm = payload
        path = degree_mixing_path(dmm, n)
    _emit(args, format_edge_list(path.n, path.ordered_edges))
    return 0


def cmd_table_edges(args) -> int:
    report = experiments.table_edges(args.n, args.x)
    _emit(args, report.csv_text())
    return 0


def cmd_regular_compare(args) -> int:
    report = experiments.regular_compare(args.n, args.d, args.newman_mode)
    _emit(args, report.csv_text())
    _write_report(args, report)
    return 0


def _run_experiment(args, report) -> int:
    _emit(args, report.csv_text())
    _write_report(args, report)
    if report.failures:
        logging.getLogger("fibercount").warning("%d sample(s) failed", len(report.failures))
    return 0


def cmd_ba_er(args) -> int:
    return _run_experiment(args, experiments.ba_er(
        args.n, args.samples, args.seed, args.m, args.newman_mode, args.jobs))


def cmd_ba_conf(args) -> int:
    return _run_experiment(args, experiments.ba_conf(
        args.n, args.samples, args.seed, args.m, args.jobs))


def cmd_diversity(args) -> int:
    return _run_experiment(args, experiments.diversity(
        args.n, args.samples, args.seed, args.m, args.dmm_samples, args.newman_mode, args.jobs))


def cmd_oracle(args) -> int:
    kind = PROPERTY_ALIASES.get(args.property)
    if kind is None:
        raise InputError(f"unknown property {args.property!r}")
    a = read_covariates(args.covariates) if args.covariates else None
    table = enumerate_fibers(args.n, kind, a)
    _emit(args, table.to_json() + "\n")
    return 0


def cmd_generate(args) -> int:
    stream = RngStream(args.seed)
    if args.model == "ba":
        g = gen_ba(args.n, args.m, stream)
    elif args.model == "er":
        if args.x is None:
            raise InputError("er needs --x (edge count)")
        g = gen_er_gnm(args.n, args.x, stream)
    else:
        if not args.file:
            raise InputError("conf needs --file with a degree sequence 'd'")
        g = gen_config_uniform(_first(_load_json(args.file), "d", "degree_sequence"), stream)
    _emit(args, format_edge_list(g.n, g.edges))
    return 0


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _emit(args, text: str) -> None:
    with _output(getattr(args, "out", None)) as fh:
        fh.write(text)


def _write_report(args, report) -> None:
    if getattr(args, "report", None):
        with open(args.report, "w") as fh:
            fh.write(report.to_json() + "\n")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fibercount",
                                description="Estimate numbers of labeled graphs sharing a property value.")
    p.add_argument("--newman-mode", choices=NEWMAN_MODES, default=None,
                   help="expected degree-mixing normalization (default: standard)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def with_target(sp):
        sp.add_argument("--property", required=True, choices=sorted(PROPERTY_ALIASES))
        sp.add_argument("--n", type=int)
        sp.add_argument("--x", type=int, help="edge count")
        sp.add_argument("--file", help="JSON target (D, d, M/labels + MM, n + DMM/entries)")
        sp.add_argument("--graph", help="edge-list file; the target is its property value")
        sp.add_argument("--covariates", help="one category label per line")
        sp.add_argument("--out")

    sp = sub.add_parser("count", help="estimate one fiber size (JSON)")
    with_target(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("path", help="dump the construction path as an ordered edge list")
    with_target(sp)
    sp.set_defaults(func=cmd_path)

    sp = sub.add_parser("table-edges", help="recursive vs closed-form edge-count table (CSV)")
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--x", type=int, default=10, help="largest edge count")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_table_edges)

    sp = sub.add_parser("regular-compare", help="d-regular estimates vs asymptotic reference (CSV)")
    sp.add_argument("--n", type=int, nargs="+", default=[1000])
    sp.add_argument("--d", type=int, nargs="+", default=list(range(1, 11)))
    sp.add_argument("--out")
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_regular_compare)

    for name, func, help_ in (
        ("ba-er", cmd_ba_er, "degree-distribution fibers: BA vs G(n,m)"),
        ("ba-conf", cmd_ba_conf, "degree-mixing fibers: BA vs configuration model"),
        ("diversity", cmd_diversity, "distinct degree mixing matrices per BA distribution"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--n", type=int, default=1000)
        sp.add_argument("--m", type=int, default=1, help="edges per new BA vertex")
        sp.add_argument("--samples", type=int, default=20)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--out", help="CSV destination (default stdout)")
        sp.add_argument("--report", help="write the JSON experiment report here")
        if name == "diversity":
            sp.add_argument("--dmm-samples", type=int, default=10,
                            help="configuration-model draws per distribution")
        sp.set_defaults(func=func)

    sp = sub.add_parser("oracle", help="exact fiber table by exhaustive enumeration (JSON)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--property", required=True, choices=sorted(PROPERTY_ALIASES))
    sp.add_argument("--covariates")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("generate", help="write a random graph as an edge list")
    sp.add_argument("--model", choices=("ba", "er", "conf"), required=True)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--x", type=int)
    sp.add_argument("--file")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.newman_mode is None:
            args.newman_mode = os.environ.get("FIBERCOUNT_NEWMAN_MODE", STANDARD)
            if args.newman_mode not in NEWMAN_MODES:
                raise InputError(f"FIBERCOUNT_NEWMAN_MODE must be one of {NEWMAN_MODES}")
        if getattr(args, "seed", 0) is None:
            args.seed = _env_int("FIBERCOUNT_SEED", 0)
        return args.func(args)
    except FiberError as exc:
        print(f"fibercount: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"fibercount: error: {exc}", file=sys.stderr)
        return InputError.exit_code


if __name__ == "__main__":
    sys.exit(main())
