"""Per-step fiber-size ratios ``|c(x_i)| / |c(x_{i-1})|``.

Along a construction path consecutive graphs differ by the single edge
``(l, j)``.  The degree-based kernels only need local information about
that pair, which :class:`PairSnapshot` captures from a
:class:`~fibercount.graph.GraphBuilder` before and after the insertion.
Kernels that can over- or underflow return natural logs (``log_ratio_*``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import EstimationError, InputError
from .graph import DegreeDistribution, GraphBuilder
from .logspace import log_binomial

STANDARD = "standard"
AS_PRINTED = "as-printed"
NEWMAN_MODES = (STANDARD, AS_PRINTED)


def ratio_edges(n: int, x_prev: int, x_cur: int) -> float:
    pairs = n * (n - 1) // 2
    if x_cur != x_prev + 1 or x_prev < 0 or x_cur > pairs:
        raise InputError(f"edge step {x_prev}->{x_cur} invalid for n={n}")
    return (pairs - x_prev) / x_cur


def ratio_mixing(M, prev_entry: int, cur_entry: int, same_category: bool,
                 cat_l: int, cat_j: int) -> float:
    """Step ratio while filling mixing block ``(cat_l, cat_j)`` (1-based)."""
    if cur_entry <= 0 or cur_entry != prev_entry + 1:
        raise InputError(f"mixing step {prev_entry}->{cur_entry} invalid")
    ml, mj = M[cat_l - 1], M[cat_j - 1]
    pairs = ml * (ml - 1) // 2 if same_category else ml * mj
    return (pairs - prev_entry) / cur_entry


def _dist_items(D) -> Mapping[int, int]:
    if isinstance(D, DegreeDistribution):
        return D.as_dict()
    if isinstance(D, Mapping):
        return D
    return dict(enumerate(D))


def expected_dmm_entry(D, x: int, y: int, mode: str = STANDARD) -> float:
    """Newman-style expected number of edges between degree classes x and y.

    ``standard`` divides the stub product by the total stub count;
    ``as-printed`` divides by half of it.  No stubs at all gives 0.
    """
    if mode not in NEWMAN_MODES:
        raise InputError(f"unknown Newman mode {mode!r}")
    counts = _dist_items(D)
    stubs = sum(z * c for z, c in counts.items())
    if stubs == 0:
        return 0.0
    norm = stubs if mode == STANDARD else 0.5 * stubs
    value = x * counts.get(x, 0) * y * counts.get(y, 0) / norm
    return value * 0.5 if x == y else value


@dataclass(frozen=True)
class PairSnapshot:
    """What the kernels need to know about one graph around vertices l, j."""

    n: int
    deg_l: int
    deg_j: int
    dist: Mapping[int, int]
    dmm_lj: int = 0
    # z -> DMM'[deg_l, z] and DMM'[z, deg_j] (diagonal doubled)
    row_l: Mapping[int, int] | None = None
    row_j: Mapping[int, int] | None = None
    # z -> number of neighbours of degree z
    nbr_l: Mapping[int, int] | None = None
    nbr_j: Mapping[int, int] | None = None

    def count(self, k: int) -> int:
        return self.dist.get(k, 0)

    @classmethod
    def capture(cls, b: GraphBuilder, l: int, j: int, mixing: bool = False) -> PairSnapshot:
        dl, dj = b.degree[l], b.degree[j]
        dist = {k: c for k, c in b.dist.items() if c}
        if not mixing:
            return cls(b.n, dl, dj, dist)
        nbr_l = b.neighbor_degrees(l)
        nbr_j = b.neighbor_degrees(j)
        zs = set(nbr_l) | set(nbr_j) | {dl, dj}

        def prime(a, z):
            v = b.dmm_value(a, z)
            return 2 * v if a == z else v

        return cls(
            b.n, dl, dj, dist,
            dmm_lj=b.dmm_value(dl, dj),
            row_l={z: prime(dl, z) for z in zs},
            row_j={z: prime(dj, z) for z in zs},
            nbr_l=nbr_l,
            nbr_j=nbr_j,
        )


@dataclass(frozen=True)
class StepContext:
    """Graphs on either side of adding ``edge``; ``step`` is 1-based."""

    edge: tuple[int, int]
    prev: PairSnapshot
    cur: PairSnapshot
    step: int = 0


def advance(b: GraphBuilder, l: int, j: int, step: int = 0, mixing: bool = False) -> StepContext:
    """Add edge ``(l, j)`` to ``b`` and return the surrounding context."""
    prev = PairSnapshot.capture(b, l, j, mixing)
    b.add_edge(l, j)
    cur = PairSnapshot.capture(b, l, j, mixing)
    return StepContext((l, j), prev, cur, step)


def _pair_classes(s: PairSnapshot) -> int:
    if s.deg_l != s.deg_j:
        return s.count(s.deg_l) * s.count(s.deg_j)
    c = s.count(s.deg_l)
    return c * (c - 1) // 2


def ratio_degdist(ctx: StepContext, mode: str = STANDARD) -> float:
    prev, cur = ctx.prev, ctx.cur
    beta = _pair_classes(prev)
    alpha_prev = expected_dmm_entry(prev.dist, prev.deg_l, prev.deg_j, mode)
    alpha_cur = expected_dmm_entry(cur.dist, cur.deg_l, cur.deg_j, mode)
    numer = beta - alpha_prev
    if numer <= 0:
        raise EstimationError(f"degree-distribution numerator {numer:.6g} is not positive",
                              ctx.step)
    if alpha_cur <= 0:
        raise EstimationError("degree-distribution denominator is zero", ctx.step)
    return numer / alpha_cur


def log_ratio_degdist(ctx: StepContext, mode: str = STANDARD) -> float:
    return math.log(ratio_degdist(ctx, mode))


def _lnc(top: int, bottom: int, step: int) -> float:
    if bottom < 0 or top < 0 or bottom > top:
        raise EstimationError(f"binomial C({top}, {bottom}) undefined in beta factor", step)
    return log_binomial(top, bottom).ln_value


def log_beta_on(s: PairSnapshot, shift: int, step: int = 0) -> float:
    """ln of the neighbour-degree correction evaluated on one graph.

    ``shift`` is 1 when the edge ``(l, j)`` is present and must be
    discounted, 0 otherwise.
    """
    dl, dj = s.deg_l, s.deg_j
    row_l, row_j, nbr_l, nbr_j = s.row_l, s.row_j, s.nbr_l, s.nbr_j
    if row_l is None:
        raise InputError("snapshot lacks degree-mixing detail")
    total = 0.0
    if dl != dj:
        zs = set(z for z, c in nbr_l.items() if c)
        if shift:
            zs.add(dj)
        for z in zs:
            cut = shift if z == dj else 0
            total += _lnc(row_l.get(z, 0) - cut, nbr_l.get(z, 0) - cut, step)
        total -= _lnc(dl * s.count(dl) - shift, dl - shift, step)
        zs = set(z for z, c in nbr_j.items() if c)
        if shift:
            zs.add(dl)
        for z in zs:
            cut = shift if z == dl else 0
            total += _lnc(row_j.get(z, 0) - cut, nbr_j.get(z, 0) - cut, step)
        total -= _lnc(dj * s.count(dj) - shift, dj - shift, step)
    else:
        d = dl
        zs = set(z for z, c in nbr_l.items() if c) | set(z for z, c in nbr_j.items() if c)
        if shift:
            zs.add(d)
        for z in zs:
            cut = shift if z == d else 0
            total += _lnc(row_l.get(z, 0) - cut,
                          nbr_l.get(z, 0) + nbr_j.get(z, 0) - 2 * cut, step)
        total -= _lnc(d * s.count(d) - shift, 2 * d - 2 * shift, step)
    return total


def beta_factor(ctx: StepContext, s: int) -> float:
    """Correction on the graph before (``s=0``) or after (``s=1``) the step."""
    if s not in (0, 1):
        raise InputError("s must be 0 or 1")
    snap = ctx.prev if s == 0 else ctx.cur
    return math.exp(log_beta_on(snap, s, ctx.step))


def log_ratio_degmix(ctx: StepContext) -> float:
    prev, cur = ctx.prev, ctx.cur
    numer = _pair_classes(prev) - prev.dmm_lj
    if numer <= 0:
        raise EstimationError(f"degree-mixing numerator {numer} is not positive", ctx.step)
    denom = cur.dmm_lj
    if denom <= 0:
        raise EstimationError("degree-mixing denominator is zero", ctx.step)
    return (math.log(numer) + log_beta_on(prev, 0, ctx.step)
            - math.log(denom) - log_beta_on(cur, 1, ctx.step))


def ratio_degmix(ctx: StepContext) -> float:
    return math.exp(log_ratio_degmix(ctx))
