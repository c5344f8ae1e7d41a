"""Weighted common-window scheduling: exact pseudo-polynomial DP and an FPTAS.

``A(i, t, w)`` is the most energy available at the start of slot ``t + 1`` over
feasible schedules of subsets of the first ``i`` jobs (energy order) within
slots ``1..t`` whose weight is at least ``w``. For ``w >= 1``:

    A(i, t, w) = max(A(i-1, t, w),                     skip job i
                     A(i, t-1, w) + h_t,               harvest at t
                     A(i-1, t-1, max(0, w-w_i)) - e_i) run job i at t

with ``A(i, t, 0) = H(t)``. The harvest term chains along ``t``, so every
``(i, .)`` plane is ``H(t) + running max over s <= t`` of the other two terms
minus ``H(s)``; numpy evaluates it for all ``t`` and ``w`` at once.

The FPTAS rounds weights down to multiples of ``eps * W_max / n`` and runs the
same DP on the integer multiples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dp import fits_int64, require_common_window
from .model import (
    NEG_INF,
    Instance,
    Job,
    PreconditionError,
    Schedule,
    SolveResult,
    schedule_value,
    sorted_by_energy,
)

SKIP, IDLE, RUN = 1, 2, 3


@dataclass(frozen=True, eq=False)
class WeightedDpTable:
    """``values[i-1, t-1, w]`` with ``mask`` marking reachable entries.

    ``weights`` are the (possibly rounded) weights the table was built with, in
    row order.
    """

    order: tuple[Job, ...]
    weights: tuple[int, ...]
    values: np.ndarray
    mask: np.ndarray

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.values.shape

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def __call__(self, i: int, t: int, w: int) -> int | float:
        if w >= self.shape[2] or not self.mask[i - 1, t - 1, w]:
            return NEG_INF
        return int(self.values[i - 1, t - 1, w])

    def best_weight(self) -> int:
        hits = np.flatnonzero(self.mask[-1, -1])
        return int(hits[-1]) if hits.size else 0


def schedulable_alone(instance: Instance, job: Job) -> bool:
    """Whether the table could place ``job`` with nothing else scheduled."""
    H = instance.prefix_harvest
    return any(H[t - 1] >= job.energy for t in range(max(job.release, 2), job.due + 1))


def build_weighted_table(instance: Instance, weights: dict[int, int] | None = None) -> WeightedDpTable:
    """Fill the table; ``weights`` overrides job weights by id (used for rounding)."""
    r, d = require_common_window(instance)
    if not instance.jobs:
        raise PreconditionError("no-jobs", "the table needs at least one job")
    order = tuple(sorted_by_energy(instance.jobs))
    ws = tuple((weights or {}).get(job.id, job.weight) for job in order)
    n, T = len(order), instance.horizon
    cap = n * max(ws)

    if fits_int64(instance):
        dtype, floor = np.int64, np.int64(-(2**62))
    else:
        dtype, floor = object, -2 * instance.max_magnitude()
    H = np.array(instance.prefix_harvest, dtype=dtype)  # H[0..T]
    Ht = H[1:, None]  # H(t) for t = 1..T, broadcast over w
    lo = max(r, 2)
    t_idx = np.arange(1, T + 1)
    can_run = ((t_idx >= lo) & (t_idx <= d))[:, None]

    values = np.zeros((n, T, cap + 1), dtype=dtype)
    mask = np.zeros((n, T, cap + 1), dtype=bool)
    for i, (job, w_i) in enumerate(zip(order, ws)):
        # A(i-1, ., .) over t = 0..T; row 0 only has the empty schedule
        prev_val = np.zeros((T + 1, cap + 1), dtype=dtype)
        prev_ok = np.zeros((T + 1, cap + 1), dtype=bool)
        if i == 0:
            prev_val[:, 0] = H
            prev_ok[:, 0] = True
        else:
            prev_val[1:] = values[i - 1]
            prev_ok[1:] = mask[i - 1]
            prev_val[0, 0] = 0
            prev_ok[0, 0] = True
        # run job i at t: source A(i-1, t-1, max(0, w - w_i))
        src = np.maximum(np.arange(cap + 1) - w_i, 0)
        src_val = prev_val[:-1][:, src]
        src_ok = prev_ok[:-1][:, src] & can_run & (src_val >= job.energy)
        run = np.where(src_ok, src_val - job.energy, floor)
        skip_ok = prev_ok[1:] if i > 0 else np.zeros((T, cap + 1), dtype=bool)
        skip = np.where(skip_ok, prev_val[1:], floor)
        best = np.maximum(run, skip)
        ok = src_ok | skip_ok
        best[0] = floor  # the recurrence starts at t = 2
        ok[0] = False
        rel = np.where(ok, best - Ht, floor)
        run_max = np.maximum.accumulate(rel, axis=0)
        ok = np.logical_or.accumulate(ok, axis=0)
        plane = np.where(ok, Ht + np.where(ok, run_max, 0), 0)
        plane[:, 0] = H[1:]
        ok[:, 0] = True
        values[i] = plane
        mask[i] = ok
    return WeightedDpTable(order, ws, values, mask)


def backtrack_weighted(instance: Instance, table: WeightedDpTable, w: int) -> Schedule:
    """Schedule of weight at least ``w`` matching ``A(n, T, w)``; prefers skip, then idle."""
    h = instance.harvest
    H = instance.prefix_harvest
    order, ws, V, M = table.order, table.weights, table.values, table.mask
    r, d = require_common_window(instance)
    i, t = len(order), instance.horizon
    out = {}
    while w > 0:
        here = V[i - 1, t - 1, w]
        if i >= 2 and M[i - 2, t - 1, w] and V[i - 2, t - 1, w] == here:
            i -= 1
            continue
        if t >= 2 and M[i - 1, t - 2, w] and V[i - 1, t - 2, w] + h[t - 1] == here:
            t -= 1
            continue
        job, w_i = order[i - 1], ws[i - 1]
        src_w = max(0, w - w_i)
        src = H[t - 1] if i == 1 else V[i - 2, t - 2, src_w]
        if not (max(r, 2) <= t <= d and src - job.energy == here):
            raise AssertionError("inconsistent table during backtracking")
        out[job.id] = t
        i, t, w = i - 1, t - 1, src_w
    return Schedule(out)


def solve_exact_weighted(instance: Instance) -> SolveResult:
    """Maximum total weight ``w*`` and a schedule achieving it."""
    require_common_window(instance)
    if not instance.jobs or max(job.weight for job in instance.jobs) == 0:
        return SolveResult(Schedule(), 0, "exact-w", {"table_shape": (0, 0, 0)})
    table = build_weighted_table(instance)
    w_star = table.best_weight()
    schedule = backtrack_weighted(instance, table, w_star)
    return SolveResult(
        schedule,
        schedule_value(instance, schedule, weighted=True),
        "exact-w",
        {"table_shape": table.shape, "dp_weight": w_star},
    )


def parse_epsilon(value) -> Fraction:
    """Accept ``Fraction``, int, ``"p/q"`` or a decimal string; must lie in (0, 1)."""
    try:
        eps = Fraction(value) if not isinstance(value, float) else Fraction(str(value))
    except (ValueError, ZeroDivisionError, TypeError):
        raise PreconditionError("bad-epsilon", f"cannot read epsilon {value!r}") from None
    if not 0 < eps < 1:
        raise PreconditionError("bad-epsilon", f"epsilon must lie in (0, 1), got {eps}")
    return eps


def fptas_bound(n: int, T: int, epsilon) -> int:
    """Largest table the FPTAS may build: ``n * T * (ceil(n^2 / eps) + 1)``."""
    eps = parse_epsilon(epsilon)
    return n * T * (math.ceil(n * n / eps) + 1)


def rounded_weights(jobs, epsilon) -> dict[int, int]:
    """``floor(w_i / (eps * W_max / n))`` per job id."""
    eps = parse_epsilon(epsilon)
    jobs = list(jobs)
    n = len(jobs)
    w_max = max((job.weight for job in jobs), default=0)
    if w_max == 0:
        return {job.id: 0 for job in jobs}
    p, q = eps.numerator, eps.denominator
    return {job.id: (job.weight * n * q) // (p * w_max) for job in jobs}


def solve_fptas(instance: Instance, epsilon) -> SolveResult:
    """Schedule of true weight at least ``(1 - eps) * w*``.

    Jobs that cannot run even alone are dropped first, so ``W_max`` is a lower
    bound on the optimum.
    """
    eps = parse_epsilon(epsilon)
    require_common_window(instance)
    kept = [job for job in instance.jobs if schedulable_alone(instance, job)]
    meta = {"epsilon": f"{eps.numerator}/{eps.denominator}", "kept_jobs": len(kept)}
    if not kept or max(job.weight for job in kept) == 0:
        return SolveResult(Schedule(), 0, "fptas", {**meta, "table_shape": (0, 0, 0)})
    reduced = Instance(instance.horizon, instance.harvest, tuple(kept))
    xs = rounded_weights(kept, eps)
    if max(xs.values()) == 0:
        return SolveResult(Schedule(), 0, "fptas", {**meta, "table_shape": (0, 0, 0)})
    table = build_weighted_table(reduced, xs)
    assert table.size <= fptas_bound(len(kept), instance.horizon, eps)
    x_star = table.best_weight()
    schedule = backtrack_weighted(reduced, table, x_star)
    return SolveResult(
        schedule,
        schedule_value(instance, schedule, weighted=True),
        "fptas",
        {**meta, "table_shape": table.shape, "rounded_weight": x_star},
    )
