"""O(nT) dynamic program for unweighted scheduling with one common window.

``A(i, t)`` is the most energy available at the start of slot ``t + 1`` over
schedules that place exactly the ``i`` smallest-energy jobs within slots
``1..t``. Following the recurrence literally, slot 1 is never used for a job:
the first row starts at ``t = 2`` and is guarded by ``H(t-1) >= e_1``.

Rows are computed in closed form. Unrolling the recurrence gives

    A(i, t) = H(t) + max_{s <= t} [A(i-1, s-1) - e_i - H(s)]

over the slots ``s`` where job ``i`` may run and ``A(i-1, s-1) >= e_i``, which
numpy evaluates with one running maximum per row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    INT64_SAFE,
    NEG_INF,
    Instance,
    Job,
    PreconditionError,
    Schedule,
    SolveResult,
    sorted_by_energy,
    validate_instance,
)


@dataclass(frozen=True, eq=False)
class DpTable:
    """Values of ``A(i, t)`` for ``i`` in ``1..n`` and ``t`` in ``1..T``.

    Attributes:
        order: jobs in the row order of the table (non-decreasing energy).
        values: ``values[i-1, t-1]``; int64, or object for arbitrary precision.
        mask: ``True`` where the entry is reachable; other entries are meaningless.
    """

    order: tuple[Job, ...]
    values: np.ndarray
    mask: np.ndarray

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def horizon(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def __call__(self, i: int, t: int) -> int | float:
        """``A(i, t)``, or ``-inf`` when no schedule reaches it."""
        if not self.mask[i - 1, t - 1]:
            return NEG_INF
        return int(self.values[i - 1, t - 1])

    def reachable(self, i: int, t: int) -> bool:
        return bool(self.mask[i - 1, t - 1])

    def best_count(self) -> int:
        hits = np.flatnonzero(self.mask[:, -1])
        return int(hits[-1]) + 1 if hits.size else 0


def check_common_window(instance: Instance) -> bool:
    return len({(job.release, job.due) for job in instance.jobs}) <= 1


def require_common_window(instance: Instance) -> tuple[int, int]:
    """Return the shared window ``(r, d)``; raise ``not-common-window`` otherwise."""
    validate_instance(instance)
    windows = {(job.release, job.due) for job in instance.jobs}
    if len(windows) > 1:
        raise PreconditionError("not-common-window", f"{len(windows)} distinct windows")
    if not windows:
        return 1, instance.horizon
    return next(iter(windows))


def fits_int64(instance: Instance) -> bool:
    return instance.max_magnitude() < INT64_SAFE


def build_table(instance: Instance, backend: str = "auto") -> DpTable:
    """Fill the table.

    ``backend`` is ``"numpy"`` (int64 rows), ``"python"`` (the recurrence cell by
    cell, arbitrary precision) or ``"auto"``, which picks numpy whenever every
    value fits comfortably in 64 bits.
    """
    r, d = require_common_window(instance)
    if not instance.jobs:
        raise PreconditionError("no-jobs", "the table needs at least one job")
    order = tuple(sorted_by_energy(instance.jobs))
    if backend == "auto":
        backend = "numpy" if fits_int64(instance) else "python"
    if backend == "numpy":
        if not fits_int64(instance):
            raise PreconditionError("int-width", "values exceed the 64-bit backend")
        values, mask = _rows_numpy(instance, order, r, d)
    elif backend == "python":
        values, mask = _rows_python(instance, order, r, d)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return DpTable(order, values, mask)


def _rows_python(instance: Instance, order, r: int, d: int):
    T = instance.horizon
    h = instance.harvest
    H = instance.prefix_harvest
    lo = max(r, 2)
    values = np.zeros((len(order), T), dtype=object)
    mask = np.zeros((len(order), T), dtype=bool)
    prev = None
    for i, job in enumerate(order, start=1):
        row: list[int | None] = [None] * (T + 1)  # row[t], row[0] unused
        for t in range(2, T + 1):
            best = None if row[t - 1] is None else row[t - 1] + h[t - 1]
            if lo <= t <= d:
                avail = H[t - 1] if i == 1 else prev[t - 1]
                if avail is not None and avail >= job.energy:
                    cand = avail - job.energy
                    if best is None or cand > best:
                        best = cand
            row[t] = best
            if best is not None:
                values[i - 1, t - 1] = best
                mask[i - 1, t - 1] = True
        prev = row
    return values, mask


def _rows_numpy(instance: Instance, order, r: int, d: int):
    T = instance.horizon
    H = np.asarray(instance.prefix_harvest, dtype=np.int64)  # H[0..T]
    lo = max(r, 2)
    slots = np.arange(T + 1)
    in_window = (slots >= lo) & (slots <= d)
    floor = np.int64(-INT64_SAFE)

    prev_val = H.copy()  # A(0, t) = H(t); index = t
    prev_ok = np.ones(T + 1, dtype=bool)
    vals = np.empty((len(order), T), dtype=np.int64)
    oks = np.empty((len(order), T), dtype=bool)
    for i, job in enumerate(order):
        before_val = np.empty(T + 1, dtype=np.int64)
        before_ok = np.zeros(T + 1, dtype=bool)
        before_val[0] = 0
        before_val[1:] = prev_val[:-1]  # A(i-1, s-1) at index s
        before_ok[1:] = prev_ok[:-1]
        valid = in_window & before_ok & (before_val >= job.energy)
        cand = np.where(valid, before_val - job.energy - H, floor)
        run = np.maximum.accumulate(cand)
        ok = np.logical_or.accumulate(valid)
        cur = np.where(ok, H + np.where(ok, run, 0), 0)
        vals[i] = cur[1:]
        oks[i] = ok[1:]
        prev_val, prev_ok = cur, ok
    return vals, oks


def backtrack(instance: Instance, table: DpTable, m: int) -> Schedule:
    """Rebuild an ``m``-job schedule whose leftover equals ``A(m, T)``; idles when it can."""
    assignments = {}
    h = instance.harvest
    i, t = m, instance.horizon
    while i > 0:
        if t >= 2 and table.mask[i - 1, t - 2] and (
            table.values[i - 1, t - 2] + h[t - 1] == table.values[i - 1, t - 1]
        ):
            t -= 1
            continue
        assignments[table.order[i - 1].id] = t
        i -= 1
        t -= 1
    return Schedule(assignments)


def solve_count(instance: Instance, backend: str = "auto") -> SolveResult:
    """Largest ``m`` with ``A(m, T) >= 0`` plus a backtracked schedule."""
    require_common_window(instance)
    if not instance.jobs:
        return SolveResult(Schedule(), 0, "dp", {"leftover": instance.prefix_harvest[-1]})
    table = build_table(instance, backend)
    m = table.best_count()
    if m == 0:
        return SolveResult(Schedule(), 0, "dp", {"leftover": instance.prefix_harvest[-1]})
    schedule = backtrack(instance, table, m)
    return SolveResult(schedule, m, "dp", {"leftover": table(m, instance.horizon)})
