"""Incremental slot-set solver for unweighted common-window instances.

Jobs are taken in non-decreasing ``(e_i, id)`` order. Each round inserts one
slot into the current slot set: among all slots whose insertion keeps the set
feasible for the next job, the one with the smallest ``(h_t, t)``. The ``j``-th
smallest job runs in the ``j``-th smallest slot. After ``i`` rounds the set is
the schedule of the first ``i`` jobs with the most leftover energy.

Two interchangeable methods:

``rescan``
    Literal rounds. Each round computes every gap's cheapest feasible slot from
    the current ledger in O(T). Arbitrary precision, O(nT) overall.
``indexed``
    One pass over the window slots in ``(h_t, t)`` order. A slot rejected once
    can never become feasible later, so each slot is examined once and the
    feasibility test runs in O(log T) on a segment tree (see ``_kernel``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dp import fits_int64, require_common_window
from .model import Instance, Job, PreconditionError, Schedule, SolveResult, sorted_by_energy


@dataclass(frozen=True)
class SlotSet:
    slots: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))
        if any(a >= b for a, b in zip(self.slots, self.slots[1:])):
            raise ValueError(f"slots must be strictly increasing: {self.slots}")

    def __len__(self) -> int:
        return len(self.slots)

    def __contains__(self, t: int) -> bool:
        return t in self.slots

    def insert(self, t: int) -> SlotSet:
        return SlotSet(tuple(sorted(self.slots + (t,))))

    def assign(self, order) -> Schedule:
        """Assign ``order[j]`` to the ``j``-th slot."""
        return Schedule({job.id: t for job, t in zip(order, self.slots)})


@dataclass(frozen=True)
class FastResult:
    """Slot-set view of a run; ``inserted`` lists slots in insertion order."""

    order: tuple[Job, ...]
    inserted: tuple[int, ...]

    @property
    def slots(self) -> SlotSet:
        return SlotSet(tuple(sorted(self.inserted)))

    def history(self) -> list[SlotSet]:
        """Slot set after each insertion; quadratic size, meant for small instances."""
        return [SlotSet(tuple(sorted(self.inserted[:k]))) for k in range(1, len(self.inserted) + 1)]


def _energies(order) -> list[int]:
    return [job.energy for job in order]


def insertion_candidates(current: SlotSet, instance: Instance, i: int) -> list[tuple[int, int, int]]:
    """Cheapest feasible insertion per gap for job ``i`` (1-based, energy order).

    ``current`` holds the ``i - 1`` slots of the first ``i - 1`` jobs. Gap ``j``
    is the open interval ``(t_{j-1}, t_j)`` with ``t_0 = 0`` and
    ``t_i = T + 1``. Returns ``(j, s, h_s)`` for every gap that has a feasible
    slot ``s``.

    Inserting ``s`` in gap ``j`` needs ``E(s) >= e_j``; each old slot ``t_k``
    with ``k >= j`` then hosts job ``k + 1`` with ``h_s + e_k`` less energy,
    so ``h_s`` may not exceed ``min_{k >= j} (E(t_k) - e_k - e_{k+1})``.
    """
    r, d = require_common_window(instance)
    order = sorted_by_energy(instance.jobs)
    e = _energies(order)
    slots = current.slots
    if len(slots) != i - 1:
        raise ValueError(f"slot set has {len(slots)} slots, expected {i - 1}")
    T = instance.horizon
    h = instance.harvest
    H = instance.prefix_harvest

    # E(t_k) under the current assignment and the shifted slack for each old slot
    ledger_at = []
    consumed = 0
    for k, t in enumerate(slots):
        ledger_at.append(H[t - 1] - consumed)
        consumed += e[k] + h[t - 1]
    slack = [ledger_at[k] - e[k] - e[k + 1] for k in range(len(slots))]
    cap: list[int | None] = [None] * (len(slots) + 1)  # cap[j-1] = min over k >= j
    for k in range(len(slots) - 1, -1, -1):
        nxt = cap[k + 1]
        cap[k] = slack[k] if nxt is None else min(slack[k], nxt)

    out = []
    bounds = (0,) + slots + (T + 1,)
    consumed = 0
    for j in range(1, len(slots) + 2):
        lo, hi = bounds[j - 1], bounds[j]
        if j >= 2:
            consumed += e[j - 2] + h[slots[j - 2] - 1]
        best = None
        for s in range(max(lo + 1, r), min(hi - 1, d) + 1):
            if H[s - 1] - consumed < e[j - 1]:
                continue
            if cap[j - 1] is not None and h[s - 1] > cap[j - 1]:
                continue
            if best is None or h[s - 1] < h[best - 1]:
                best = s
        if best is not None:
            out.append((j, best, h[best - 1]))
    return out


def _run_rescan(instance: Instance, order) -> tuple[int, ...]:
    current = SlotSet()
    inserted = []
    for i in range(1, len(order) + 1):
        cands = insertion_candidates(current, instance, i)
        if not cands:
            break
        _, s, _ = min(cands, key=lambda c: (c[2], c[1]))
        current = current.insert(s)
        inserted.append(s)
    return tuple(inserted)


def _run_indexed(instance: Instance, order, r: int, d: int) -> tuple[int, ...]:
    from ._kernel import incremental_slots

    T = instance.horizon
    n = len(order)
    h = np.zeros(T + 1, dtype=np.int64)
    h[1:] = instance.harvest
    H = np.cumsum(h)
    P = np.zeros(n + 2, dtype=np.int64)
    P[1 : n + 1] = np.cumsum(np.asarray(_energies(order), dtype=np.int64))
    P[n + 1] = P[n]
    window = np.arange(r, d + 1, dtype=np.int64)
    order_slots = window[np.lexsort((window, h[window]))]
    out = np.zeros(max(n, 1), dtype=np.int64)
    used = incremental_slots(h, H, P, order_slots, n, T, out)
    return tuple(int(s) for s in out[:used])


def run(instance: Instance, method: str = "auto") -> FastResult:
    r, d = require_common_window(instance)
    order = tuple(sorted_by_energy(instance.jobs))
    if method == "auto":
        method = "indexed" if fits_int64(instance) else "rescan"
    if method == "indexed":
        if not fits_int64(instance):
            raise PreconditionError("int-width", "values exceed the 64-bit kernel")
        inserted = _run_indexed(instance, order, r, d) if order else ()
    elif method == "rescan":
        inserted = _run_rescan(instance, order)
    else:
        raise ValueError(f"unknown method {method!r}")
    return FastResult(order, inserted)


def solve_slots(instance: Instance, method: str = "auto", history: bool = False) -> SolveResult:
    """Maximum-cardinality schedule with the most leftover energy.

    ``meta`` carries ``slots`` (sorted), ``leftover`` and, if ``history`` is
    set, ``history``: the slot set after each insertion.
    """
    res = run(instance, method)
    slots = res.slots
    schedule = slots.assign(res.order)
    e_used = sum(job.energy for job in res.order[: len(slots)])
    h_used = sum(instance.harvest[t - 1] for t in slots.slots)
    meta = {"slots": slots.slots, "leftover": instance.prefix_harvest[-1] - e_used - h_used}
    if history:
        meta["history"] = tuple(s.slots for s in res.history())
    return SolveResult(schedule, len(slots), "fast", meta)


def warm_up() -> None:
    """Compile (or load from cache) the JIT kernel so later timings exclude it."""
    demo = Instance(3, (1, 2, 3), (Job(0, 1, 3, 1), Job(1, 1, 3, 2)))
    run(demo, "indexed")
