"""Greedy 1/2-approximation for unweighted instances with arbitrary windows.

Every iteration commits the (job, slot) pair with the smallest
``Q = e_j + h_t`` among pairs that can be added without breaking any job
already placed. Ties go to the earlier slot, then the smaller job id.

``greedy_step`` finds that pair in one left-to-right sweep. It keeps at most one
tentative job: at each free slot the cheapest available unscheduled job is
tried, using the running energy plus the energy a current tentative job would
hand back. When a committed job later runs short, the tentative job is dropped
and its energy returned. ``reference_step`` is the brute-force definition and
the two are tested to agree.
"""

from __future__ import annotations

import heapq

from .model import Instance, Schedule, SolveResult, validate_instance, validate_schedule


def _unscheduled(instance: Instance, partial: Schedule, unscheduled) -> set[int]:
    if unscheduled is None:
        return {job.id for job in instance.jobs if job.id not in partial.assignments}
    return set(unscheduled) - set(partial.assignments)


def greedy_step(instance: Instance, partial: Schedule, unscheduled=None) -> tuple[int, int] | None:
    """Minimum-``Q`` feasible ``(job id, slot)`` to add to ``partial``, or ``None``."""
    pending = _unscheduled(instance, partial, unscheduled)
    jobs = sorted((instance.by_id[j] for j in pending), key=lambda job: job.release)
    at = {t: instance.by_id[j].energy for j, t in partial.assignments.items()}

    heap: list[tuple[int, int, int]] = []  # (energy, id, due)
    nxt = 0
    energy = 0
    q = None  # Q of the tentative pair; None when there is none
    pick = None
    for t in range(1, instance.horizon + 1):
        h_t = instance.harvest[t - 1]
        if t in at:
            energy -= at[t]
            if energy < 0 and q is not None:
                # the tentative job starves a committed one: undo it
                energy += q
                q = None
                pick = None
            continue
        while nxt < len(jobs) and jobs[nxt].release <= t:
            job = jobs[nxt]
            heapq.heappush(heap, (job.energy, job.id, job.due))
            nxt += 1
        while heap and heap[0][2] < t:
            heapq.heappop(heap)
        if not heap:
            energy += h_t
            continue
        e_k, k, _ = heap[0]
        free = energy + (q or 0)
        if free >= e_k and (q is None or e_k + h_t < q):
            energy = free - e_k
            q = e_k + h_t
            pick = (k, t)
        else:
            energy += h_t
    return pick


def reference_step(instance: Instance, partial: Schedule, unscheduled=None) -> tuple[int, int] | None:
    """Try every unscheduled job in every free slot of its window and re-validate."""
    pending = _unscheduled(instance, partial, unscheduled)
    used = set(partial.assignments.values())
    best = None
    for j in sorted(pending):
        job = instance.by_id[j]
        for t in range(job.release, min(job.due, instance.horizon) + 1):
            if t in used:
                continue
            key = (job.energy + instance.harvest[t - 1], t, j)
            if best is not None and key >= best:
                continue
            if validate_schedule(instance, partial.with_job(j, t)).feasible:
                best = key
    return None if best is None else (best[2], best[1])


def solve_greedy(instance: Instance, reference: bool = False) -> SolveResult:
    validate_instance(instance)
    step = reference_step if reference else greedy_step
    schedule = Schedule()
    steps = []
    while True:
        pair = step(instance, schedule)
        if pair is None:
            break
        schedule = schedule.with_job(*pair)
        steps.append(pair)
    return SolveResult(schedule, len(schedule), "greedy", {"steps": tuple(steps)})
