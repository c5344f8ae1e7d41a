"""Exhaustive ground-truth solvers for small instances with arbitrary windows.

The main search walks slots left to right and, at each slot, tries the free
jobs in ascending id order before idling. The first optimal schedule met in
that order is returned, which makes results deterministic. Branches are cut
when the jobs still able to run cannot beat the incumbent, and when the same
``(slot, set of placed jobs)`` was already reached with at least as much energy.
"""

from __future__ import annotations

import itertools

from .model import (
    Instance,
    PreconditionError,
    Schedule,
    SolveResult,
    sorted_by_energy,
    validate_instance,
    validate_schedule,
)

MAX_JOBS = 12
MAX_HORIZON = 14


def check_budget(instance: Instance) -> None:
    if instance.n > MAX_JOBS or instance.horizon > MAX_HORIZON:
        raise PreconditionError(
            "too-large-for-oracle",
            f"n={instance.n}, T={instance.horizon} exceeds n<={MAX_JOBS}, T<={MAX_HORIZON}",
        )


def within_budget(instance: Instance) -> bool:
    return instance.n <= MAX_JOBS and instance.horizon <= MAX_HORIZON


class _Search:
    def __init__(self, instance: Instance, weighted: bool):
        self.inst = instance
        self.jobs = sorted(instance.jobs, key=lambda job: job.id)
        self.value = [job.weight if weighted else 1 for job in self.jobs]
        self.T = instance.horizon

    def optimistic(self, t: int, mask: int) -> int:
        """Value of every unplaced job that can still run at or after ``t``."""
        vals = [
            v
            for k, (job, v) in enumerate(zip(self.jobs, self.value))
            if not mask >> k & 1 and job.due >= t
        ]
        slots_left = self.T - t + 1
        vals.sort(reverse=True)
        return sum(vals[:slots_left])

    def options(self, t: int, mask: int, energy: int):
        """Jobs that may run at ``t`` given ``energy``, ascending id."""
        for k, job in enumerate(self.jobs):
            if not mask >> k & 1 and job.release <= t <= job.due and energy >= job.energy:
                yield k

    def best(self) -> tuple[int, dict[int, int]]:
        best_val = -1
        best_plan: dict[int, int] = {}
        seen: dict[tuple[int, int], int] = {}
        plan: dict[int, int] = {}
        h = self.inst.harvest

        def go(t: int, mask: int, energy: int, val: int) -> None:
            nonlocal best_val, best_plan
            if t > self.T:
                if val > best_val:
                    best_val, best_plan = val, dict(plan)
                return
            if val + self.optimistic(t, mask) <= best_val:
                return
            key = (t, mask)
            if seen.get(key, -1) >= energy:
                return
            seen[key] = energy
            for k in self.options(t, mask, energy):
                plan[self.jobs[k].id] = t
                go(t + 1, mask | 1 << k, energy - self.jobs[k].energy, val + self.value[k])
                del plan[self.jobs[k].id]
            go(t + 1, mask, energy + h[t - 1], val)

        go(1, 0, 0, 0)
        return best_val, best_plan

    def all_with_value(self, target: int) -> list[dict[int, int]]:
        found = []
        plan: dict[int, int] = {}
        h = self.inst.harvest

        def go(t: int, mask: int, energy: int, val: int) -> None:
            if t > self.T:
                if val == target:
                    found.append(dict(plan))
                return
            if val + self.optimistic(t, mask) < target:
                return
            for k in self.options(t, mask, energy):
                plan[self.jobs[k].id] = t
                go(t + 1, mask | 1 << k, energy - self.jobs[k].energy, val + self.value[k])
                del plan[self.jobs[k].id]
            go(t + 1, mask, energy + h[t - 1], val)

        go(1, 0, 0, 0)
        return found


def solve_oracle(instance: Instance, weighted: bool = False) -> SolveResult:
    """Optimal count (or weight) and the first optimal schedule in search order."""
    validate_instance(instance)
    check_budget(instance)
    val, plan = _Search(instance, weighted).best()
    return SolveResult(Schedule(plan), val, "oracle", {"weighted": weighted})


def enumerate_optimal_schedules(instance: Instance, weighted: bool = False) -> list[Schedule]:
    """Every feasible schedule with the optimal objective."""
    validate_instance(instance)
    check_budget(instance)
    search = _Search(instance, weighted)
    target, _ = search.best()
    return [Schedule(plan) for plan in search.all_with_value(target)]


def solve_oracle_jobwise(instance: Instance, weighted: bool = False) -> int:
    """Optimal objective by a different route: subsets by decreasing value, then
    job-by-job slot assignment, each candidate checked with ``validate_schedule``.
    """
    validate_instance(instance)
    check_budget(instance)
    jobs = sorted(instance.jobs, key=lambda job: job.id)
    value = {job.id: (job.weight if weighted else 1) for job in jobs}
    subsets = [
        sub for k in range(len(jobs) + 1) for sub in itertools.combinations(jobs, k)
    ]
    subsets.sort(key=lambda sub: -sum(value[job.id] for job in sub))
    for sub in subsets:
        if _assignable(instance, list(sub), {}):
            return sum(value[job.id] for job in sub)
    return 0


def _assignable(instance: Instance, jobs, plan: dict[int, int]) -> bool:
    if not jobs:
        return validate_schedule(instance, Schedule(plan)).feasible
    job, rest = jobs[0], jobs[1:]
    used = set(plan.values())
    for t in range(job.release, job.due + 1):
        if t in used:
            continue
        plan[job.id] = t
        # prefix check: the jobs placed so far must already be feasible alone
        if validate_schedule(instance, Schedule(plan)).feasible and _assignable(instance, rest, plan):
            del plan[job.id]
            return True
        del plan[job.id]
    return False


def max_leftover_by_count(instance: Instance) -> dict[int, int]:
    """For each achievable count ``k``, the most leftover energy over feasible ``k``-job schedules."""
    validate_instance(instance)
    check_budget(instance)
    jobs = sorted(instance.jobs, key=lambda job: job.id)
    states = {0: 0}  # placed-job mask -> max energy before the current slot
    for t in range(1, instance.horizon + 1):
        h_t = instance.harvest[t - 1]
        nxt: dict[int, int] = {}
        for mask, energy in states.items():
            idle = energy + h_t
            if nxt.get(mask, -1) < idle:
                nxt[mask] = idle
            for k, job in enumerate(jobs):
                if mask >> k & 1 or not job.release <= t <= job.due or energy < job.energy:
                    continue
                m2 = mask | 1 << k
                left = energy - job.energy
                if nxt.get(m2, -1) < left:
                    nxt[m2] = left
        states = nxt
    out: dict[int, int] = {}
    for mask, energy in states.items():
        k = bin(mask).count("1")
        out[k] = max(out.get(k, energy), energy)
    return out


def prefix_slot_sets(instance: Instance, k: int) -> list[tuple[tuple[int, ...], int]]:
    """All slot sets on which the ``k`` smallest-energy jobs run feasibly in energy
    order, with the leftover energy of each. Intended for common-window instances.
    """
    validate_instance(instance)
    check_budget(instance)
    order = sorted_by_energy(instance.jobs)[:k]
    if len(order) < k:
        return []
    out = []
    total = instance.prefix_harvest[-1]
    for slots in itertools.combinations(range(1, instance.horizon + 1), k):
        schedule = Schedule({job.id: t for job, t in zip(order, slots)})
        if validate_schedule(instance, schedule).feasible:
            left = total - sum(job.energy for job in order) - sum(instance.harvest[t - 1] for t in slots)
            out.append((slots, left))
    return out
