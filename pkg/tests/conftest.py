import itertools

import pytest
from hypothesis import strategies as st

from energysched.model import Instance, Job, Schedule, validate_schedule

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def report_line():
    def record(number: int, name: str, passed: bool, detail: str) -> None:
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {name} ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def make(harvest, jobs, horizon=None):
    """Instance from ``harvest`` and ``(release, due, energy[, weight])`` tuples; ids count from 1."""
    return Instance(
        horizon or len(harvest),
        tuple(harvest),
        tuple(Job(i, *fields) for i, fields in enumerate(jobs, start=1)),
    )


def brute_force(instance: Instance, weighted: bool = False):
    """Best objective and best leftover at that objective, over every injective
    partial assignment checked with ``validate_schedule``. Tiny instances only.
    """
    best = (0, instance.prefix_harvest[-1])
    jobs = instance.jobs
    T = instance.horizon
    for k in range(1, len(jobs) + 1):
        for subset in itertools.combinations(jobs, k):
            value = sum(j.weight for j in subset) if weighted else k
            for slots in itertools.permutations(range(1, T + 1), k):
                sched = Schedule({j.id: t for j, t in zip(subset, slots)})
                report = validate_schedule(instance, sched)
                if report.feasible and (value, report.leftover) > best:
                    best = (value, report.leftover)
    return best


def tie_break_best(inst, candidates):
    """Most leftover first; then the slot set whose harvest ranks, largest first,
    are lexicographically smallest (ties in ``h`` broken by slot index).
    """
    rank = {t: r for r, t in enumerate(sorted(range(1, inst.horizon + 1), key=lambda t: (inst.h(t), t)))}
    top = max(left for _, left in candidates)
    tied = [slots for slots, left in candidates if left == top]
    return min(tied, key=lambda slots: sorted((rank[t] for t in slots), reverse=True)), tied


@st.composite
def instances(draw, max_n=5, max_t=7, emin=1, emax=6, hmax=6, wmax=1, common=True):
    T = draw(st.integers(1, max_t))
    n = draw(st.integers(1, max_n))
    harvest = draw(st.lists(st.integers(0, hmax), min_size=T, max_size=T))

    def window():
        r = draw(st.integers(1, T))
        return r, draw(st.integers(r, T))

    shared = window() if common else None
    jobs = []
    for i in range(n):
        r, d = shared if common else window()
        jobs.append(Job(i, r, d, draw(st.integers(emin, emax)), draw(st.integers(0, wmax))))
    return Instance(T, tuple(harvest), tuple(jobs))


def feasible_schedules(instance: Instance, rng, tries: int = 30):
    """Random feasible schedules found by rejection sampling."""
    out = []
    T = instance.horizon
    for _ in range(tries):
        k = rng.randint(1, min(instance.n, T))
        subset = rng.sample(list(instance.jobs), k)
        slots = rng.sample(range(1, T + 1), k)
        sched = Schedule({j.id: t for j, t in zip(subset, slots)})
        if validate_schedule(instance, sched).feasible:
            out.append(sched)
    return out
