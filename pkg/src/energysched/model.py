"""Problem data model: jobs, instances, schedules, the energy ledger and JSON I/O.

Slots are 1-indexed. ``E(t)`` is the energy available immediately before slot
``t``; ``E(T+1)`` is the leftover energy at the end of the horizon. A slot
either harvests ``h_t`` or runs exactly one job, never both.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Any, Iterable, Mapping, NamedTuple

NEG_INF = -math.inf

INT64_SAFE = 2**62


class EASError(Exception):
    """Base error; ``code`` is a short stable identifier such as ``"bad-slot"``."""

    def __init__(self, code: str, message: str | None = None):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)


class InputError(EASError):
    """Malformed or out-of-range input data."""


class PreconditionError(EASError):
    """A solver was called on an instance outside its supported class."""


@dataclass(frozen=True)
class Job:
    id: int
    release: int
    due: int
    energy: int
    weight: int = 1

    def __post_init__(self):
        for name in ("id", "release", "due", "energy", "weight"):
            value = getattr(self, name)
            if not _is_int(value):
                raise InputError("not-integer", f"job field {name}={value!r}")
            if value < 0:
                raise InputError("negative-value", f"job {self.id} has {name}={value}")
        if self.release < 1:
            raise InputError("bad-release", f"job {self.id} releases at slot {self.release}")
        if self.release > self.due:
            raise InputError("bad-window", f"job {self.id} has release {self.release} > due {self.due}")


@dataclass(frozen=True)
class Instance:
    horizon: int
    harvest: tuple[int, ...]
    jobs: tuple[Job, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "harvest", tuple(self.harvest))
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if not _is_int(self.horizon) or self.horizon < 1:
            raise InputError("bad-horizon", f"horizon must be an integer >= 1, got {self.horizon!r}")
        if len(self.harvest) != self.horizon:
            raise InputError(
                "harvest-length", f"{len(self.harvest)} harvest values for horizon {self.horizon}"
            )
        for t, h in enumerate(self.harvest, start=1):
            if not _is_int(h):
                raise InputError("not-integer", f"harvest at slot {t} is {h!r}")
            if h < 0:
                raise InputError("negative-value", f"harvest at slot {t} is {h}")
        seen = set()
        for job in self.jobs:
            if job.id in seen:
                raise InputError("duplicate-id", f"job id {job.id} appears twice")
            seen.add(job.id)

    @property
    def n(self) -> int:
        return len(self.jobs)

    @cached_property
    def by_id(self) -> Mapping[int, Job]:
        return MappingProxyType({job.id: job for job in self.jobs})

    @cached_property
    def prefix_harvest(self) -> tuple[int, ...]:
        """``H[t] = h_1 + ... + h_t`` with ``H[0] = 0``."""
        out = [0]
        for h in self.harvest:
            out.append(out[-1] + h)
        return tuple(out)

    def h(self, t: int) -> int:
        return self.harvest[t - 1]

    def max_magnitude(self) -> int:
        """Upper bound on any ledger or energy value; used to pick an integer width."""
        return self.prefix_harvest[-1] + sum(job.energy for job in self.jobs) + 1


@dataclass(frozen=True, eq=False)
class Schedule:
    """Injective (when feasible) map from job id to slot."""

    assignments: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        pairs = sorted(dict(self.assignments).items())
        object.__setattr__(self, "assignments", MappingProxyType(dict(pairs)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Schedule):
            return NotImplemented
        return dict(self.assignments) == dict(other.assignments)

    def __hash__(self) -> int:
        return hash(tuple(self.assignments.items()))

    def __len__(self) -> int:
        return len(self.assignments)

    def __repr__(self) -> str:
        return f"Schedule({dict(self.assignments)!r})"

    @property
    def jobs(self) -> tuple[int, ...]:
        return tuple(self.assignments)

    @property
    def slots(self) -> tuple[int, ...]:
        return tuple(sorted(self.assignments.values()))

    def with_job(self, job_id: int, slot: int) -> Schedule:
        merged = dict(self.assignments)
        merged[job_id] = slot
        return Schedule(merged)

    def without(self, job_id: int) -> Schedule:
        return Schedule({j: t for j, t in self.assignments.items() if j != job_id})


class Violation(NamedTuple):
    job: int
    reason: str  # window | energy | slot-collision | unknown-job


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    violations: tuple[Violation, ...]
    ledger: tuple[int, ...]  # ledger[t-1] == E(t) for t in 1..T+1

    @property
    def leftover(self) -> int:
        return self.ledger[-1]

    def to_dict(self) -> dict[str, Any]:
        return {
            "feasible": self.feasible,
            "violations": [{"job": v.job, "reason": v.reason} for v in self.violations],
            "ledger": list(self.ledger),
            "leftover": self.leftover,
        }


@dataclass(frozen=True)
class SolveResult:
    schedule: Schedule
    objective: int
    algo: str
    meta: Mapping[str, Any] = field(default_factory=dict)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate_instance(instance: Instance) -> Instance:
    """Reject jobs whose due date lies past the horizon; returns the instance."""
    for job in instance.jobs:
        if job.due > instance.horizon:
            raise InputError(
                "due-past-horizon", f"job {job.id} due {job.due} > horizon {instance.horizon}"
            )
    return instance


def _energy_ledger(instance: Instance, schedule: Schedule) -> list[int]:
    T = instance.horizon
    by_id = instance.by_id
    drain = [0] * (T + 1)
    busy = [False] * (T + 1)
    for job_id, slot in schedule.assignments.items():
        job = by_id.get(job_id)
        if job is None or not 1 <= slot <= T:
            continue
        drain[slot] += job.energy + instance.harvest[slot - 1]
        busy[slot] = True
    ledger = [0]
    for t in range(1, T + 1):
        step = instance.harvest[t - 1]
        if busy[t]:
            step -= drain[t]
        ledger.append(ledger[-1] + step)
    return ledger


def available_energy(instance: Instance, schedule: Schedule, t: int) -> int:
    """``E_S(t)``; may be negative for infeasible schedules."""
    T = instance.horizon
    if not 1 <= t <= T + 1:
        raise InputError("bad-slot", f"slot {t} outside [1, {T + 1}]")
    for job_id, slot in schedule.assignments.items():
        if job_id not in instance.by_id:
            raise InputError("unknown-job", f"job {job_id} not in instance")
        if not 1 <= slot <= T:
            raise InputError("bad-slot", f"job {job_id} assigned to slot {slot}")
    H = instance.prefix_harvest
    consumed = 0
    for job_id, slot in schedule.assignments.items():
        if slot < t:
            consumed += instance.by_id[job_id].energy + instance.harvest[slot - 1]
    return H[t - 1] - consumed


def validate_schedule(instance: Instance, schedule: Schedule) -> FeasibilityReport:
    T = instance.horizon
    ledger = _energy_ledger(instance, schedule)
    by_slot: dict[int, list[int]] = {}
    for job_id, slot in schedule.assignments.items():
        by_slot.setdefault(slot, []).append(job_id)

    violations: list[Violation] = []
    for job_id, slot in schedule.assignments.items():
        job = instance.by_id.get(job_id)
        if job is None:
            violations.append(Violation(job_id, "unknown-job"))
            continue
        if not (job.release <= slot <= job.due and 1 <= slot <= T):
            violations.append(Violation(job_id, "window"))
            continue
        if len(by_slot[slot]) > 1:
            violations.append(Violation(job_id, "slot-collision"))
        if ledger[slot - 1] < job.energy:
            violations.append(Violation(job_id, "energy"))
    violations.sort()
    return FeasibilityReport(not violations, tuple(violations), tuple(ledger))


def is_feasible(instance: Instance, schedule: Schedule) -> bool:
    return validate_schedule(instance, schedule).feasible


def schedule_value(instance: Instance, schedule: Schedule, weighted: bool = False) -> int:
    total = 0
    for job_id in schedule.assignments:
        job = instance.by_id.get(job_id)
        if job is None:
            raise InputError("unknown-job", f"job {job_id} not in instance")
        total += job.weight if weighted else 1
    return total


def leftover_energy(instance: Instance, schedule: Schedule) -> int:
    return available_energy(instance, schedule, instance.horizon + 1)


def common_window(instance: Instance) -> tuple[int, int] | None:
    """The shared ``(release, due)`` of all jobs, or ``None`` if they differ or there are no jobs."""
    windows = {(job.release, job.due) for job in instance.jobs}
    if len(windows) != 1:
        return None
    return next(iter(windows))


def sorted_by_energy(jobs: Iterable[Job]) -> list[Job]:
    """Non-decreasing energy, ties broken by id."""
    return sorted(jobs, key=lambda job: (job.energy, job.id))


# ---- JSON ----------------------------------------------------------------


def instance_to_dict(instance: Instance) -> dict[str, Any]:
    return {
        "horizon": instance.horizon,
        "harvest": list(instance.harvest),
        "jobs": [
            {
                "id": job.id,
                "release": job.release,
                "due": job.due,
                "energy": job.energy,
                "weight": job.weight,
            }
            for job in instance.jobs
        ],
    }


def instance_from_dict(data: Any) -> Instance:
    if not isinstance(data, dict):
        raise InputError("malformed", "instance must be a JSON object")
    for key in ("horizon", "harvest", "jobs"):
        if key not in data:
            raise InputError("malformed", f"missing key {key!r}")
    if not isinstance(data["harvest"], list) or not isinstance(data["jobs"], list):
        raise InputError("malformed", "harvest and jobs must be arrays")
    jobs = []
    for raw in data["jobs"]:
        if not isinstance(raw, dict):
            raise InputError("malformed", "each job must be an object")
        try:
            jobs.append(
                Job(
                    id=raw["id"],
                    release=raw["release"],
                    due=raw["due"],
                    energy=raw["energy"],
                    weight=raw.get("weight", 1),
                )
            )
        except KeyError as exc:
            raise InputError("malformed", f"job missing key {exc.args[0]!r}") from None
    return Instance(horizon=data["horizon"], harvest=tuple(data["harvest"]), jobs=tuple(jobs))


def serialize_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2) + "\n"


def parse_instance(text: str) -> Instance:
    return instance_from_dict(_loads(text))


def schedule_to_dict(schedule: Schedule) -> dict[str, Any]:
    return {"assignments": {str(j): t for j, t in schedule.assignments.items()}}


def schedule_from_dict(data: Any) -> Schedule:
    if not isinstance(data, dict) or not isinstance(data.get("assignments"), dict):
        raise InputError("malformed", "schedule must be an object with an 'assignments' object")
    out = {}
    for key, slot in data["assignments"].items():
        try:
            job_id = int(key)
        except ValueError:
            raise InputError("malformed", f"job key {key!r} is not an integer") from None
        if str(job_id) != key or job_id < 0:
            raise InputError("malformed", f"job key {key!r} is not a canonical id")
        if not _is_int(slot):
            raise InputError("not-integer", f"slot for job {key} is {slot!r}")
        out[job_id] = slot
    return Schedule(out)


def serialize_schedule(schedule: Schedule) -> str:
    return json.dumps(schedule_to_dict(schedule), indent=2) + "\n"


def parse_schedule(text: str) -> Schedule:
    return schedule_from_dict(_loads(text))


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("malformed", f"invalid JSON: {exc}") from None
