"""Hard instance families built from k-SUM and Knapsack, and certificate decoding.

k-SUM asks whether ``k`` of the positive integers ``alpha_1 >= ... >= alpha_n``
(sum ``S``) add up to ``beta``. Two constructions turn it into a scheduling
instance whose jobs can all be scheduled iff the answer is yes: one varies
release times, the other due dates. A Knapsack instance maps to a weighted
common-window instance whose optimum weight is the knapsack optimum.

Generated instances carry a metadata dict (the JSON sidecar of the CLI) from
which ``decode_certificate`` rebuilds the instance and reads a subset back out
of a schedule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Mapping

from .model import (
    Instance,
    InputError,
    Job,
    PreconditionError,
    Schedule,
    schedule_value,
    validate_schedule,
)

ARB_RELEASE = "ksum-arb-release"
ARB_DUE = "ksum-arb-due"
KNAPSACK = "knapsack"


@dataclass(frozen=True)
class KSumInput:
    values: tuple[int, ...]
    target: int
    k: int

    def __post_init__(self):
        vals = tuple(sorted((int(v) for v in self.values), reverse=True))
        object.__setattr__(self, "values", vals)
        n, S = len(vals), sum(vals)
        if any(v <= 0 for v in vals):
            raise InputError("bad-ksum", "values must be positive")
        if n <= 2 or S <= 2:
            raise InputError("bad-ksum", f"need n > 2 and S > 2, got n={n}, S={S}")
        if not 0 < self.target < S:
            raise InputError("bad-ksum", f"target must lie in (0, {S}), got {self.target}")
        if not 0 <= self.k < n:
            raise InputError("bad-ksum", f"k must lie in [0, {n}), got {self.k}")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def S(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class KnapsackInput:
    items: tuple[tuple[int, int], ...]  # (size, value)
    capacity: int
    threshold: int

    def __post_init__(self):
        items = tuple((int(b), int(v)) for b, v in self.items)
        object.__setattr__(self, "items", items)
        if not items:
            raise InputError("bad-knapsack", "at least one item is required")
        if any(b < 0 or v < 0 for b, v in items) or self.capacity < 0 or self.threshold < 0:
            raise InputError("bad-knapsack", "sizes, values, capacity and threshold must be non-negative")


@dataclass(frozen=True)
class ReductionCertificate:
    """Subset read off a schedule and whether it answers the source problem.

    ``indices`` are 0-based positions in the (sorted) source values or items.
    """

    reduction: str
    indices: tuple[int, ...]
    subset: tuple[Any, ...]
    valid: bool


def _check_width(instance: Instance, max_int_bits: int | None) -> Instance:
    if max_int_bits is not None and instance.max_magnitude() >= 2 ** (max_int_bits - 1):
        raise PreconditionError("int-width", f"constants exceed {max_int_bits}-bit integers")
    return instance


def ksum_to_eas_arbitrary_release(
    ks: KSumInput, max_int_bits: int | None = None
) -> tuple[Instance, int]:
    """Jobs released one per slot; all ``n`` schedulable iff the k-SUM answer is yes."""
    n, k, S, beta, a = ks.n, ks.k, ks.S, ks.target, ks.values
    big = S * S * n * n
    T = 2 * n - k + 2
    jobs = tuple(Job(i, i + 2, T, big + a[i] * S * n) for i in range(n))
    h = [0] * (T + 1)
    h[1] = k * big + beta * S * n
    for t in range(2, n + 2):
        h[t] = S - a[t - 2]
    h[n + 2] = (n - k) * big + (S - beta) * S * n - S * (n - k - 1) - beta
    return _check_width(Instance(T, tuple(h[1:]), jobs), max_int_bits), n


def ksum_to_eas_arbitrary_due(ks: KSumInput, max_int_bits: int | None = None) -> tuple[Instance, int]:
    """Staggered due dates plus one huge final job; threshold ``n + 1``."""
    n, k, S, beta, a = ks.n, ks.k, ks.S, ks.target, ks.values
    big = S * S * n * n
    huge = S**3 * n**3
    T = n + k + 4
    jobs = [Job(i, 2, k + 3 + i, big + a[i] * S * n) for i in range(n)]
    jobs.append(Job(n, 2, T, huge))
    h = [0] * (T + 1)
    h[1] = k * big + beta * S * n
    h[k + 2] = (n - k) * big + (S - beta) * S * n
    for t in range(k + 3, n + k + 3):
        h[t] = S + a[t - k - 3]
    h[n + k + 3] = huge - S * k - beta
    return _check_width(Instance(T, tuple(h[1:]), tuple(jobs)), max_int_bits), n + 1


def knapsack_to_weas(ks: KnapsackInput, max_int_bits: int | None = None) -> tuple[Instance, int]:
    n = len(ks.items)
    jobs = tuple(Job(i, 2, n + 1, b, v) for i, (b, v) in enumerate(ks.items))
    h = (ks.capacity,) + (0,) * n
    return _check_width(Instance(n + 1, h, jobs), max_int_bits), ks.threshold


def metadata(source: KSumInput | KnapsackInput, reduction: str, threshold: int) -> dict[str, Any]:
    """JSON-ready description from which the instance can be regenerated."""
    if isinstance(source, KnapsackInput):
        return {
            "reduction": reduction,
            "items": [list(item) for item in source.items],
            "capacity": source.capacity,
            "threshold": threshold,
        }
    return {
        "reduction": reduction,
        "values": list(source.values),
        "k": source.k,
        "beta": source.target,
        "threshold": threshold,
    }


def generate(source: KSumInput | KnapsackInput, reduction: str, max_int_bits: int | None = None):
    """``(instance, metadata)`` for the named reduction."""
    if reduction == ARB_RELEASE:
        inst, thr = ksum_to_eas_arbitrary_release(source, max_int_bits)
    elif reduction == ARB_DUE:
        inst, thr = ksum_to_eas_arbitrary_due(source, max_int_bits)
    elif reduction == KNAPSACK:
        inst, thr = knapsack_to_weas(source, max_int_bits)
    else:
        raise InputError("bad-reduction", f"unknown reduction {reduction!r}")
    return inst, metadata(source, reduction, thr)


def source_from_metadata(meta: Mapping[str, Any]) -> KSumInput | KnapsackInput:
    try:
        if meta["reduction"] == KNAPSACK:
            return KnapsackInput(tuple(map(tuple, meta["items"])), meta["capacity"], meta["threshold"])
        return KSumInput(tuple(meta["values"]), meta["beta"], meta["k"])
    except KeyError as exc:
        raise InputError("malformed", f"metadata missing {exc.args[0]!r}") from None


def ksum_brute_force(ks: KSumInput) -> tuple[int, ...] | None:
    """Indices of some ``k`` values summing to the target, or ``None``."""
    for idx in itertools.combinations(range(ks.n), ks.k):
        if sum(ks.values[i] for i in idx) == ks.target:
            return idx
    return None


def knapsack_brute_force(ks: KnapsackInput) -> int:
    """Best total value within capacity."""
    best = 0
    for k in range(1, len(ks.items) + 1):
        for idx in itertools.combinations(range(len(ks.items)), k):
            if sum(ks.items[i][0] for i in idx) <= ks.capacity:
                best = max(best, sum(ks.items[i][1] for i in idx))
    return best


def decode_certificate(meta: Mapping[str, Any], schedule: Schedule) -> ReductionCertificate:
    """Read the source-problem subset out of a threshold-meeting schedule."""
    reduction = meta.get("reduction")
    source = source_from_metadata(meta)
    instance, regenerated = generate(source, reduction)
    threshold = regenerated["threshold"]
    report = validate_schedule(instance, schedule)
    weighted = reduction == KNAPSACK
    if not report.feasible:
        raise PreconditionError("no-certificate", "schedule is infeasible for the generated instance")
    if schedule_value(instance, schedule, weighted=weighted) < threshold:
        raise PreconditionError("no-certificate", "schedule does not meet the threshold")

    if weighted:
        idx = tuple(sorted(schedule.assignments))
        items = tuple(source.items[i] for i in idx)
        valid = sum(b for b, _ in items) <= source.capacity and sum(v for _, v in items) >= source.threshold
        return ReductionCertificate(reduction, idx, items, valid)

    if reduction == ARB_RELEASE:
        lo, hi = 2, source.n + 1
    else:
        lo, hi = 2, source.k + 1
    idx = tuple(sorted(j for j, t in schedule.assignments.items() if lo <= t <= hi and j < source.n))
    vals = tuple(source.values[i] for i in idx)
    valid = len(idx) == source.k and sum(vals) == source.target
    return ReductionCertificate(reduction, idx, vals, valid)
