"""Solvers for scheduling unit jobs on an energy-harvesting device.

Each slot either harvests ``h_t`` energy or runs one job that draws ``e_i``
from what has been stored so far. The goal is to run as many jobs (or as much
weight) as possible inside their release/due windows.
"""

from .dp import build_table, check_common_window, solve_count
from .fast import insertion_candidates, solve_slots
from .greedy import greedy_step, reference_step, solve_greedy
from .model import (
    EASError,
    FeasibilityReport,
    InputError,
    Instance,
    Job,
    PreconditionError,
    Schedule,
    SolveResult,
    available_energy,
    parse_instance,
    parse_schedule,
    schedule_value,
    serialize_instance,
    serialize_schedule,
    validate_instance,
    validate_schedule,
)
from .oracle import enumerate_optimal_schedules, solve_oracle
from .reductions import (
    KnapsackInput,
    KSumInput,
    ReductionCertificate,
    decode_certificate,
    knapsack_to_weas,
    ksum_to_eas_arbitrary_due,
    ksum_to_eas_arbitrary_release,
)
from .weighted import solve_exact_weighted, solve_fptas

__all__ = [
    "EASError",
    "FeasibilityReport",
    "InputError",
    "Instance",
    "Job",
    "KSumInput",
    "KnapsackInput",
    "PreconditionError",
    "ReductionCertificate",
    "Schedule",
    "SolveResult",
    "available_energy",
    "build_table",
    "check_common_window",
    "decode_certificate",
    "enumerate_optimal_schedules",
    "greedy_step",
    "insertion_candidates",
    "knapsack_to_weas",
    "ksum_to_eas_arbitrary_due",
    "ksum_to_eas_arbitrary_release",
    "parse_instance",
    "parse_schedule",
    "reference_step",
    "schedule_value",
    "serialize_instance",
    "serialize_schedule",
    "solve_count",
    "solve_exact_weighted",
    "solve_fptas",
    "solve_greedy",
    "solve_oracle",
    "solve_slots",
    "validate_instance",
    "validate_schedule",
]
