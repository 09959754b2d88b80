"""Model GB random CSP workbench: generation, exhaustive search, the
unit-clause heuristic, closed-form predictions and seeded sweeps."""

from ._core import (
    Constraint,
    GbcspError,
    Instance,
    Params,
    SearchStats,
    UCOutcome,
    UCTag,
    analytics,
    harness,
    oracle,
    read_instance,
    run_uc,
    sample_instance,
    solve_all,
    uc_success_rate,
    write_instance,
)

__all__ = [
    "Constraint",
    "GbcspError",
    "Instance",
    "Params",
    "SearchStats",
    "UCOutcome",
    "UCTag",
    "analytics",
    "harness",
    "oracle",
    "read_instance",
    "run_uc",
    "sample_instance",
    "solve_all",
    "uc_success_rate",
    "write_instance",
]
