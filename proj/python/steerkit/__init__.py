"""Steering quantifiers for two-qubit assemblages."""

from ._core import (
    Assemblage,
    DomainError,
    Error,
    InvalidArgument,
    SolverError,
    TwoQubitState,
    assemblage_from_state,
    bell_diagonal_rank2,
    bounds,
    delta_v,
    horodecki,
    hull_volume,
    lhs_surface,
    qse,
    werner,
)

__all__ = [
    "Assemblage",
    "DomainError",
    "Error",
    "InvalidArgument",
    "SolverError",
    "TwoQubitState",
    "assemblage_from_state",
    "bell_diagonal_rank2",
    "bounds",
    "delta_v",
    "horodecki",
    "hull_volume",
    "lhs_surface",
    "qse",
    "werner",
]
