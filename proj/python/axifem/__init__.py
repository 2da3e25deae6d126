"""Weighted H(div) finite elements and multigrid for axisymmetric Fourier modes."""

from ._core import (
    AxifemError,
    CheckResult,
    MixedErrorRow,
    Multigrid,
    SolveReport,
    error_table,
    manufactured_solution,
    mesh,
    mesh_json,
    mixed_csv,
    random_vector,
    verify,
)

__all__ = [
    "AxifemError",
    "CheckResult",
    "MixedErrorRow",
    "Multigrid",
    "SolveReport",
    "error_table",
    "manufactured_solution",
    "mesh",
    "mesh_json",
    "mixed_csv",
    "random_vector",
    "verify",
]
