"""Schwarz-function curve shortening flow: exact solutions, identity checks and a marker solver."""

from ._core import (
    NumericalBlowupError,
    OutOfWindowError,
    SchwarzflowError,
    area,
    cli,
    curvature,
    flow,
    implicit_residual,
    ode_residual,
    resample,
    residual,
    sample,
    verify,
    window,
)

__all__ = [
    "NumericalBlowupError",
    "OutOfWindowError",
    "SchwarzflowError",
    "area",
    "cli",
    "curvature",
    "flow",
    "implicit_residual",
    "ode_residual",
    "resample",
    "residual",
    "sample",
    "verify",
    "window",
]
