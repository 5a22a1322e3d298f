"""Gaussian quantum steering of two-mode states in Schwarzschild-de Sitter spacetime."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BracketError,
    DegenerateStateError,
    DomainError,
    InvalidArgumentError,
    NumericError,
    SdsSteerError,
    SqueezingOverflowError,
    SweepSpecError,
)
from .gaussian import Direction, SteeringValues  # noqa: E402
from .pipeline import Regime, Scenario, SteeringResult, steering_from_spacetime  # noqa: E402
from .spacetime import HorizonData, SdSParameters, horizon_thermodynamics  # noqa: E402
from .sweep import SweepRow, SweepSpec, figure_preset, find_boundary, find_max_asymmetry, run_sweep  # noqa: E402

__all__ = [
    "BracketError",
    "DegenerateStateError",
    "Direction",
    "DomainError",
    "HorizonData",
    "InvalidArgumentError",
    "NumericError",
    "Regime",
    "Scenario",
    "SdSParameters",
    "SdsSteerError",
    "SqueezingOverflowError",
    "SteeringResult",
    "SteeringValues",
    "SweepRow",
    "SweepSpec",
    "SweepSpecError",
    "figure_preset",
    "find_boundary",
    "find_max_asymmetry",
    "horizon_thermodynamics",
    "run_sweep",
    "steering_from_spacetime",
]
