"""Steering of a two-mode squeezed state after the horizon channels act on it.

Alice's mode sits near the black-hole horizon and is squeezed against a
causally disconnected partner with parameter ``r``; Bob's sits near the
cosmological horizon with parameter ``w``. In the effective-temperature
scenario both modes see the same channel with parameter ``gamma``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import gaussian as gc
from .errors import InvalidArgumentError
from .gaussian import Direction, SteeringValues
from .spacetime import SdSParameters, channel_squeezing

REGIME_THRESHOLD = 1e-12


class Regime(enum.Enum):
    TWO_WAY = "two-way"
    ONE_WAY_A_TO_B = "one-way-ab"
    ONE_WAY_B_TO_A = "one-way-ba"
    NO_WAY = "no-way"


class Scenario(enum.Enum):
    MEMBRANE = "membrane"
    EFFECTIVE = "effective"


@dataclass(frozen=True)
class SteeringResult:
    values: SteeringValues
    regime: Regime
    scenario: Scenario
    s: float
    r: float | None = None
    w: float | None = None
    gamma: float | None = None

    def as_record(self) -> dict:
        return {
            "scenario": self.scenario.value,
            "s": self.s,
            "r": self.r,
            "w": self.w,
            "gamma": self.gamma,
            "g_ab": self.values.g_a_to_b,
            "g_ba": self.values.g_b_to_a,
            "asym": self.values.asymmetry,
            "regime": self.regime.value,
        }


def _finite(name, x):
    x = float(x)
    if not math.isfinite(x):
        raise InvalidArgumentError(f"{name} must be finite, got {x!r}")
    return x


def _nonneg(name, x):
    x = _finite(name, x)
    if x < 0:
        raise InvalidArgumentError(f"{name} must be non-negative, got {x!r}")
    return x


def evolve_membrane_state(s: float, r: float, w: float, dtype=np.longdouble) -> np.ndarray:
    """Alice-Bob covariance matrix after both horizon channels.

    Builds the four-mode state on ``(A, B, A_bar, B_bar)``, squeezes ``A`` with
    ``A_bar`` by ``r`` and ``B`` with ``B_bar`` by ``w``, then traces out the
    barred modes.

    Extended precision is the default: near-pure states have ``det sigma``
    many orders of magnitude below the product of the diagonal blocks, and
    double-precision entries leave ~1e-11 error in the steering logs.
    """
    s = _finite("s", s)
    r = _nonneg("r", r)
    w = _nonneg("w", w)
    sigma = gc.direct_sum(gc.tmss_covariance(s, dtype=dtype), np.eye(4, dtype=dtype))
    channel = _embed_pair_squeezers(r, w, dtype)
    full = gc.apply_symplectic(channel, sigma)
    return gc.partial_trace(full, [0, 1])


def _embed_pair_squeezers(r: float, w: float, dtype) -> np.ndarray:
    """``S_{A,A_bar}(r) (+) S_{B,B_bar}(w)`` reordered to modes ``(A, B, A_bar, B_bar)``."""
    native = gc.direct_sum(gc.two_mode_squeezer(r, dtype), gc.two_mode_squeezer(w, dtype))
    # native order is (A, A_bar, B, B_bar)
    order = [0, 2, 1, 3]
    perm = [2 * m + j for m in order for j in (0, 1)]
    return native[np.ix_(perm, perm)]


def _hyperbolics(x):
    c = math.cosh(x)
    sh = math.sinh(x)
    return c * c, sh * sh


def membrane_log_arguments(s: float, r: float, w: float) -> tuple[float, float]:
    """Unclamped ``(ln(a/Z), ln(b/Z))``; positive values mean A->B resp. B->A steering."""
    c2s = math.cosh(2.0 * s)
    ch2r, sh2r = _hyperbolics(r)
    ch2w, sh2w = _hyperbolics(w)
    z = c2s * (ch2r * sh2w + sh2r * ch2w) + ch2r * ch2w + sh2r * sh2w
    a = c2s * ch2r + sh2r
    b = c2s * ch2w + sh2w
    return math.log(a / z), math.log(b / z)


def membrane_steering_closed_form(s: float, r: float, w: float) -> SteeringValues:
    s, r, w = _finite("s", s), _finite("r", r), _finite("w", w)
    ab, ba = membrane_log_arguments(s, r, w)
    return SteeringValues(max(0.0, ab), max(0.0, ba))


def effective_log_argument(s: float, gamma: float) -> float:
    c2s = math.cosh(2.0 * s)
    ch2g, sh2g = _hyperbolics(gamma)
    num = c2s * ch2g + sh2g
    den = ch2g * (2.0 * c2s * sh2g + ch2g) + sh2g * sh2g
    return math.log(num / den)


def effective_steering_closed_form(s: float, gamma: float) -> SteeringValues:
    """Steering in the effective-temperature scenario; both directions coincide."""
    s = _finite("s", s)
    gamma = _nonneg("gamma", gamma)
    g = max(0.0, effective_log_argument(s, gamma))
    return SteeringValues(g, g)


def evolve_effective_state(s: float, gamma: float, dtype=np.longdouble) -> np.ndarray:
    """Covariance matrix of the effective scenario: the same channel on both modes."""
    return evolve_membrane_state(s, gamma, gamma, dtype)


def regime_from_log_arguments(ab: float, ba: float) -> Regime:
    a_steers = ab > REGIME_THRESHOLD
    b_steers = ba > REGIME_THRESHOLD
    if a_steers and b_steers:
        return Regime.TWO_WAY
    if a_steers:
        return Regime.ONE_WAY_A_TO_B
    if b_steers:
        return Regime.ONE_WAY_B_TO_A
    return Regime.NO_WAY


def classify_regime(s: float, r: float, w: float) -> Regime:
    """Two-way / one-way / no-way classification of the membrane-scenario state.

    Decided on the unclamped log arguments; a direction counts as steering only
    when its argument exceeds ``REGIME_THRESHOLD``.
    """
    return regime_from_log_arguments(*membrane_log_arguments(_finite("s", s), r, w))


def steering_from_spacetime(
    params: SdSParameters, s: float, scenario: Scenario | str = Scenario.MEMBRANE, *, numeric: bool = False
) -> SteeringResult:
    """Steering for a given background, initial squeezing and scenario.

    With ``numeric=True`` the values come from the covariance-matrix pipeline
    instead of the closed forms; both must agree.
    """
    scenario = Scenario(scenario)
    s = _finite("s", s)
    sq = channel_squeezing(params)
    if scenario is Scenario.MEMBRANE:
        if numeric:
            values = gc.steering_values(evolve_membrane_state(s, sq.r, sq.w))
        else:
            values = membrane_steering_closed_form(s, sq.r, sq.w)
        return SteeringResult(values, classify_regime(s, sq.r, sq.w), scenario, s, r=sq.r, w=sq.w)
    if numeric:
        values = gc.steering_values(evolve_effective_state(s, sq.gamma))
    else:
        values = effective_steering_closed_form(s, sq.gamma)
    arg = effective_log_argument(s, sq.gamma)
    return SteeringResult(values, regime_from_log_arguments(arg, arg), scenario, s, gamma=sq.gamma)


__all__ = [
    "Direction",
    "Regime",
    "Scenario",
    "SteeringResult",
    "classify_regime",
    "effective_steering_closed_form",
    "evolve_effective_state",
    "evolve_membrane_state",
    "membrane_log_arguments",
    "membrane_steering_closed_form",
    "steering_from_spacetime",
]
