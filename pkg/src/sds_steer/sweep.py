"""Parameter sweeps, regime boundaries and figure presets.

Sweeps vary one or two of the four inputs ``mass``, ``lambda``, ``s`` and
``omega`` on a uniform grid while holding the rest fixed. Grid points
outside the sub-Nariai region are kept in the output with
``admissible=False`` and empty numeric fields.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy import optimize

from .errors import BracketError, DomainError, InvalidArgumentError, SweepSpecError
from .pipeline import (
    Regime,
    Scenario,
    effective_log_argument,
    membrane_log_arguments,
    regime_from_log_arguments,
)
from .spacetime import horizon_thermodynamics, squeezing_parameter

PARAMETERS = ("mass", "lambda", "s", "omega")
THREADS_ENV = "SDS_STEER_THREADS"
GOLDEN_TOL = 1e-9
SCAN_POINTS = 512

COLUMNS = (
    "mass",
    "lambda",
    "s",
    "omega",
    "scenario",
    "admissible",
    "r_h",
    "r_c",
    "kappa_h",
    "kappa_c",
    "kappa_u",
    "t_h",
    "t_c",
    "t_eff",
    "r",
    "w",
    "gamma",
    "arg_ab",
    "arg_ba",
    "g_ab",
    "g_ba",
    "asym",
    "regime",
)
DEFAULT_OUTPUTS = COLUMNS


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)

    def as_dict(self) -> dict:
        return {"name": self.name, "lo": self.lo, "hi": self.hi, "steps": self.steps}


@dataclass(frozen=True)
class SweepSpec:
    scenario: Scenario
    fixed: Mapping[str, float]
    axis1: Axis
    axis2: Axis | None = None
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS

    def axes(self) -> list[Axis]:
        return [self.axis1] if self.axis2 is None else [self.axis1, self.axis2]

    def validate(self) -> "SweepSpec":
        problems = []
        if not isinstance(self.scenario, Scenario):
            problems.append(f"scenario: unknown value {self.scenario!r}")
        for i, ax in enumerate(self.axes(), start=1):
            tag = f"axis{i}"
            if ax.name not in PARAMETERS:
                problems.append(f"{tag}.name: {ax.name!r} not in {PARAMETERS}")
            if not (_is_finite(ax.lo) and _is_finite(ax.hi) and ax.lo < ax.hi):
                problems.append(f"{tag}: need finite lo < hi, got lo={ax.lo!r} hi={ax.hi!r}")
            if not isinstance(ax.steps, int) or isinstance(ax.steps, bool) or ax.steps < 2:
                problems.append(f"{tag}.steps: need an integer >= 2, got {ax.steps!r}")
        names = [ax.name for ax in self.axes()] + list(self.fixed)
        for p in PARAMETERS:
            count = names.count(p)
            if count == 0:
                problems.append(f"fixed: parameter {p!r} is neither fixed nor swept")
            elif count > 1:
                problems.append(f"fixed: parameter {p!r} given {count} times")
        for k, v in self.fixed.items():
            if k not in PARAMETERS:
                problems.append(f"fixed.{k}: unknown parameter")
            elif not _is_finite(v):
                problems.append(f"fixed.{k}: value {v!r} is not a finite number")
        unknown = [c for c in self.outputs if c not in COLUMNS]
        if unknown:
            problems.append(f"outputs: unknown columns {unknown}")
        if not self.outputs:
            problems.append("outputs: empty column list")
        if problems:
            raise SweepSpecError(problems)
        return self

    def as_dict(self) -> dict:
        return {
            "scenario": self.scenario.value,
            "fixed": dict(self.fixed),
            "axis1": self.axis1.as_dict(),
            "axis2": None if self.axis2 is None else self.axis2.as_dict(),
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SweepSpec":
        """Build and validate a spec from its JSON form (lowercase keys)."""
        problems = []
        if not isinstance(data, Mapping):
            raise SweepSpecError([f"spec must be a JSON object, got {type(data).__name__}"])
        extra = set(data) - {"scenario", "fixed", "axis1", "axis2", "outputs"}
        if extra:
            problems.append(f"unknown keys {sorted(extra)}")
        try:
            scenario = Scenario(data.get("scenario", "membrane"))
        except ValueError:
            problems.append(f"scenario: unknown value {data.get('scenario')!r}")
            scenario = Scenario.MEMBRANE
        fixed = data.get("fixed", {})
        if not isinstance(fixed, Mapping):
            problems.append("fixed: must be an object")
            fixed = {}
        axes = []
        for key in ("axis1", "axis2"):
            raw = data.get(key)
            if raw is None:
                if key == "axis1":
                    problems.append("axis1: missing")
                axes.append(None)
                continue
            try:
                axes.append(_axis_from_json(raw))
            except (TypeError, KeyError, ValueError) as exc:
                problems.append(f"{key}: malformed ({exc})")
                axes.append(None)
        outputs = data.get("outputs", list(DEFAULT_OUTPUTS))
        if not isinstance(outputs, Sequence) or isinstance(outputs, str):
            problems.append("outputs: must be a list of column names")
            outputs = list(DEFAULT_OUTPUTS)
        if problems:
            raise SweepSpecError(problems)
        return cls(scenario, dict(fixed), axes[0], axes[1], tuple(outputs)).validate()


def _axis_from_json(raw) -> Axis:
    if isinstance(raw, Mapping):
        name, lo, hi, steps = raw["name"], raw["lo"], raw["hi"], raw["steps"]
    else:
        name, lo, hi, steps = raw
    return Axis(str(name), float(lo), float(hi), steps if isinstance(steps, int) else _int_or_raise(steps))


def _int_or_raise(x):
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise ValueError(f"steps must be an integer, got {x!r}")


def _is_finite(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


@dataclass(frozen=True)
class SweepRow:
    mass: float
    lam: float
    s: float
    omega: float
    scenario: Scenario
    admissible: bool
    r_h: float | None = None
    r_c: float | None = None
    kappa_h: float | None = None
    kappa_c: float | None = None
    kappa_u: float | None = None
    t_h: float | None = None
    t_c: float | None = None
    t_eff: float | None = None
    r: float | None = None
    w: float | None = None
    gamma: float | None = None
    arg_ab: float | None = None
    arg_ba: float | None = None
    g_ab: float | None = None
    g_ba: float | None = None
    asym: float | None = None
    regime: Regime | None = field(default=None)

    def as_record(self, columns: Sequence[str] = COLUMNS) -> dict:
        full = {f.name: getattr(self, f.name) for f in fields(self)}
        full["lambda"] = full.pop("lam")
        full["scenario"] = self.scenario.value
        full["regime"] = None if self.regime is None else self.regime.value
        return {c: full[c] for c in columns}


def evaluate_point(mass: float, lam: float, s: float, omega: float, scenario=Scenario.MEMBRANE) -> SweepRow:
    """Evaluate one grid point; inadmissible backgrounds give a flagged row."""
    scenario = Scenario(scenario)
    mass, lam, s, omega = float(mass), float(lam), float(s), float(omega)
    try:
        hd = horizon_thermodynamics(mass, lam, omega)
    except DomainError:
        return SweepRow(mass, lam, s, omega, scenario, admissible=False)
    r = squeezing_parameter(omega, hd.kappa_h)
    w = squeezing_parameter(omega, hd.kappa_c)
    gamma = squeezing_parameter(omega, hd.kappa_u)
    if scenario is Scenario.MEMBRANE:
        arg_ab, arg_ba = membrane_log_arguments(s, r, w)
    else:
        arg_ab = arg_ba = effective_log_argument(s, gamma)
    g_ab, g_ba = max(0.0, arg_ab), max(0.0, arg_ba)
    return SweepRow(
        mass, lam, s, omega, scenario, True,
        r_h=hd.r_h, r_c=hd.r_c,
        kappa_h=hd.kappa_h, kappa_c=hd.kappa_c, kappa_u=hd.kappa_u,
        t_h=hd.t_h, t_c=hd.t_c, t_eff=hd.t_eff,
        r=r, w=w, gamma=gamma,
        arg_ab=arg_ab, arg_ba=arg_ba,
        g_ab=g_ab, g_ba=g_ba, asym=abs(g_ab - g_ba),
        regime=regime_from_log_arguments(arg_ab, arg_ba),
    )


def thread_count(default: int = 1) -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return default
    try:
        n = int(raw)
    except ValueError:
        raise InvalidArgumentError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InvalidArgumentError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def grid_points(spec: SweepSpec) -> list[dict[str, float]]:
    """Parameter assignments in row-major order (``axis1`` outermost)."""
    base = {k: float(v) for k, v in spec.fixed.items()}
    points = []
    outer = spec.axis1.values()
    inner = spec.axis2.values() if spec.axis2 is not None else [None]
    for x in outer:
        for y in inner:
            p = dict(base)
            p[spec.axis1.name] = float(x)
            if y is not None:
                p[spec.axis2.name] = float(y)
            points.append(p)
    return points


def run_sweep(spec: SweepSpec, threads: int | None = None) -> list[SweepRow]:
    """Evaluate every grid point of ``spec``; row order never depends on ``threads``."""
    spec.validate()
    points = grid_points(spec)
    n_threads = thread_count() if threads is None else threads

    def one(p):
        return evaluate_point(p["mass"], p["lambda"], p["s"], p["omega"], spec.scenario)

    if n_threads <= 1 or len(points) < 2:
        return [one(p) for p in points]
    with ThreadPoolExecutor(max_workers=n_threads) as pool:
        return list(pool.map(one, points, chunksize=max(1, len(points) // (4 * n_threads))))


class BoundaryKind(enum.Enum):
    DEATH_A_TO_B = "death-ab"
    DEATH_B_TO_A = "death-ba"
    ONE_TWO_WAY_TRANSITION = "transition"


def _check_fixed(vary: str, fixed: Mapping[str, float]) -> dict[str, float]:
    if vary not in PARAMETERS:
        raise InvalidArgumentError(f"cannot vary {vary!r}; choose one of {PARAMETERS}")
    missing = [p for p in PARAMETERS if p != vary and p not in fixed]
    if missing:
        raise InvalidArgumentError(f"missing fixed parameters {missing}")
    return {p: float(fixed[p]) for p in PARAMETERS if p != vary}


def boundary_objective(kind, vary: str, fixed: Mapping[str, float]) -> Callable[[float], float]:
    """Unclamped log argument whose zero defines the requested boundary.

    B->A death and the one-way/two-way transition share the same defining
    equality, so they share an objective.
    """
    kind = BoundaryKind(kind)
    base = _check_fixed(vary, fixed)

    def objective(x: float) -> float:
        p = dict(base)
        p[vary] = float(x)
        row = evaluate_point(p["mass"], p["lambda"], p["s"], p["omega"], Scenario.MEMBRANE)
        if not row.admissible:
            raise DomainError(f"{vary} = {x!r} is beyond the Nariai bound for {base}")
        return row.arg_ab if kind is BoundaryKind.DEATH_A_TO_B else row.arg_ba

    return objective


def find_boundary(kind, vary: str, bracket: tuple[float, float], fixed: Mapping[str, float], tol: float = 1e-12) -> float:
    """Bisect for the parameter value where the chosen steering direction dies.

    Raises ``BracketError`` (carrying the endpoint objective values) when the
    objective does not change sign over ``bracket``.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise InvalidArgumentError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")
    if not tol > 0:
        raise InvalidArgumentError(f"tol must be positive, got {tol}")
    f = boundary_objective(kind, vary, fixed)
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(
            f"no sign change on [{lo!r}, {hi!r}]: objective({lo!r}) = {f_lo!r}, objective({hi!r}) = {f_hi!r}",
            lo, hi, f_lo, f_hi,
        )
    return optimize.bisect(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=400)


def _golden_max(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def find_max_asymmetry(
    vary: str,
    span: tuple[float, float],
    fixed: Mapping[str, float],
    scenario=Scenario.MEMBRANE,
    points: int = SCAN_POINTS,
) -> tuple[float, float]:
    """Location and value of the largest steering asymmetry along one parameter.

    A uniform scan picks the best grid point (lowest index on ties); a
    golden-section search then refines inside its neighbouring cells.
    """
    scenario = Scenario(scenario)
    base = _check_fixed(vary, fixed)
    lo, hi = float(span[0]), float(span[1])
    if not lo < hi:
        raise InvalidArgumentError(f"range must satisfy lo < hi, got ({lo}, {hi})")

    def asym(x: float) -> float:
        p = dict(base)
        p[vary] = float(x)
        row = evaluate_point(p["mass"], p["lambda"], p["s"], p["omega"], scenario)
        return row.asym if row.admissible else -math.inf

    grid = np.linspace(lo, hi, points)
    vals = np.array([asym(x) for x in grid])
    if np.all(np.isneginf(vals)):
        raise DomainError(f"every point of {vary} in [{lo}, {hi}] is beyond the Nariai bound")
    i = int(np.argmax(vals))
    if vals[i] <= 0.0:
        return float(grid[i]), 0.0
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, points - 1)]
    x = _golden_max(asym, float(a), float(b), GOLDEN_TOL)
    fx = asym(x)
    if fx < vals[i]:
        return float(grid[i]), float(vals[i])
    return float(x), float(fx)


class FigureId(enum.Enum):
    FIG2 = "fig2"
    FIG3 = "fig3"
    FIG4A = "fig4a"
    FIG4B = "fig4b"
    FIG4C = "fig4c"
    FIG5A = "fig5a"
    FIG5B = "fig5b"
    FIG6 = "fig6"
    FIG7A = "fig7a"
    FIG7B = "fig7b"


STEPS_1D = 400
STEPS_2D = 101
_S_SPAN = (0.0, 5.0)
_TEMPS = ("kappa_h", "kappa_c", "g_ab", "g_ba", "asym", "regime")
_GRID = ("admissible", "g_ab", "g_ba", "asym", "regime")


def _mass_hi(lam: float) -> float:
    return 0.99 / (3.0 * math.sqrt(lam))


def _lambda_hi(mass: float) -> float:
    return 0.99 / (9.0 * mass * mass)


def figure_preset(fig) -> SweepSpec:
    """Sweep reproducing one of the figure panels.

    Fixed values follow the figure captions. Plotted ranges are not given
    there, so mass axes run to ``0.99/(3 sqrt(Lambda))`` and lambda axes to
    ``0.99/(9 M^2)``, keeping clear of the Nariai limit.
    """
    fig = FigureId(fig)
    mem, eff = Scenario.MEMBRANE, Scenario.EFFECTIVE
    if fig is FigureId.FIG2:
        return SweepSpec(mem, {"omega": 0.2, "lambda": 1.0, "s": 1.0},
                         Axis("mass", 0.01, _mass_hi(1.0), STEPS_1D), outputs=("mass",) + _TEMPS)
    if fig is FigureId.FIG3:
        return SweepSpec(mem, {"mass": 0.033, "omega": 1.0, "s": 1.0},
                         Axis("lambda", 0.5, _lambda_hi(0.033), STEPS_1D), outputs=("lambda",) + _TEMPS)
    if fig in (FigureId.FIG4A, FigureId.FIG4B, FigureId.FIG4C):
        mass = {FigureId.FIG4A: 0.01, FigureId.FIG4B: 0.1, FigureId.FIG4C: 0.2}[fig]
        return SweepSpec(mem, {"mass": mass, "lambda": 1.0, "omega": 0.2},
                         Axis("s", *_S_SPAN, STEPS_1D), outputs=("s", "g_ab", "g_ba", "asym", "regime"))
    if fig is FigureId.FIG5A:
        return SweepSpec(mem, {"lambda": 1.0, "omega": 0.2},
                         Axis("mass", 0.01, _mass_hi(1.0), STEPS_2D), Axis("s", *_S_SPAN, STEPS_2D),
                         outputs=("mass", "s") + _GRID)
    if fig is FigureId.FIG5B:
        return SweepSpec(mem, {"mass": 0.033, "omega": 1.0},
                         Axis("lambda", 0.5, _lambda_hi(0.033), STEPS_2D), Axis("s", *_S_SPAN, STEPS_2D),
                         outputs=("lambda", "s") + _GRID)
    if fig is FigureId.FIG6:
        # no-way steering at omega = s = 1 needs large lambda and M well below 0.01;
        # this window shows all three regimes and the Nariai edge
        return SweepSpec(mem, {"omega": 1.0, "s": 1.0},
                         Axis("lambda", 0.5, 100.0, STEPS_2D), Axis("mass", 0.001, 0.1, STEPS_2D),
                         outputs=("lambda", "mass") + _GRID)
    if fig is FigureId.FIG7A:
        return SweepSpec(eff, {"lambda": 1.0, "s": 1.0, "omega": 1.0},
                         Axis("mass", 0.01, _mass_hi(1.0), STEPS_1D),
                         outputs=("mass", "kappa_u", "t_eff", "g_ab", "g_ba", "asym", "regime"))
    # FIG7B: 0.5 exceeds the Nariai cap 0.44 at M = 0.5, so the axis starts lower.
    # Below Lambda ~ 0.08 the effective squeezing is < 1e-7 and g_ab equals
    # ln cosh 2s to the last bit, so its decrease is not resolvable in doubles.
    return SweepSpec(eff, {"mass": 0.5, "s": 1.0, "omega": 1.0},
                     Axis("lambda", 0.08, _lambda_hi(0.5), STEPS_1D),
                     outputs=("lambda", "kappa_u", "t_eff", "g_ab", "g_ba", "asym", "regime"))
