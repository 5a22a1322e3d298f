"""Schwarzschild-de Sitter geometry and horizon thermodynamics.

Geometric units (G = c = hbar = k_B = 1). The metric function is
``f(r) = 1 - 2M/r - Lambda r^2 / 3``. Between the black-hole horizon ``r_h``
and the cosmological horizon ``r_c`` the spacetime is static.

The cosmological surface gravity is conventionally negative; everything here
stores and returns its positive magnitude ``kappa_c`` since only that enters
temperatures and squeezing.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import DomainError, InvalidArgumentError, SqueezingOverflowError

NARIAI_MARGIN = 1e-12
DEFAULT_OMEGA = 1.0

_SIN_PI_3 = math.sqrt(3.0) / 2.0


@dataclass(frozen=True)
class SdSParameters:
    mass: float
    lam: float
    omega: float = DEFAULT_OMEGA

    def __post_init__(self):
        for name in ("mass", "lam", "omega"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise InvalidArgumentError(f"{name} must be finite and positive, got {v!r}")
        _nariai_parameter(self.mass, self.lam)

    @property
    def nariai_ratio(self) -> float:
        """``3 M sqrt(Lambda)``; admissible values lie in (0, 1)."""
        return 3.0 * self.mass * math.sqrt(self.lam)


@dataclass(frozen=True)
class HorizonData:
    r_h: float
    r_c: float
    r_u: float
    kappa_h: float
    kappa_c: float
    kappa_u: float
    t_h: float
    t_c: float
    t_eff: float
    area_h: float
    area_c: float
    entropy: float

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SqueezingParameters:
    r: float
    w: float
    gamma: float


def _positive(name: str, x: float) -> float:
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise InvalidArgumentError(f"{name} must be finite and positive, got {x!r}")
    return x


def _nariai_parameter(mass: float, lam: float) -> float:
    mass = _positive("mass", mass)
    lam = _positive("lambda", lam)
    x = 3.0 * mass * math.sqrt(lam)
    if x >= 1.0 - NARIAI_MARGIN:
        raise DomainError(
            f"3*M*sqrt(Lambda) = {x:.17g} violates the Nariai bound 3*M*sqrt(Lambda) < 1"
        )
    return x


def metric_function(r: float, mass: float, lam: float) -> float:
    return 1.0 - 2.0 * mass / r - lam * r * r / 3.0


def _radii_and_gap(mass: float, lam: float) -> tuple[float, float, float]:
    x = _nariai_parameter(mass, lam)
    theta = math.acos(x)
    scale = 2.0 / math.sqrt(lam)
    # cos((pi + theta)/3) == sin(asin(x)/3); the sine form keeps full relative
    # accuracy when r_h is tiny (small 3M sqrt(Lambda))
    r_h = scale * math.sin(math.asin(x) / 3.0)
    r_c = scale * math.cos((theta - math.pi) / 3.0)
    # r_c - r_h from a product identity, free of cancellation near Nariai
    gap = 2.0 * scale * _SIN_PI_3 * math.sin(theta / 3.0)
    return r_h, r_c, gap


def horizon_radii(mass: float, lam: float) -> tuple[float, float, float]:
    """Roots ``(r_h, r_c, r_u)`` of ``f(r) = 0``.

    ``r_u = -(r_h + r_c)`` is the negative, unphysical root. Raises
    ``DomainError`` at or beyond the Nariai bound ``3 M sqrt(Lambda) = 1``.
    """
    r_h, r_c, _ = _radii_and_gap(mass, lam)
    return r_h, r_c, -(r_h + r_c)


def surface_gravities(mass: float, lam: float) -> tuple[float, float]:
    """Magnitudes ``(kappa_h, kappa_c)`` of the horizon surface gravities."""
    r_h, r_c, gap = _radii_and_gap(mass, lam)
    kappa_h = lam * (2.0 * r_h + r_c) * gap / (6.0 * r_h)
    kappa_c = lam * (2.0 * r_c + r_h) * gap / (6.0 * r_c)
    return kappa_h, kappa_c


def effective_surface_gravity(kappa_h: float, kappa_c: float) -> float:
    """``kappa_u`` defined by ``1/kappa_u = 1/kappa_c - 1/kappa_h``."""
    kappa_h = _positive("kappa_h", kappa_h)
    kappa_c = _positive("kappa_c", kappa_c)
    if kappa_h <= kappa_c:
        raise InvalidArgumentError(
            f"kappa_h ({kappa_h}) must exceed kappa_c ({kappa_c}); no effective equilibrium otherwise"
        )
    return kappa_h * kappa_c / (kappa_h - kappa_c)


def _kappa_u_from_radii(lam: float, r_h: float, r_c: float) -> float:
    # kappa_h*kappa_c/(kappa_h - kappa_c) with the common (r_c - r_h)^2 factor cancelled
    return lam * (2.0 * r_h + r_c) * (2.0 * r_c + r_h) / (6.0 * (r_h + r_c))


def squeezing_parameter(omega: float, kappa: float) -> float:
    """Squeezing ``x`` of a horizon's Kruskal vacuum seen by a static observer.

    Satisfies ``cosh x = (1 - exp(-2 pi omega / kappa))**-0.5``, equivalently
    ``tanh x = exp(-pi omega / kappa)``.
    """
    omega = _positive("omega", omega)
    kappa = _positive("kappa", kappa)
    beta_omega = 2.0 * math.pi * omega / kappa
    if beta_omega < 1e-15:
        raise SqueezingOverflowError(
            f"2*pi*omega/kappa = {beta_omega:.3g}: squeezing diverges in the near-infinite-temperature regime"
        )
    # atanh(y) with y = exp(-beta_omega/2), written via expm1/log1p so that
    # neither the hot (y -> 1) nor the cold (y -> 0) limit loses digits
    y = math.exp(-0.5 * beta_omega)
    one_minus_y = -math.expm1(-0.5 * beta_omega)
    return 0.5 * math.log1p(2.0 * y / one_minus_y)


def tortoise_coordinate(r: float, mass: float, lam: float) -> float:
    """Tortoise coordinate ``r_*`` with ``dr_*/dr = 1/f(r)`` on ``r_h < r < r_c``."""
    r_h, r_c, r_u = horizon_radii(mass, lam)
    r = float(r)
    if not (r_h * (1 + 1e-12) < r < r_c * (1 - 1e-12)):
        raise DomainError(f"r = {r!r} lies outside the static region ({r_h!r}, {r_c!r})")
    kappa_h, kappa_c = surface_gravities(mass, lam)
    kappa_u = _kappa_u_from_radii(lam, r_h, r_c)
    return (
        math.log(abs(r / r_h - 1.0)) / (2.0 * kappa_h)
        - math.log(abs(1.0 - r / r_c)) / (2.0 * kappa_c)
        + math.log(abs(r / r_u - 1.0)) / (2.0 * kappa_u)
    )


def effective_potential(r: float, l: int, mass: float, lam: float) -> float:
    """Radial effective potential ``f(r) (l(l+1)/r^2 + 2M/r^3 - Lambda/3)`` of the wave equation."""
    if int(l) != l or l < 0:
        raise InvalidArgumentError(f"l must be a non-negative integer, got {l!r}")
    r_h, r_c, _ = horizon_radii(mass, lam)
    r = float(r)
    if not (r_h <= r <= r_c):
        raise DomainError(f"r = {r!r} lies outside [{r_h!r}, {r_c!r}]")
    return metric_function(r, mass, lam) * (l * (l + 1) / r**2 + 2.0 * mass / r**3 - lam / 3.0)


def horizon_thermodynamics(mass: float, lam: float, omega: float = DEFAULT_OMEGA) -> HorizonData:
    """Radii, surface gravities, temperatures, areas and total entropy at ``(M, Lambda)``.

    ``omega`` is validated for consistency with the other entry points but
    does not enter any of the returned quantities.
    """
    _positive("omega", omega)
    r_h, r_c, r_u = horizon_radii(mass, lam)
    kappa_h, kappa_c = surface_gravities(mass, lam)
    kappa_u = _kappa_u_from_radii(lam, r_h, r_c)
    area_h = 4.0 * math.pi * r_h**2
    area_c = 4.0 * math.pi * r_c**2
    two_pi = 2.0 * math.pi
    return HorizonData(
        r_h=r_h,
        r_c=r_c,
        r_u=r_u,
        kappa_h=kappa_h,
        kappa_c=kappa_c,
        kappa_u=kappa_u,
        t_h=kappa_h / two_pi,
        t_c=kappa_c / two_pi,
        t_eff=kappa_u / two_pi,
        area_h=area_h,
        area_c=area_c,
        entropy=(area_h + area_c) / 4.0,
    )


def channel_squeezing(params: SdSParameters) -> SqueezingParameters:
    """Squeezing of the black-hole, cosmological and effective-temperature channels."""
    data = horizon_thermodynamics(params.mass, params.lam, params.omega)
    return SqueezingParameters(
        r=squeezing_parameter(params.omega, data.kappa_h),
        w=squeezing_parameter(params.omega, data.kappa_c),
        gamma=squeezing_parameter(params.omega, data.kappa_u),
    )
