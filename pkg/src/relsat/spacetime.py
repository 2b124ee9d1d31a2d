"""Schwarzschild geometry: metric, observers, null vectors and geodesic constants.

Geometric units throughout (c = G = 1): the Earth's mass is a length in
meters, angles are radians. The photon energy constant is carried as
E_p/hbar, an angular frequency, so hbar never enters a computation.
Polar angles are measured from the North pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

from .errors import DomainError, HorizonError, NoGeodesicError, RegimeError, TurningPointError
from .numerics import DEFAULT_REL_TOL, RootBracket, find_root, integrate

EARTH_MASS_LENGTH = 4.43e-3  # m
EARTH_RADIUS = 6.371e6  # m

# kappa is bracketed strictly below the grazing value
GRAZING_MARGIN = 1e-12
L_PHI_VALIDITY = 0.1

Direction = Literal["uplink", "downlink"]
SignRule = Literal["table", "geometric"]


@dataclass(frozen=True)
class EarthModel:
    mass_length: float = EARTH_MASS_LENGTH
    earth_radius: float = EARTH_RADIUS

    def __post_init__(self):
        if not self.earth_radius > 0:
            raise DomainError(f"earth_radius must be positive, got {self.earth_radius}")
        # M = 0 is the flat-space limit used by the oracles
        if not 0.0 <= self.mass_length < 1e-6 * self.earth_radius:
            raise DomainError(
                f"mass_length must satisfy 0 <= M < 1e-6 R_E, got M={self.mass_length}")

    @property
    def schwarzschild_radius(self) -> float:
        return 2.0 * self.mass_length

    def lapse2(self, r: float) -> float:
        """1 - 2M/r, checked against the horizon."""
        if not r > self.schwarzschild_radius:
            raise HorizonError(f"r={r} m is not outside the Schwarzschild radius "
                               f"{self.schwarzschild_radius} m")
        return 1.0 - 2.0 * self.mass_length / r


def _check_theta(theta: float) -> None:
    if not 0.0 < theta < math.pi:
        raise DomainError(f"polar angle must lie strictly inside (0, pi), got {theta}")


@dataclass(frozen=True)
class Event:
    r: float
    theta: float
    phi: float
    t: float = 0.0  # carried for completeness; all computations are static

    def __post_init__(self):
        if not self.r > 0:
            raise DomainError(f"radius must be positive, got {self.r}")
        _check_theta(self.theta)

    @classmethod
    def from_degrees(cls, r: float, theta_deg: float, phi_deg: float) -> Event:
        return cls(r, math.radians(theta_deg), math.radians(phi_deg))


class MetricDiag(NamedTuple):
    g_tt: float
    g_rr: float
    g_thth: float
    g_phph: float


class FourVector(NamedTuple):
    """Contravariant components in the coordinate basis (t, r, theta, phi)."""

    t: float
    r: float
    theta: float
    phi: float


@dataclass(frozen=True)
class OrbitSpec:
    """A circular geodesic orbit and the point on it where the photon is exchanged."""

    radius: float
    inclination: float
    event_theta: float
    event_phi: float
    eps_omega: int = 1
    eps_zeta: int = 1
    orbit_class: str = "custom"

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError(f"orbit radius must be positive, got {self.radius}")
        if not 0.0 <= self.inclination <= math.pi:
            raise DomainError(f"inclination must lie in [0, pi], got {self.inclination}")
        _check_theta(self.event_theta)
        if self.eps_omega not in (1, -1) or self.eps_zeta not in (1, -1):
            raise DomainError("eps_omega and eps_zeta must be +1 or -1")
        if self.orbit_class not in ("GEO", "LEO", "VLEO", "custom"):
            raise DomainError(f"unknown orbit class {self.orbit_class!r}")
        if _inclination_ratio2(self) > 1.0 + 1e-12:
            raise DomainError(
                f"sin(alpha)={math.sin(self.inclination):.6g} exceeds "
                f"sin(theta_s)={math.sin(self.event_theta):.6g}: the orbit never reaches theta_s")

    @classmethod
    def from_altitude(cls, model: EarthModel, altitude: float, inclination_deg: float,
                      event_theta_deg: float, event_phi_deg: float, **kwargs) -> OrbitSpec:
        return cls(model.earth_radius + altitude, math.radians(inclination_deg),
                   math.radians(event_theta_deg), math.radians(event_phi_deg), **kwargs)

    def altitude(self, model: EarthModel) -> float:
        return self.radius - model.earth_radius

    def event(self) -> Event:
        return Event(self.radius, self.event_theta, self.event_phi)


def _inclination_ratio2(orbit: OrbitSpec) -> float:
    """sin^2(alpha) / sin^2(theta_s)."""
    return (math.sin(orbit.inclination) / math.sin(orbit.event_theta)) ** 2


@dataclass(frozen=True)
class RayConstants:
    """Constants of motion of a null geodesic, energy-rescaled.

    ``energy`` is E_p/hbar (rad/s); ``l_phi`` = L_phi/E_p in meters and
    ``kappa`` = K/E_p^2 in square meters.
    """

    energy: float
    eps_r: int
    eps_theta: int
    l_phi: float
    kappa: float

    def __post_init__(self):
        if not self.energy > 0:
            raise DomainError(f"photon energy constant must be positive, got {self.energy}")
        if self.eps_r not in (1, -1) or self.eps_theta not in (1, -1):
            raise DomainError("eps_r and eps_theta must be +1 or -1")
        if not self.kappa >= 0:
            raise DomainError(f"kappa must be non-negative, got {self.kappa}")

    @property
    def angular_momentum(self) -> float:
        """Unrescaled L_phi, in units where E_p/hbar is the energy."""
        return self.l_phi * self.energy

    @property
    def carter_constant(self) -> float:
        return self.kappa * self.energy ** 2


@dataclass(frozen=True)
class LegGeometry:
    source: Event
    dest: Event
    constants: RayConstants
    direction: Direction

    def __post_init__(self):
        if self.source.r == self.dest.r and self.source.theta == self.dest.theta:
            raise DomainError("degenerate leg: endpoints share radius and polar angle")
        expected = "uplink" if self.dest.r > self.source.r else "downlink"
        if self.direction != expected:
            raise DomainError(f"direction {self.direction!r} contradicts radii "
                              f"{self.source.r} -> {self.dest.r}")


def metric_diag(model: EarthModel, r: float, theta: float) -> MetricDiag:
    lapse2 = model.lapse2(r)
    _check_theta(theta)
    return MetricDiag(-lapse2, 1.0 / lapse2, r * r, (r * math.sin(theta)) ** 2)


def inner_product(a: FourVector, b: FourVector, g: MetricDiag) -> float:
    return (g.g_tt * a.t * b.t + g.g_rr * a.r * b.r
            + g.g_thth * a.theta * b.theta + g.g_phph * a.phi * b.phi)


def static_observer(model: EarthModel, r: float) -> FourVector:
    return FourVector(1.0 / math.sqrt(model.lapse2(r)), 0.0, 0.0, 0.0)


def orbit_angular_velocities(model: EarthModel, orbit: OrbitSpec) -> tuple[float, float]:
    """Coordinate angular velocities (d theta/dt, d phi/dt) of the satellite, in rad per meter."""
    ratio2 = _inclination_ratio2(orbit)
    if ratio2 > 1.0 + 1e-12:
        raise DomainError("sin(alpha) > sin(theta_s)")
    kepler = math.sqrt(model.mass_length / orbit.radius ** 3)
    omega = orbit.eps_omega * kepler * math.sqrt(max(0.0, 1.0 - ratio2))
    zeta = orbit.eps_zeta * kepler * math.sin(orbit.inclination) / math.sin(orbit.event_theta) ** 2
    return omega, zeta


def satellite_observer(model: EarthModel, orbit: OrbitSpec) -> FourVector:
    omega, zeta = orbit_angular_velocities(model, orbit)
    rs = orbit.radius
    radicand = (model.lapse2(rs)
                - rs * rs * (omega * omega + (zeta * math.sin(orbit.event_theta)) ** 2))
    if not radicand > 0:
        raise DomainError(f"satellite normalisation radicand {radicand} is not positive")
    norm = 1.0 / math.sqrt(radicand)
    return FourVector(norm, 0.0, omega * norm, zeta * norm)


def _radial_radicand(model: EarthModel, c: RayConstants, r: float) -> float:
    return 1.0 - model.lapse2(r) * (c.l_phi ** 2 + c.kappa) / (r * r)


def _polar_radicand(c: RayConstants, theta: float) -> float:
    return c.kappa - (c.l_phi / math.tan(theta)) ** 2


def null_vector(model: EarthModel, c: RayConstants, r: float, theta: float) -> FourVector:
    _check_theta(theta)
    radial = _radial_radicand(model, c, r)
    if radial < 0:
        raise TurningPointError(f"radial radicand {radial:.3e} < 0 at r={r} m", "radial")
    polar = _polar_radicand(c, theta)
    if polar < 0:
        raise TurningPointError(f"polar radicand {polar:.3e} < 0 at theta={theta}", "polar")
    e = c.energy
    r2 = r * r
    return FourVector(
        e / model.lapse2(r),
        e * c.eps_r * math.sqrt(radial),
        e * c.eps_theta * math.sqrt(polar) / r2,
        e * c.l_phi / (r2 * math.sin(theta) ** 2),
    )


def measured_frequency(k: FourVector, v: FourVector, g: MetricDiag) -> float:
    """Angular frequency -k.v seen by an observer with four-velocity ``v``."""
    omega = -inner_product(k, v, g)
    if not omega > 0:
        raise DomainError(f"-k.v = {omega} is not positive: vectors are not both future-directed")
    return omega


def polar_sweep(model: EarthModel, kappa: float, r1: float, r2: float,
                rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Polar angle swept by a turning-point-free null ray between radii r1 and r2.

    Evaluates sqrt(kappa) * integral dr / (r^2 sqrt(1 - (1-2M/r) kappa/r^2)) in
    the variable x = r_min/r = 1 - t^2, which keeps the integrand bounded even
    when the ray grazes r_min.
    """
    r_min, r_max = min(r1, r2), max(r1, r2)
    if kappa == 0.0 or r_min == r_max:
        return 0.0
    a = kappa / (r_min * r_min)
    m = model.mass_length / r_min
    p_min = 1.0 - a * (1.0 - 2.0 * m)
    if p_min < 0:
        raise TurningPointError(f"kappa={kappa} puts a radial turning point above r={r_min}",
                                "radial")

    def integrand(t: float) -> float:
        t2 = t * t
        x = 1.0 - t2
        p = p_min + a * t2 * ((1.0 + x) - 2.0 * m * (1.0 + x + x * x))
        return 2.0 * t / math.sqrt(p) if t > 0 else (
            0.0 if p_min > 0 else 2.0 / math.sqrt(a * (2.0 - 6.0 * m)))

    upper = math.sqrt(1.0 - r_min / r_max)
    return math.sqrt(a) * integrate(integrand, 0.0, upper, rel_tol).value


def max_kappa(model: EarthModel, r_min: float) -> float:
    """Largest kappa (with a safety margin) whose ray stays outside r_min."""
    return (1.0 - GRAZING_MARGIN) * r_min * r_min / model.lapse2(r_min)


def solve_kappa(model: EarthModel, r1: float, r2: float, delta_theta: float,
                rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Rescaled Carter constant of the ray joining radii r1, r2 across polar angle delta_theta.

    Uses the small-l_phi form of the constraint, so l_phi does not enter.
    Raises :class:`NoGeodesicError` if no monotonic-radius ray subtends that angle.
    """
    if r1 == r2:
        raise DomainError("solve_kappa needs distinct radii")
    if delta_theta == 0.0:
        raise DomainError("solve_kappa needs a non-zero polar separation")
    r_min, r_max = min(r1, r2), max(r1, r2)
    model.lapse2(r_min)
    target = abs(delta_theta)
    top = max_kappa(model, r_min)
    reachable = polar_sweep(model, top, r_min, r_max, rel_tol)
    if target >= reachable:
        raise NoGeodesicError(
            f"no null geodesic without a radial turning point joins r={r_min:.6g} m and "
            f"r={r_max:.6g} m across {math.degrees(target):.4f} deg; the largest reachable "
            f"separation is {math.degrees(reachable):.4f} deg")
    # solve in the dimensionless a = kappa / r_min^2
    scale = r_min * r_min
    a = find_root(lambda a: polar_sweep(model, a * scale, r_min, r_max, rel_tol) - target,
                  RootBracket(0.0, top / scale), rel_tol)
    return a * scale


def solve_l_phi(kappa: float, theta1: float, theta2: float, delta_phi: float,
                max_ratio: float = L_PHI_VALIDITY) -> float:
    """Rescaled azimuthal angular momentum for a ray whose longitude barely changes."""
    spread = abs(1.0 / math.tan(theta2) - 1.0 / math.tan(theta1))
    if spread == 0.0:
        raise DomainError("cot(theta1) == cot(theta2): azimuthal constraint is degenerate")
    ratio = abs(delta_phi) / spread
    if ratio > max_ratio:
        raise RegimeError(f"|delta_phi| / |cot theta2 - cot theta1| = {ratio:.3g} exceeds "
                          f"{max_ratio}: small azimuthal momentum approximation invalid")
    return math.sqrt(kappa) * delta_phi / spread


def _wrap(angle: float) -> float:
    return math.remainder(angle, 2.0 * math.pi)


def solve_leg(model: EarthModel, source: Event, dest: Event,
              direction: Direction | None = None, *, eps_omega: int = 1,
              sign_rule: SignRule = "table", energy: float = 1.0) -> LegGeometry:
    """Solve kappa and l_phi for the ray from ``source`` to ``dest``.

    ``sign_rule="table"`` orients the polar momentum so that eps_omega *
    eps_theta is +1 on uplinks and -1 on downlinks; ``"geometric"`` takes
    eps_theta from the sign of the polar-angle change.
    """
    if source.r == dest.r:
        raise DomainError("leg endpoints must have distinct radii")
    natural = "uplink" if dest.r > source.r else "downlink"
    direction = direction or natural
    if direction != natural:
        raise DomainError(f"direction {direction!r} contradicts radii {source.r} -> {dest.r}")
    delta_theta = dest.theta - source.theta
    kappa = solve_kappa(model, source.r, dest.r, delta_theta)
    l_phi = solve_l_phi(kappa, source.theta, dest.theta, _wrap(dest.phi - source.phi))
    if sign_rule == "table":
        eps_theta = eps_omega * (1 if direction == "uplink" else -1)
    elif sign_rule == "geometric":
        eps_theta = 1 if delta_theta > 0 else -1
    else:
        raise ValueError(f"unknown sign rule {sign_rule!r}")
    constants = RayConstants(energy, 1 if natural == "uplink" else -1, eps_theta, l_phi, kappa)
    return LegGeometry(source, dest, constants, direction)

