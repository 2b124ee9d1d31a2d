"""Frequency shifts imparted on photons by a moving satellite.

Two schemes are covered: reflection off a mirror on the satellite (the
photon returns to the ground) and a one-way link between a ground station
and the satellite. Shifts use the exact closed forms, not their
first-order expansions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

from .errors import DomainError
from .spacetime import Direction, EarthModel, OrbitSpec, RayConstants

Scheme = Literal["reflection", "link"]
LinkConvention = Literal["table", "received_over_emitted"]


@dataclass(frozen=True)
class ShiftResult:
    """Frequency ratio plus the angular factors that produced it.

    ``delta_ang_out`` is ``None`` for the link scheme, where consumers use 0.
    ``gravitational_factor`` is 1 for the reflection scheme.
    """

    f: float
    delta_ang_in: float
    delta_ang_out: float | None
    gravitational_factor: float
    scheme: Scheme

    def __post_init__(self):
        if not self.f > 0:
            raise DomainError(f"frequency ratio must be positive, got {self.f}")
        if self.scheme == "link" and self.delta_ang_out is not None:
            raise ValueError("link shifts carry no outgoing angular factor")
        if self.scheme == "reflection" and self.gravitational_factor != 1.0:
            raise ValueError("reflection shifts carry no gravitational factor")

    @property
    def delta_difference(self) -> float:
        return self.delta_ang_in - (self.delta_ang_out or 0.0)


def speed_parameter(model: EarthModel, orbit: OrbitSpec) -> float:
    """sqrt(M / R_s), the orbital speed in units of c."""
    return math.sqrt(model.mass_length / orbit.radius)


def delta_ang(orbit: OrbitSpec, eps_theta: int, kappa: float, l_phi: float) -> float:
    """Dimensionless coupling between the satellite velocity and the ray's angular momentum."""
    sin_a = math.sin(orbit.inclination)
    sin_t = math.sin(orbit.event_theta)
    ratio2 = (sin_a / sin_t) ** 2
    if ratio2 > 1.0 + 1e-12:
        raise DomainError("sin(alpha) > sin(theta_s)")
    polar = kappa - (l_phi / math.tan(orbit.event_theta)) ** 2
    if polar < 0:
        raise DomainError(f"kappa - l_phi^2 cot^2(theta_s) = {polar:.3e} < 0")
    rs = orbit.radius
    azimuthal_term = orbit.eps_zeta * (l_phi / rs) * sin_a / sin_t ** 2
    polar_term = (orbit.eps_omega * eps_theta * math.sqrt(polar) / rs
                  * math.sqrt(max(0.0, 1.0 - ratio2)))
    return azimuthal_term + polar_term


def reflect_return_constants(c: RayConstants) -> RayConstants:
    """Constants of a ray sent straight back along the incident path.

    The energy constant is left untouched; :func:`reflection_shift` gives
    the ratio between outgoing and incoming energies.
    """
    return replace(c, eps_r=-c.eps_r, eps_theta=-c.eps_theta, l_phi=-c.l_phi)


def gravitational_factor(model: EarthModel, orbit: OrbitSpec) -> float:
    """sqrt((1 - 2M/R_E) / (1 - 3M/R_s))."""
    num = 1.0 - 2.0 * model.mass_length / model.earth_radius
    den = 1.0 - 3.0 * model.mass_length / orbit.radius
    if not (num > 0 and den > 0):
        raise DomainError("gravitational factor radicand is not positive")
    return math.sqrt(num / den)


def reflection_shift(model: EarthModel, orbit: OrbitSpec, incident: RayConstants,
                     reflected: RayConstants) -> ShiftResult:
    """Ratio E_p'/E_p of photon energies after and before reflection off the satellite."""
    eps = speed_parameter(model, orbit)
    d_in = delta_ang(orbit, incident.eps_theta, incident.kappa, incident.l_phi)
    d_out = delta_ang(orbit, reflected.eps_theta, reflected.kappa, reflected.l_phi)
    num = 1.0 - eps * d_in
    den = 1.0 - eps * d_out
    if not (num > 0 and den > 0):
        raise DomainError(f"unphysical reflection: numerator {num}, denominator {den}")
    return ShiftResult(num / den, d_in, d_out, 1.0, "reflection")


def link_shift(model: EarthModel, orbit: OrbitSpec, leg: RayConstants,
               direction: Direction | None = None,
               convention: LinkConvention = "table") -> ShiftResult:
    """Gravitational plus Doppler shift for a one-way ground-satellite link.

    With the default ``"table"`` convention the ratio is
    ``(1 - sqrt(M/R_s) delta_ang) * gravitational_factor`` for either
    direction, the sign of delta_ang carrying the orientation. Passing
    ``convention="received_over_emitted"`` with ``direction="downlink"``
    returns the inverse, i.e. the ground-received over satellite-emitted
    frequency.
    """
    eps = speed_parameter(model, orbit)
    grav = gravitational_factor(model, orbit)
    d = delta_ang(orbit, leg.eps_theta, leg.kappa, leg.l_phi)
    kinematic = 1.0 - eps * d
    if not kinematic > 0:
        raise DomainError(f"unphysical link: 1 - eps*delta = {kinematic}")
    f = kinematic * grav
    if convention == "received_over_emitted" and direction == "downlink":
        f = 1.0 / f
    elif convention not in ("table", "received_over_emitted"):
        raise ValueError(f"unknown link convention {convention!r}")
    return ShiftResult(f, d, None, grav, "link")
