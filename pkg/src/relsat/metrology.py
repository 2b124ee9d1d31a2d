"""Wavepacket overlaps, quantum Fisher information and precision bounds.

A photon is a real Gaussian wavepacket in frequency. A frequency shift f
maps the packet to F(f * Omega); the overlap with the emitted packet sets
the fidelity, the quantum Fisher information (QFI) in the parameter
eps = sqrt(M / R_s), the Cramer-Rao bounds on r_S, R_E and h, and the QBER
of a frequency-encoded QKD link.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, RegimeError
from .spacetime import EarthModel, OrbitSpec

PEAK_FREQUENCY = 7e14  # Hz
BANDWIDTH = 1e6  # Hz
PROBES = 10 ** 10
REGIME_THRESHOLD = 100.0
QFI_STEP = 1e-3  # default d_eps * Omega_0 / sigma


@dataclass(frozen=True)
class WavePacket:
    peak_frequency: float = PEAK_FREQUENCY
    bandwidth: float = BANDWIDTH

    def __post_init__(self):
        for name in ("peak_frequency", "bandwidth"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be finite and positive, got {value}")
        if self.peak_frequency / self.bandwidth < 1e3:
            warnings.warn(f"narrow-band assumption weak: peak/bandwidth = "
                          f"{self.peak_frequency / self.bandwidth:.3g} < 1e3", RuntimeWarning,
                          stacklevel=3)

    @property
    def quality(self) -> float:
        """Omega_0 / sigma."""
        return self.peak_frequency / self.bandwidth


@dataclass(frozen=True)
class MetrologyInputs:
    epsilon: float
    delta_in: float
    delta_out: float = 0.0
    probes: int = PROBES
    wigner_phase: float = 0.0
    wavepacket: WavePacket = WavePacket()

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 1e-3:
            raise DomainError(f"epsilon must lie in [0, 1e-3), got {self.epsilon}")
        if int(self.probes) != self.probes or self.probes < 1:
            raise DomainError(f"probes must be a positive integer, got {self.probes}")

    @property
    def delta_difference(self) -> float:
        return self.delta_in - self.delta_out


@dataclass(frozen=True)
class MetrologyReport:
    qfi: float
    eps_bound: float
    rs_rel_bound: float
    re_rel_bound: float
    h_rel_bound: float
    fidelity: float
    qber: float
    regime_ok: bool


def gaussian_amplitude(omega: float, wp: WavePacket) -> float:
    sigma = wp.bandwidth
    return (2.0 * math.pi * sigma * sigma) ** -0.25 * math.exp(
        -((omega - wp.peak_frequency) ** 2) / (4.0 * sigma * sigma))


def _log_overlap(shift_minus_one: float, wp: WavePacket, normalized: bool) -> float:
    # written in x = f - 1 so that f -> 1 loses no digits
    x = shift_minus_one
    f = 1.0 + x
    denom = 1.0 + f * f
    if normalized:
        log_prefactor = 0.5 * math.log1p(-x * x / denom)
    else:
        log_prefactor = 0.5 * math.log1p(-x * (2.0 + x) / denom)
    exponent = -((wp.peak_frequency * x) ** 2) / (4.0 * wp.bandwidth ** 2 * denom)
    return log_prefactor + exponent


def overlap_exact(f: float, wp: WavePacket, wigner_phase: float = 0.0,
                  normalized: bool = False) -> float:
    """Overlap between the emitted packet and the packet shifted by ``f``.

    The default is the plain integral of F(f Omega) F(Omega) over the whole
    real line. With ``normalized=True`` the shifted packet carries the
    sqrt(f) Jacobian that keeps it unit-norm; only that variant is bounded
    by 1 for every f.
    """
    if not f > 0:
        raise DomainError(f"frequency ratio must be positive, got {f}")
    return math.cos(wigner_phase) * math.exp(_log_overlap(f - 1.0, wp, normalized))


def fidelity_deficit(shift_minus_one: float, wp: WavePacket) -> float:
    """1 - overlap for the normalized shifted packet, accurate for tiny shifts."""
    return -math.expm1(_log_overlap(shift_minus_one, wp, True))


def regime_ok(inputs: MetrologyInputs, threshold: float = REGIME_THRESHOLD) -> bool:
    """Whether eps * (Omega_0/sigma)^2 is large, as the leading-order overlap assumes."""
    return inputs.epsilon * inputs.wavepacket.quality ** 2 > threshold


def _gaussian_exponent(inputs: MetrologyInputs) -> float:
    """(delta_in - delta_out)^2 Omega_0^2 eps^2 / sigma^2."""
    return (inputs.delta_difference * inputs.wavepacket.quality * inputs.epsilon) ** 2


def overlap_approx(inputs: MetrologyInputs) -> float:
    return math.exp(-_gaussian_exponent(inputs) / 8.0)


def qfi_leading(inputs: MetrologyInputs) -> float:
    """Leading (eps = 0) quantum Fisher information."""
    return (inputs.delta_difference * inputs.wavepacket.quality) ** 2


def qfi_numeric(inputs: MetrologyInputs, d_eps: float | None = None) -> float:
    """Finite-difference QFI 8 (1 - sqrt(fidelity)) / d_eps^2 about eps = 0.

    The shifted packet uses the reflection ratio (1 - d_eps delta_in) /
    (1 - d_eps delta_out) and the normalized overlap. ``d_eps`` defaults to
    1e-3 sigma / Omega_0.
    """
    wp = inputs.wavepacket
    if d_eps is None:
        d_eps = QFI_STEP / wp.quality
    if not d_eps > 0:
        raise DomainError(f"d_eps must be positive, got {d_eps}")
    if d_eps * wp.quality > 0.1:
        raise RegimeError(f"d_eps * Omega_0/sigma = {d_eps * wp.quality:.3g} is not small")
    # f - 1 in closed form; forming the ratio first would cancel ~12 digits
    x = d_eps * (inputs.delta_out - inputs.delta_in) / (1.0 - d_eps * inputs.delta_out)
    return 8.0 * fidelity_deficit(x, wp) / (d_eps * d_eps)


def cramer_rao_bound(qfi: float, probes: int) -> float:
    """Smallest |Delta eps| allowed for ``probes`` independent probes."""
    if not qfi > 0:
        raise DomainError("quantum Fisher information is zero: the parameter is not encoded")
    if probes < 1:
        raise DomainError(f"probes must be >= 1, got {probes}")
    return 1.0 / math.sqrt(probes * qfi)


def bound_schwarzschild(qfi: float, probes: int, orbit_radius: float,
                        schwarzschild_radius: float) -> float:
    """Relative precision bound on the Schwarzschild radius."""
    return 2.0 * math.sqrt(2.0) * cramer_rao_bound(qfi, probes) * math.sqrt(
        orbit_radius / schwarzschild_radius)


def bound_earth_radius(qfi: float, probes: int, orbit_radius: float, earth_radius: float,
                       mass_length: float) -> float:
    return (2.0 * cramer_rao_bound(qfi, probes) * (orbit_radius / earth_radius)
            * math.sqrt(orbit_radius / mass_length))


def bound_altitude(qfi: float, probes: int, orbit_radius: float, altitude: float,
                   mass_length: float) -> float:
    if not altitude > 0:
        raise DomainError(f"altitude must be positive, got {altitude}")
    return (2.0 * cramer_rao_bound(qfi, probes) * (orbit_radius / altitude)
            * math.sqrt(orbit_radius / mass_length))


def qber(inputs: MetrologyInputs) -> float:
    """Quantum bit error rate 1 - fidelity for an uncorrected frequency shift."""
    return min(1.0, max(0.0, -math.expm1(-_gaussian_exponent(inputs) / 4.0)))


def report(inputs: MetrologyInputs, model: EarthModel, orbit: OrbitSpec) -> MetrologyReport:
    h0 = qfi_leading(inputs)
    error_rate = qber(inputs)
    fidelity = math.exp(-_gaussian_exponent(inputs) / 4.0)
    if h0 > 0:
        n = inputs.probes
        bounds = (
            cramer_rao_bound(h0, n),
            bound_schwarzschild(h0, n, orbit.radius, model.schwarzschild_radius),
            bound_earth_radius(h0, n, orbit.radius, model.earth_radius, model.mass_length),
            bound_altitude(h0, n, orbit.radius, orbit.altitude(model), model.mass_length),
        )
    else:
        bounds = (math.inf,) * 4
    return MetrologyReport(h0, *bounds, fidelity, error_rate, regime_ok(inputs))
