"""Scenario descriptions, the built-in catalog and end-to-end resolution.

A scenario names an orbit, one or two ground stations and a scheme. Angles
and altitudes are kept in the units of the scenario file (degrees, km) so
that a file survives a load/serialize round trip bit for bit; conversion to
radians and meters happens in :meth:`Scenario.orbit_spec` and
:meth:`StationSpec.event`.

Scenario files are flat ``key = value`` text with ``#`` comments::

    scheme = reflection
    orbit.class = LEO
    station_a.theta_deg = 37.48
    station_a.phi_deg = 13.40
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from .errors import ScenarioParseError, ScenarioValidationError
from .metrology import PROBES, MetrologyInputs, MetrologyReport, WavePacket, report
from .shifts import ShiftResult, link_shift, reflect_return_constants, reflection_shift
from .spacetime import Direction, EarthModel, Event, LegGeometry, OrbitSpec, solve_leg

SchemeName = Literal["reflection", "link"]

LAB1 = ("Lab1", 37.48, 13.40)
LAB2 = ("Lab2", 51.88, 13.36)
GEO_RADIUS_KM = 42164.0  # conventional geostationary radius; template only

# altitude_km, inclination_deg, event_theta_deg, event_phi_deg
ORBIT_PRESETS: dict[str, tuple[float, float, float, float]] = {
    "LEO": (2000.0, 0.0, 15.0, 13.38),
    "VLEO": (255.0, 6.7, 30.0, 13.38),
    "GEO": (GEO_RADIUS_KM - 6371.0, 90.0, 90.0, 13.38),
}


@dataclass(frozen=True)
class StationSpec:
    name: str
    theta_deg: float
    phi_deg: float
    radius: float | None = None  # meters; None means on the Earth's surface

    def __post_init__(self):
        if not 0.0 < self.theta_deg < 180.0:
            raise ScenarioValidationError(
                f"station {self.name!r}: colatitude must lie in (0, 180) degrees, got {self.theta_deg}")
        if not math.isfinite(self.phi_deg):
            raise ScenarioValidationError(f"station {self.name!r}: longitude must be finite")

    def event(self, earth: EarthModel) -> Event:
        radius = earth.earth_radius if self.radius is None else self.radius
        return Event.from_degrees(radius, self.theta_deg, self.phi_deg)


@dataclass(frozen=True)
class OrbitConfig:
    orbit_class: str
    altitude_km: float
    inclination_deg: float
    event_theta_deg: float
    event_phi_deg: float


@dataclass(frozen=True)
class Scenario:
    id: str
    scheme: SchemeName
    orbit: OrbitConfig
    station_a: StationSpec
    station_b: StationSpec | None = None
    direction: Direction | None = None
    earth: EarthModel = field(default_factory=EarthModel)
    wavepacket: WavePacket = field(default_factory=WavePacket)
    probes: int = PROBES

    def __post_init__(self):
        if self.scheme == "reflection":
            if self.direction is not None:
                raise ScenarioValidationError("reflection scenarios take no link direction")
        elif self.scheme == "link":
            if self.station_b is not None:
                raise ScenarioValidationError("a link has exactly one ground station")
            if self.direction not in ("uplink", "downlink"):
                raise ScenarioValidationError(
                    f"a link needs direction uplink or downlink, got {self.direction!r}")
        else:
            raise ScenarioValidationError(f"scheme must be reflection or link, got {self.scheme!r}")
        if isinstance(self.probes, bool) or not isinstance(self.probes, int) or self.probes < 1:
            raise ScenarioValidationError(f"probes must be a positive integer, got {self.probes!r}")
        for station in (self.station_a, self.station_b):
            if station is not None and station.radius is not None \
                    and station.radius < self.earth.earth_radius:
                raise ScenarioValidationError(
                    f"station {station.name!r} lies below the Earth's surface")
        try:
            spec = self.orbit_spec()
        except ValueError as exc:
            raise ScenarioValidationError(f"orbit: {exc}") from exc
        if spec.radius <= self.earth.earth_radius:
            raise ScenarioValidationError("orbit altitude must be positive")

    def orbit_spec(self) -> OrbitSpec:
        o = self.orbit
        return OrbitSpec.from_altitude(self.earth, o.altitude_km * 1e3, o.inclination_deg,
                                       o.event_theta_deg, o.event_phi_deg,
                                       orbit_class=o.orbit_class)


@dataclass(frozen=True)
class ScenarioReport:
    scenario_id: str
    legs: tuple[LegGeometry, ...]
    shift: ShiftResult
    metrology: MetrologyReport
    provenance: dict

    def __post_init__(self):
        expected = 2 if self.shift.scheme == "reflection" else 1
        if len(self.legs) != expected:
            raise ValueError(f"{self.shift.scheme} report needs {expected} legs, got {len(self.legs)}")


# --- catalog ----------------------------------------------------------------------

def _orbit(name: str) -> OrbitConfig:
    return OrbitConfig(name, *ORBIT_PRESETS[name])


def _station(lab: tuple[str, float, float]) -> StationSpec:
    return StationSpec(*lab)


def builtin_catalog() -> list[Scenario]:
    """The reference LEO and VLEO configurations plus two GEO templates."""
    lab1, lab2 = _station(LAB1), _station(LAB2)
    leo, vleo, geo = _orbit("LEO"), _orbit("VLEO"), _orbit("GEO")
    out = [
        Scenario("leo-refl-lab1", "reflection", leo, lab1),
        Scenario("leo-refl-lab2", "reflection", leo, lab2),
        Scenario("leo-refl-lab1-lab2", "reflection", leo, lab1, lab2),
    ]
    for lab, tag in ((lab1, "lab1"), (lab2, "lab2")):
        for direction in ("uplink", "downlink"):
            out.append(Scenario(f"leo-link-{direction[:-4]}-{tag}", "link", leo, lab,
                                direction=direction))
    out.append(Scenario("vleo-refl-lab1", "reflection", vleo, lab1))
    for direction in ("uplink", "downlink"):
        out.append(Scenario(f"vleo-link-{direction[:-4]}-lab1", "link", vleo, lab1,
                            direction=direction))
    out.append(Scenario("geo-refl-lab1", "reflection", geo, lab1))
    out.append(Scenario("geo-link-down-lab1", "link", geo, lab1, direction="downlink"))
    return out


def find_builtin(scenario_id: str) -> Scenario:
    for scenario in builtin_catalog():
        if scenario.id == scenario_id:
            return scenario
    raise KeyError(scenario_id)


# --- resolution -------------------------------------------------------------------

def resolve(scenario: Scenario) -> ScenarioReport:
    """Solve the ray legs, the frequency shift and the metrology report.

    Raises :class:`~relsat.errors.NoGeodesicError` when a station cannot be
    reached from the satellite event.
    """
    earth = scenario.earth
    orbit = scenario.orbit_spec()
    sat = orbit.event()
    lab_a = scenario.station_a.event(earth)
    eps = math.sqrt(earth.mass_length / orbit.radius)

    if scenario.scheme == "reflection":
        incident = solve_leg(earth, lab_a, sat, "uplink", eps_omega=orbit.eps_omega)
        if scenario.station_b is None:
            back = LegGeometry(sat, lab_a, reflect_return_constants(incident.constants), "downlink")
        else:
            back = solve_leg(earth, sat, scenario.station_b.event(earth), "downlink",
                             eps_omega=orbit.eps_omega)
        legs = (incident, back)
        shift = reflection_shift(earth, orbit, incident.constants, back.constants)
        delta_out = shift.delta_ang_out
    else:
        if scenario.direction == "uplink":
            leg = solve_leg(earth, lab_a, sat, "uplink", eps_omega=orbit.eps_omega)
        else:
            leg = solve_leg(earth, sat, lab_a, "downlink", eps_omega=orbit.eps_omega)
        legs = (leg,)
        shift = link_shift(earth, orbit, leg.constants, scenario.direction)
        delta_out = 0.0

    inputs = MetrologyInputs(eps, shift.delta_ang_in, delta_out, scenario.probes,
                             wavepacket=scenario.wavepacket)
    provenance = {
        "scenario": scenario.id,
        "scheme": scenario.scheme,
        "orbit_radius_m": orbit.radius,
        "epsilon": eps,
        "mass_length_m": earth.mass_length,
        "earth_radius_m": earth.earth_radius,
        "probes": scenario.probes,
        "peak_hz": scenario.wavepacket.peak_frequency,
        "sigma_hz": scenario.wavepacket.bandwidth,
    }
    return ScenarioReport(scenario.id, legs, shift, report(inputs, earth, orbit), provenance)


# --- file format ------------------------------------------------------------------

_FLOAT_KEYS = {
    "orbit.altitude_km", "orbit.inclination_deg", "orbit.event_theta_deg", "orbit.event_phi_deg",
    "station_a.theta_deg", "station_a.phi_deg", "station_a.radius_m",
    "station_b.theta_deg", "station_b.phi_deg", "station_b.radius_m",
    "wavepacket.peak_hz", "wavepacket.sigma_hz",
}
_TEXT_KEYS = {"name", "scheme", "orbit.class", "direction", "station_a.name", "station_b.name"}
KNOWN_KEYS = _FLOAT_KEYS | _TEXT_KEYS | {"probes"}


def _parse_pairs(text: str) -> dict[str, tuple[str, int]]:
    pairs: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ScenarioParseError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        if key not in KNOWN_KEYS:
            raise ScenarioParseError(f"unknown key {key!r}", line=lineno)
        if key in pairs:
            raise ScenarioParseError(f"duplicate key {key!r}", line=lineno)
        if not value:
            raise ScenarioParseError(f"empty value for {key!r}", line=lineno)
        pairs[key] = (value, lineno)
    return pairs


def _number(pairs, key):
    value, lineno = pairs[key]
    try:
        return float(value)
    except ValueError:
        raise ScenarioParseError(f"{key}: not a number: {value!r}", line=lineno) from None


def _probes(pairs):
    value, lineno = pairs["probes"]
    try:
        return int(value)
    except ValueError:
        pass
    try:
        number = float(value)
    except ValueError:
        number = math.nan
    if not (math.isfinite(number) and number == int(number)):
        raise ScenarioParseError(f"probes: not an integer: {value!r}", line=lineno)
    return int(number)


def _station_from(pairs, prefix: str, default_name: str) -> StationSpec | None:
    keys = [k for k in pairs if k.startswith(prefix + ".")]
    if not keys:
        return None
    for needed in ("theta_deg", "phi_deg"):
        if f"{prefix}.{needed}" not in pairs:
            raise ScenarioParseError(f"missing key {prefix}.{needed}")
    name = pairs[f"{prefix}.name"][0] if f"{prefix}.name" in pairs else default_name
    radius = _number(pairs, f"{prefix}.radius_m") if f"{prefix}.radius_m" in pairs else None
    return StationSpec(name, _number(pairs, f"{prefix}.theta_deg"),
                       _number(pairs, f"{prefix}.phi_deg"), radius)


def parse_scenario(text: str, default_id: str = "scenario") -> Scenario:
    """Build a :class:`Scenario` from the text of a scenario file.

    Omitted orbit keys are taken from the ``orbit.class`` preset; omitted
    wavepacket and probe keys take the default values.
    """
    pairs = _parse_pairs(text)
    if "scheme" not in pairs:
        raise ScenarioParseError("missing key 'scheme'")
    orbit_class = pairs["orbit.class"][0] if "orbit.class" in pairs else "custom"
    if orbit_class not in ("GEO", "LEO", "VLEO", "custom"):
        raise ScenarioValidationError(f"unknown orbit class {orbit_class!r}")
    preset = ORBIT_PRESETS.get(orbit_class)
    orbit_values = []
    for i, key in enumerate(("altitude_km", "inclination_deg", "event_theta_deg", "event_phi_deg")):
        full = f"orbit.{key}"
        if full in pairs:
            orbit_values.append(_number(pairs, full))
        elif preset is not None:
            orbit_values.append(preset[i])
        else:
            raise ScenarioParseError(f"missing key {full!r} (no orbit.class preset)")
    station_a = _station_from(pairs, "station_a", "A")
    if station_a is None:
        raise ScenarioParseError("missing keys station_a.theta_deg / station_a.phi_deg")
    station_b = _station_from(pairs, "station_b", "B")
    wp_defaults = WavePacket()
    peak = _number(pairs, "wavepacket.peak_hz") if "wavepacket.peak_hz" in pairs \
        else wp_defaults.peak_frequency
    sigma = _number(pairs, "wavepacket.sigma_hz") if "wavepacket.sigma_hz" in pairs \
        else wp_defaults.bandwidth
    try:
        wavepacket = WavePacket(peak, sigma)
    except ValueError as exc:
        raise ScenarioValidationError(f"wavepacket: {exc}") from exc
    return Scenario(
        id=pairs["name"][0] if "name" in pairs else default_id,
        scheme=pairs["scheme"][0],
        orbit=OrbitConfig(orbit_class, *orbit_values),
        station_a=station_a,
        station_b=station_b,
        direction=pairs["direction"][0] if "direction" in pairs else None,
        wavepacket=wavepacket,
        probes=_probes(pairs) if "probes" in pairs else PROBES,
    )


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), default_id=path.stem)


def serialize_scenario(scenario: Scenario) -> str:
    """Render a scenario as file text; every value is written in full."""
    o = scenario.orbit
    lines = [
        f"name = {scenario.id}",
        f"scheme = {scenario.scheme}",
        f"orbit.class = {o.orbit_class}",
        f"orbit.altitude_km = {o.altitude_km!r}",
        f"orbit.inclination_deg = {o.inclination_deg!r}",
        f"orbit.event_theta_deg = {o.event_theta_deg!r}",
        f"orbit.event_phi_deg = {o.event_phi_deg!r}",
    ]
    for prefix, station in (("station_a", scenario.station_a), ("station_b", scenario.station_b)):
        if station is None:
            continue
        lines += [
            f"{prefix}.name = {station.name}",
            f"{prefix}.theta_deg = {station.theta_deg!r}",
            f"{prefix}.phi_deg = {station.phi_deg!r}",
        ]
        if station.radius is not None:
            lines.append(f"{prefix}.radius_m = {station.radius!r}")
    if scenario.direction is not None:
        lines.append(f"direction = {scenario.direction}")
    lines += [
        f"wavepacket.peak_hz = {scenario.wavepacket.peak_frequency!r}",
        f"wavepacket.sigma_hz = {scenario.wavepacket.bandwidth!r}",
        f"probes = {scenario.probes}",
    ]
    return "\n".join(lines) + "\n"
