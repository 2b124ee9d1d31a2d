"""Command-line front end.

    relsat table1    [--format text|csv] [--out FILE] [--tolerance REL]
    relsat table2    [--format text|csv] [--out FILE] [--tolerance REL]
    relsat analyze   --scenario PATH_OR_ID [--format text|csv] [--out FILE]
    relsat validate  [--tolerance REL]

Exit status is 0 on success, 1 when a scenario cannot be resolved or a
golden comparison fails, and 2 on usage or scenario-file errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import RelsatError, ScenarioParseError, ScenarioValidationError
from .scenario import ScenarioReport, builtin_catalog, find_builtin, load_scenario, resolve

CSV_COLUMNS = ("scenario", "quantity", "value", "units", "golden", "pass")

# How each golden is compared. "abs": +-0.01 absolute (two-decimal entries);
# "rel1"/"rel2": 1% / 2% relative; "shift": 2% relative on f - 1.
TOLERANCES = {"abs": 0.01, "rel1": 0.01, "rel2": 0.02, "shift": 0.02}

# (scenario id, quantity, golden, comparison kind)
TABLE1_GOLDENS = [
    ("leo-refl-lab1", "M/R_s", 5.29e-10, "rel2"),
    ("vleo-refl-lab1", "M/R_s", 6.69e-10, "rel2"),
]
for _sid, _l, _k, _d, _f in (
        ("leo-link-down-lab1", 1.01e-4, 0.49, -0.70, 1.61e-5),
        ("leo-link-up-lab1", -1.01e-4, 0.49, 0.70, -1.61e-5),
        ("leo-link-down-lab2", -8.99e-5, 0.58, -0.76, 1.75e-5),
        ("leo-link-up-lab2", 8.99e-5, 0.58, 0.76, -1.75e-5),
        ("vleo-link-down-lab1", 7.64e-4, 0.88, -0.91, 2.35e-5),
        ("vleo-link-up-lab1", -7.64e-4, 0.88, 0.91, -2.35e-5)):
    TABLE1_GOLDENS += [
        (_sid, "l_phi/R_s", _l, "rel1"),
        (_sid, "kappa/R_s^2", _k, "abs"),
        (_sid, "delta_ang", _d, "abs"),
        (_sid, "f_l", 1.0 + _f, "shift"),
    ]
TABLE1_GOLDENS += [
    ("leo-refl-lab1", "f_r", 1.0 - 3.22e-5, "shift"),
    ("leo-refl-lab2", "f_r", 1.0 - 3.50e-5, "shift"),
    ("leo-refl-lab1-lab2", "f_r", 1.0 - 3.36e-5, "shift"),
    ("vleo-refl-lab1", "f_r", 1.0 - 4.71e-5, "shift"),
]

TABLE2_GOLDENS = []
for _sid, _bounds in (
        ("leo-refl-lab1-lab2", (8.50e-10, 1.12e-9, 3.56e-9)),
        ("leo-refl-lab1", (8.87e-10, 1.17e-9, 3.71e-9)),
        ("leo-refl-lab2", (8.15e-10, 1.07e-9, 3.41e-9)),
        ("leo-link-down-lab1", (1.77e-9, 2.33e-9, 7.43e-9)),
        ("leo-link-down-lab2", (1.63e-9, 2.14e-9, 6.83e-9)),
        ("vleo-refl-lab1", (6.06e-10, 6.30e-10, 1.57e-8)),
        ("vleo-link-down-lab1", (1.21e-9, 1.26e-9, 3.15e-8))):
    for _q, _g in zip(("dr_S/r_S", "dR_E/R_E", "dh/h"), _bounds):
        TABLE2_GOLDENS.append((_sid, _q, _g, "rel2"))


@dataclass(frozen=True)
class OutputRow:
    scenario: str
    quantity: str
    value: float
    units: str = "1"
    golden: float | None = None
    within_tolerance: bool | None = None
    margin: float | None = None  # |error| / allowed error

    def __post_init__(self):
        if (self.golden is None) != (self.within_tolerance is None):
            raise ValueError("within_tolerance must be given exactly when golden is")


def report_quantities(rep: ScenarioReport) -> list[tuple[str, float, str]]:
    """Flatten a report into (quantity, value, units) triples."""
    rs = rep.provenance["orbit_radius_m"]
    rows = [("M/R_s", rep.provenance["mass_length_m"] / rs, "1")]
    for i, leg in enumerate(rep.legs, start=1):
        c = leg.constants
        rows += [
            (f"leg{i}.kappa/R_s^2", c.kappa / rs ** 2, "1"),
            (f"leg{i}.l_phi/R_s", c.l_phi / rs, "1"),
            (f"leg{i}.eps_theta", float(c.eps_theta), "1"),
        ]
    shift = rep.shift
    name = "f_r" if shift.scheme == "reflection" else "f_l"
    rows.append(("delta_ang", shift.delta_ang_in, "1"))
    if shift.delta_ang_out is not None:
        rows.append(("delta_ang_out", shift.delta_ang_out, "1"))
    rows += [
        (name, shift.f, "1"),
        (f"{name}-1", shift.f - 1.0, "1"),
    ]
    if shift.scheme == "link":
        rows.append(("gravitational_factor", shift.gravitational_factor, "1"))
    m = rep.metrology
    rows += [
        ("qfi", m.qfi, "1"),
        ("eps_bound", m.eps_bound, "1"),
        ("dr_S/r_S", m.rs_rel_bound, "1"),
        ("dR_E/R_E", m.re_rel_bound, "1"),
        ("dh/h", m.h_rel_bound, "1"),
        ("fidelity", m.fidelity, "1"),
        ("qber", m.qber, "1"),
        ("regime_ok", 1.0 if m.regime_ok else 0.0, "bool"),
    ]
    return rows


def _compare(value: float, golden: float, kind: str, tolerance: float | None) -> tuple[bool, float]:
    if kind == "shift":
        value, golden = value - 1.0, golden - 1.0
    error = abs(value - golden)
    if tolerance is not None:
        allowed = tolerance * abs(golden)
    elif kind == "abs":
        allowed = TOLERANCES["abs"]
    else:
        allowed = TOLERANCES[kind] * abs(golden)
    margin = error / allowed if allowed > 0 else float("inf")
    return error <= allowed, margin


def _golden_rows(goldens, tolerance: float | None) -> list[OutputRow]:
    reports = {s.id: resolve(s) for s in builtin_catalog()
               if s.id in {g[0] for g in goldens}}
    values = {sid: dict((q, v) for q, v, _ in report_quantities(rep)) for sid, rep in reports.items()}
    rows = []
    for sid, quantity, golden, kind in goldens:
        key = {"l_phi/R_s": "leg1.l_phi/R_s", "kappa/R_s^2": "leg1.kappa/R_s^2"}.get(quantity, quantity)
        value = values[sid][key]
        ok, margin = _compare(value, golden, kind, tolerance)
        rows.append(OutputRow(sid, quantity, value, "1", golden, ok, margin))
    return rows


def cmd_table1(tolerance: float | None = None) -> list[OutputRow]:
    return _golden_rows(TABLE1_GOLDENS, tolerance)


def cmd_table2(tolerance: float | None = None) -> list[OutputRow]:
    return _golden_rows(TABLE2_GOLDENS, tolerance)


def cmd_analyze(target: str) -> list[OutputRow]:
    """Resolve a scenario file (or builtin id) into output rows."""
    path = Path(target)
    if path.exists():
        scenario = load_scenario(path)
    else:
        try:
            scenario = find_builtin(target)
        except KeyError:
            raise FileNotFoundError(f"no scenario file or builtin id {target!r}") from None
    rep = resolve(scenario)
    return [OutputRow(rep.scenario_id, q, v, u) for q, v, u in report_quantities(rep)]


def render_csv(rows: list[OutputRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([
            row.scenario, row.quantity, repr(row.value), row.units,
            "" if row.golden is None else repr(row.golden),
            "" if row.within_tolerance is None else ("true" if row.within_tolerance else "false"),
        ])
    return buf.getvalue()


def render_text(rows: list[OutputRow]) -> str:
    table = [("scenario", "quantity", "value", "golden", "status")]
    for row in rows:
        status = "" if row.within_tolerance is None else ("pass" if row.within_tolerance else "FAIL")
        golden = "" if row.golden is None else f"{row.golden:.6g}"
        table.append((row.scenario, row.quantity, f"{row.value:.6g}", golden, status))
    widths = [max(len(r[i]) for r in table) for i in range(5)]
    return "".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() + "\n"
                   for r in table)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relsat", description="Relativistic frequency shifts and precision bounds for "
                                   "satellite photon exchanges.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("table1", "ray constants and frequency shifts against goldens"),
                            ("table2", "precision bounds against goldens")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("text", "csv"), default="text")
        p.add_argument("--out", help="write to this file instead of stdout")
        p.add_argument("--tolerance", type=_positive_float,
                       help="relative tolerance replacing the default golden tolerances")
    p = sub.add_parser("analyze", help="full report for one scenario")
    p.add_argument("--scenario", required=True,
                   help="scenario file, or one of: " + ", ".join(s.id for s in builtin_catalog()))
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out", help="write to this file instead of stdout")
    p = sub.add_parser("validate", help="compare every table entry with its golden value")
    p.add_argument("--tolerance", type=_positive_float,
                   help="relative tolerance replacing the default golden tolerances")
    return parser


def _validate(tolerance: float | None) -> int:
    rows = cmd_table1(tolerance) + cmd_table2(tolerance)
    failing = [r for r in rows if not r.within_tolerance]
    for r in rows:
        status = "pass" if r.within_tolerance else "FAIL"
        print(f"{status}  {r.scenario:20s} {r.quantity:12s} value={r.value:.6g} "
              f"golden={r.golden:.6g} margin={r.margin:.3f}")
    if failing:
        print(f"{len(failing)} of {len(rows)} rows outside tolerance:", file=sys.stderr)
        for r in failing:
            print(f"  {r.scenario} {r.quantity}", file=sys.stderr)
        return 1
    print(f"all {len(rows)} rows within tolerance")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return _validate(args.tolerance)
    render = render_csv if args.format == "csv" else render_text
    try:
        if args.command == "table1":
            rows = cmd_table1(args.tolerance)
        elif args.command == "table2":
            rows = cmd_table2(args.tolerance)
        else:
            rows = cmd_analyze(args.scenario)
    except (ScenarioParseError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScenarioValidationError as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return 1
    except RelsatError as exc:
        print(f"cannot resolve scenario: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(render(rows), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
