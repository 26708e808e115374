"""Scenario ingestion, batch sweeps, and result emission.

The scenario schema is strict JSON: unknown keys anywhere are rejected, as
are missing required keys.  Numbers are JSON doubles in SI units.

    {"plant":      {"tau": s, "r": m^-3, "alpha": m^-3 | {"m_p": , "volume": }},
     "actuator":   {"t_c": s, "t_prep": s, "mode": "centrifuge"|"gas_gun"},
     "controller": {"variant": "NM"|"SDM"|"SDM_IC"|"SDM_JM", "delta": },
     "init":       {"x0": m^-3, "xi0": },
     "sim":        {"t_end": s, "samples_per_tick": int, "seed_note": str}}
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from . import bounds, verify
from .core import (
    ActuatorMode,
    ActuatorSpec,
    Certificate,
    ControllerSpec,
    PlantParams,
    Trajectory,
    Variant,
)
from .engine import Scenario, simulate


class ParseError(ValueError):
    """Input is not well-formed JSON."""


class SchemaError(ValueError):
    """Well-formed JSON that does not match the scenario schema."""


class EmptyAxis(ValueError):
    pass


def _require_section(doc: dict, name: str) -> dict:
    if name not in doc:
        raise SchemaError(f"missing section {name!r}")
    section = doc[name]
    if not isinstance(section, dict):
        raise SchemaError(f"section {name!r} must be an object")
    return section


def _check_keys(section: dict, where: str, required: set[str], optional: set[str] = frozenset()):
    unknown = set(section) - required - optional
    if unknown:
        raise SchemaError(f"unknown key(s) in {where}: {sorted(unknown)}")
    missing = required - set(section)
    if missing:
        raise SchemaError(f"missing key(s) in {where}: {sorted(missing)}")


def _number(section: dict, where: str, key: str, default=None) -> float:
    if key not in section:
        return default
    v = section[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"{where}.{key} must be a number, got {v!r}")
    return float(v)


def parse_scenario(text: str) -> Scenario:
    """Parse and fully validate a scenario document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    _check_keys(doc, "scenario", {"plant", "actuator", "controller", "init", "sim"})

    plant_sec = _require_section(doc, "plant")
    _check_keys(plant_sec, "plant", {"tau", "r", "alpha"})
    tau = _number(plant_sec, "plant", "tau")
    r = _number(plant_sec, "plant", "r")
    alpha_raw = plant_sec["alpha"]
    if isinstance(alpha_raw, dict):
        _check_keys(alpha_raw, "plant.alpha", {"m_p", "volume"})
        plant = PlantParams.from_pellet(
            tau, r, _number(alpha_raw, "plant.alpha", "m_p"),
            _number(alpha_raw, "plant.alpha", "volume"),
        )
    else:
        plant = PlantParams(tau, r, _number(plant_sec, "plant", "alpha"))

    act_sec = _require_section(doc, "actuator")
    _check_keys(act_sec, "actuator", {"t_c"}, {"t_prep", "mode"})
    mode_raw = act_sec.get("mode", "centrifuge")
    try:
        mode = ActuatorMode(mode_raw)
    except (ValueError, TypeError):
        raise SchemaError(f"actuator.mode must be 'centrifuge' or 'gas_gun', got {mode_raw!r}")
    actuator = ActuatorSpec(
        t_c=_number(act_sec, "actuator", "t_c"),
        t_prep=_number(act_sec, "actuator", "t_prep", 0.0),
        mode=mode,
    )

    ctl_sec = _require_section(doc, "controller")
    _check_keys(ctl_sec, "controller", {"variant", "delta"})
    try:
        variant = Variant(ctl_sec["variant"])
    except (ValueError, TypeError):
        raise SchemaError(f"controller.variant must be one of {[v.value for v in Variant]}")
    controller = ControllerSpec(variant=variant, delta=_number(ctl_sec, "controller", "delta"))

    init_sec = _require_section(doc, "init")
    _check_keys(init_sec, "init", {"x0"}, {"xi0"})
    sim_sec = _require_section(doc, "sim")
    _check_keys(sim_sec, "sim", {"t_end"}, {"samples_per_tick", "seed_note"})
    spt = sim_sec.get("samples_per_tick", 10)
    if isinstance(spt, bool) or not isinstance(spt, int):
        raise SchemaError("sim.samples_per_tick must be an integer")
    seed_note = sim_sec.get("seed_note")
    if seed_note is not None and not isinstance(seed_note, str):
        raise SchemaError("sim.seed_note must be a string")

    return Scenario(
        plant=plant,
        actuator=actuator,
        controller=controller,
        x0=_number(init_sec, "init", "x0"),
        xi0=_number(init_sec, "init", "xi0", 0.0),
        t_end=_number(sim_sec, "sim", "t_end"),
        samples_per_tick=spt,
        seed_note=seed_note,
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    sim: dict = {"t_end": scenario.t_end, "samples_per_tick": scenario.samples_per_tick}
    if scenario.seed_note is not None:
        sim["seed_note"] = scenario.seed_note
    return {
        "plant": {
            "tau": scenario.plant.tau,
            "r": scenario.plant.r,
            "alpha": scenario.plant.alpha,
        },
        "actuator": {
            "t_c": scenario.actuator.t_c,
            "t_prep": scenario.actuator.t_prep,
            "mode": scenario.actuator.mode.value,
        },
        "controller": {
            "variant": scenario.controller.variant.value,
            "delta": scenario.controller.delta,
        },
        "init": {"x0": scenario.x0, "xi0": scenario.xi0},
        "sim": sim,
    }


def emit_scenario(scenario: Scenario) -> str:
    """Inverse of parse_scenario: parse(emit(s)) == s."""
    return json.dumps(scenario_to_dict(scenario), indent=2) + "\n"


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def write_trajectory_csv(traj: Trajectory, path: str | Path) -> None:
    """Columns t,j,n_e,x,xi,T,T_p,fired; floats as %.9e, fired as 0/1."""
    r = traj.plant.r
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "j", "n_e", "x", "xi", "T", "T_p", "fired"])
        for s in traj.samples:
            st = s.state
            writer.writerow(
                [
                    "%.9e" % s.time.t,
                    s.time.j,
                    "%.9e" % (r - st.x),
                    "%.9e" % st.x,
                    "%.9e" % st.xi,
                    "%.9e" % st.t_timer,
                    "%.9e" % st.t_prep_timer,
                    1 if s.fired else 0,
                ]
            )


# --- minimal SVG rendering -------------------------------------------------

def _polyline(pts: list[tuple[float, float]], colour: str, dash: str = "") -> str:
    coords = " ".join(f"{px:.2f},{py:.2f}" for px, py in pts)
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<polyline fill="none" stroke="{colour}" stroke-width="1.2"{dash_attr} points="{coords}"/>'


class _Panel:
    """Maps one (t, y) series onto a pixel rectangle."""

    def __init__(self, x0, y0, width, height, t_range, y_range):
        self.x0, self.y0, self.w, self.h = x0, y0, width, height
        self.t_min, self.t_max = t_range
        lo, hi = y_range
        if hi - lo <= 0.0:
            hi = lo + 1.0
        pad = 0.05 * (hi - lo)
        self.y_min, self.y_max = lo - pad, hi + pad

    def px(self, t):
        return self.x0 + (t - self.t_min) / (self.t_max - self.t_min) * self.w

    def py(self, y):
        return self.y0 + self.h - (y - self.y_min) / (self.y_max - self.y_min) * self.h

    def map_series(self, ts, ys):
        return [(self.px(t), self.py(y)) for t, y in zip(ts, ys)]

    def frame(self, label):
        return (
            f'<rect x="{self.x0}" y="{self.y0}" width="{self.w}" height="{self.h}" '
            'fill="none" stroke="#444"/>'
            f'<text x="{self.x0 + 4}" y="{self.y0 + 14}" font-size="12" '
            f'font-family="sans-serif">{label}</text>'
        )


def render_svg(traj: Trajectory, cert: Certificate, path: str | Path) -> None:
    """Two stacked panels: error x and density n_e against time, with dashed
    certified bounds and pellet-fire markers.  Deliberately minimal."""
    ts = [s.time.t for s in traj.samples]
    xs = [s.state.x for s in traj.samples]
    r = traj.plant.r
    nes = [r - x for x in xs]
    x0 = traj.samples[0].state.x
    t_range = (0.0, traj.t_end)

    overlays_x: list[tuple[list[float], str]] = []
    if cert.feasible and cert.bound_interval is not None:
        if cert.bound_scope == "trajectory":
            uppers = [bounds.envelope(t, x0, traj.plant)[1] for t in ts]
            overlays_x.append((uppers, "#c0392b"))
            overlays_x.append(([cert.bound_interval[0]] * len(ts), "#c0392b"))
        else:
            overlays_x.append(([cert.bound_interval[1]] * len(ts), "#8e44ad"))
            overlays_x.append(([cert.bound_interval[0]] * len(ts), "#8e44ad"))

    x_lo = min(xs + [v for series, _ in overlays_x for v in series])
    x_hi = max(xs + [v for series, _ in overlays_x for v in series])
    panel_x = _Panel(60, 20, 800, 250, t_range, (x_lo, x_hi))
    panel_n = _Panel(60, 310, 800, 250, t_range, (min(nes), max(nes)))

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="900" height="600" '
        'viewBox="0 0 900 600">',
        '<rect width="900" height="600" fill="white"/>',
        panel_x.frame("density error x [particles/m^3] vs t [s]"),
        panel_n.frame("electron density n_e [particles/m^3] vs t [s]"),
        _polyline(panel_x.map_series(ts, xs), "#1f77b4"),
        _polyline(panel_n.map_series(ts, nes), "#2ca02c"),
    ]
    for series, colour in overlays_x:
        parts.append(_polyline(panel_x.map_series(ts, series), colour, dash="6,4"))
    for s in traj.fire_samples():
        px = panel_x.px(s.time.t)
        parts.append(
            f'<line x1="{px:.2f}" y1="{panel_x.y0 + panel_x.h - 8}" '
            f'x2="{px:.2f}" y2="{panel_x.y0 + panel_x.h}" stroke="#e67e22" stroke-width="1"/>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts), encoding="utf-8")


# --- run / sweep -----------------------------------------------------------

@dataclass(frozen=True)
class RunResult:
    scenario: Scenario
    trajectory: Trajectory
    certificate: Certificate
    report: verify.VerifyReport

    @property
    def passed(self) -> bool:
        return self.report.all_applicable_pass()

    def summary_dict(self) -> dict:
        return {
            "scenario": scenario_to_dict(self.scenario),
            "certificate": self.certificate.as_dict(),
            "verify": self.report.as_dict(),
            "passed": self.passed,
            "failures": self.report.failures(),
        }


def run_scenario(scenario: Scenario, outdir: str | Path | None = None, svg: bool = False) -> RunResult:
    """Simulate, certify, verify; optionally write the artifact files
    trajectory.csv, summary.json and plot.svg into outdir."""
    cert = bounds.certify(scenario.plant, scenario.actuator, scenario.controller)
    traj = simulate(scenario)
    rep = verify.report(traj, cert)
    result = RunResult(scenario, traj, cert, rep)
    if outdir is not None:
        out = Path(outdir)
        out.mkdir(parents=True, exist_ok=True)
        write_trajectory_csv(traj, out / "trajectory.csv")
        (out / "summary.json").write_text(
            json.dumps(result.summary_dict(), indent=2) + "\n", encoding="utf-8"
        )
        if svg:
            render_svg(traj, cert, out / "plot.svg")
    return result


_SWEEP_AXES = ("delta", "t_c", "r")


def _with_axis_value(base: Scenario, axis: str, value: float) -> Scenario:
    if axis == "delta":
        controller = ControllerSpec(base.controller.variant, value)
        return Scenario(base.plant, base.actuator, controller, base.x0, base.t_end,
                        base.xi0, base.samples_per_tick, base.seed_note)
    if axis == "t_c":
        actuator = ActuatorSpec(value, base.actuator.t_prep, base.actuator.mode)
        return Scenario(base.plant, actuator, base.controller, base.x0, base.t_end,
                        base.xi0, base.samples_per_tick, base.seed_note)
    if axis == "r":
        plant = PlantParams(base.plant.tau, value, base.plant.alpha)
        return Scenario(plant, base.actuator, base.controller, base.x0, base.t_end,
                        base.xi0, base.samples_per_tick, base.seed_note)
    raise ValueError(f"axis must be one of {_SWEEP_AXES}, got {axis!r}")


def sweep(base: Scenario, axis: str, values, outdir: str | Path | None = None) -> list[dict]:
    """One row per swept value; infeasible configurations are retained and
    flagged, invalid ones raise."""
    if axis not in _SWEEP_AXES:
        raise ValueError(f"axis must be one of {_SWEEP_AXES}, got {axis!r}")
    values = list(values)
    if not values:
        raise EmptyAxis("no values to sweep")
    rows = []
    for value in values:
        scenario = _with_axis_value(base, axis, value)  # ValidationError propagates
        result = run_scenario(scenario)
        m = result.report.metrics
        rows.append(
            {
                axis: value,
                "feasible": result.certificate.feasible,
                "envelope": result.report.as_dict()["envelope"],
                "windup_detected": result.report.windup_detected,
                "pellet_count": m.pellet_count,
                "min_x_steady": m.min_x_steady,
                "max_x_steady": m.max_x_steady,
                "mean_x_steady": m.mean_x_steady,
                "settling_time": m.settling_time,
            }
        )
    if outdir is not None:
        out = Path(outdir)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "sweep.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
    return rows
