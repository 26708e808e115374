"""Trajectory checks against the certified properties, plus summary metrics.

Each check returns a verdict and, on failure, a witness carrying the hybrid
time and values of the first violation.  Checks that do not apply to a
configuration (no feasible certificate, wrong variant, steady-state-only
bound) report None rather than a silent pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bounds
from .core import Certificate, Trajectory, Variant
from .engine import steady_state_window

# absolute slack for density comparisons, scaled by the reference magnitude
_REL_SLACK = 1e-9


class GridMismatch(ValueError):
    """Two trajectories do not share a tick grid."""


@dataclass(frozen=True)
class CheckWitness:
    t: float
    j: int
    value: float
    lower: float | None = None
    upper: float | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "t": self.t, "j": self.j, "value": self.value,
            "lower": self.lower, "upper": self.upper, "note": self.note,
        }


def check_envelope(traj: Trajectory, cert: Certificate) -> tuple[bool | None, CheckWitness | None]:
    """Every sample inside the certified bounds (lower exclusive, upper
    inclusive, relative slack 1e-9).  Not applicable without a feasible
    certificate; a steady-state-only certificate is checked on the trailing
    window instead of the whole trajectory."""
    if not cert.feasible or cert.bound_interval is None:
        return None, None
    plant = traj.plant
    eps = _REL_SLACK * plant.r
    if cert.bound_scope == "steady_state":
        lower, upper = cert.bound_interval
        t_start, _ = steady_state_window(traj)
        for s in traj.samples:
            if s.time.t < t_start:
                continue
            if not (lower - eps < s.state.x <= upper + eps):
                return False, CheckWitness(
                    s.time.t, s.time.j, s.state.x, lower, upper, "steady-state bound"
                )
        return True, None
    x0 = traj.samples[0].state.x
    for s in traj.samples:
        lower, upper = bounds.envelope(s.time.t, x0, plant)
        if not (lower - eps < s.state.x <= upper + eps):
            return False, CheckWitness(s.time.t, s.time.j, s.state.x, lower, upper, "envelope")
    return True, None


def check_zeno(traj: Trajectory) -> tuple[bool, CheckWitness | None]:
    """Jump counts never exceed floor(t/t_c) + 1 (minimum dwell one tick)."""
    t_c = traj.actuator.t_c
    for s in traj.samples:
        limit = int(np.floor(s.time.t / t_c + 1e-9)) + 1
        if s.time.j > limit:
            return False, CheckWitness(s.time.t, s.time.j, float(s.time.j), None, float(limit))
    return True, None


def _cycle_starts(traj: Trajectory) -> list[tuple[float, float]]:
    """(t, x) pairs that open a pellet cycle with positive error: the initial
    state and every post-fire state with x > 0."""
    starts = []
    first = traj.samples[0]
    if first.state.x > 0.0:
        starts.append((first.time.t, first.state.x))
    for s in traj.fire_samples():
        if s.state.x > 0.0:
            starts.append((s.time.t, s.state.x))
    return starts


def check_dwell(traj: Trajectory, cert: Certificate) -> tuple[bool | None, CheckWitness | None]:
    """Gaps from a positive-error cycle start to the next fire stay within
    tau_d.  Claimed only for the reset family (NM, SDM_JM) under a full
    certificate; a trailing gap already longer than tau_d also fails."""
    applicable = (
        cert.feasible
        and cert.bound_scope == "trajectory"
        and traj.controller.variant in (Variant.NM, Variant.SDM_JM)
    )
    if not applicable:
        return None, None
    limit = cert.tau_d + 1e-9 * traj.actuator.t_c
    fire_times = [s.time.t for s in traj.fire_samples()]
    for t_start, x_start in _cycle_starts(traj):
        nxt = next((tf for tf in fire_times if tf > t_start), None)
        if nxt is not None:
            if nxt - t_start > limit:
                return False, CheckWitness(
                    t_start, 0, nxt - t_start, None, cert.tau_d, "inter-pellet gap"
                )
        elif traj.t_end - t_start > limit:
            return False, CheckWitness(
                t_start, 0, traj.t_end - t_start, None, cert.tau_d,
                "no fire within the certified dwell bound",
            )
    return True, None


def check_contraction(traj: Trajectory, cert: Certificate) -> tuple[bool | None, CheckWitness | None]:
    """Across one flow-plus-fire cycle starting at x > 0, the error shrinks
    by at least the factor gamma.  NM only."""
    applicable = (
        cert.feasible
        and cert.bound_scope == "trajectory"
        and traj.controller.variant is Variant.NM
    )
    if not applicable:
        return None, None
    slack = _REL_SLACK * traj.plant.r
    fires = [(s.time.t, s.state.x) for s in traj.fire_samples()]
    for t_start, x_start in _cycle_starts(traj):
        nxt = next(((tf, xf) for tf, xf in fires if tf > t_start), None)
        if nxt is None:
            continue
        tf, x_after = nxt
        if x_after > cert.gamma * x_start + slack:
            return False, CheckWitness(
                tf, 0, x_after, None, cert.gamma * x_start, "cycle did not contract"
            )
    return True, None


def detect_windup(traj: Trajectory, delta: float) -> bool:
    """Wind-up signature: two consecutive fires that both leave a residue at
    or above the threshold, or any sample undershooting -alpha."""
    post_xi = [s.state.xi for s in traj.fire_samples()]
    for a, b in zip(post_xi, post_xi[1:]):
        if a >= delta and b >= delta:
            return True
    floor = -traj.plant.alpha - 1e-12 * traj.plant.r
    return any(s.state.x < floor for s in traj.samples)


@dataclass(frozen=True)
class FireMismatch:
    tick: int
    t: float
    fired_a: bool
    fired_b: bool


@dataclass(frozen=True)
class ComparisonResult:
    max_rel_x: float
    max_rel_xi: float
    fire_mismatch: FireMismatch | None
    n_ticks: int
    rtol: float
    passed: bool

    def within(self, rtol: float) -> bool:
        return (
            self.fire_mismatch is None
            and self.max_rel_x <= rtol
            and self.max_rel_xi <= rtol
        )


def compare(traj_a: Trajectory, traj_b: Trajectory, rtol: float = 1e-6) -> ComparisonResult:
    """Maximum relative deviation of the pre-jump tick states, scaled by
    max(|value|, alpha), plus the first fire-decision mismatch if any."""
    t_c = traj_a.actuator.t_c
    if abs(t_c - traj_b.actuator.t_c) > 1e-12 * t_c:
        raise GridMismatch("tick periods differ")
    events_a, events_b = traj_a.tick_events(), traj_b.tick_events()
    if len(events_a) != len(events_b):
        raise GridMismatch(f"tick counts differ: {len(events_a)} vs {len(events_b)}")
    alpha = traj_a.plant.alpha
    max_x = max_xi = 0.0
    mismatch = None
    for i, (ea, eb) in enumerate(zip(events_a, events_b)):
        if abs(ea.t - eb.t) > 1e-9 * t_c:
            raise GridMismatch(f"tick {i} occurs at different times")
        max_x = max(max_x, abs(ea.before.x - eb.before.x) / max(abs(ea.before.x), alpha))
        max_xi = max(max_xi, abs(ea.before.xi - eb.before.xi) / max(abs(ea.before.xi), alpha))
        if mismatch is None and ea.fired != eb.fired:
            mismatch = FireMismatch(i, ea.t, ea.fired, eb.fired)
    passed = mismatch is None and max_x <= rtol and max_xi <= rtol
    return ComparisonResult(max_x, max_xi, mismatch, len(events_a), rtol, passed)


@dataclass(frozen=True)
class Metrics:
    pellet_count: int
    min_x_steady: float
    max_x_steady: float
    mean_x_steady: float
    settling_time: float | None

    def as_dict(self) -> dict:
        return {
            "pellet_count": self.pellet_count,
            "min_x_steady": self.min_x_steady,
            "max_x_steady": self.max_x_steady,
            "mean_x_steady": self.mean_x_steady,
            "settling_time": self.settling_time,
        }


def compute_metrics(traj: Trajectory, fraction: float = 0.5) -> Metrics:
    t_start, _ = steady_state_window(traj, fraction)
    t = traj.times()
    x = traj.x_values()
    window = x[t >= t_start - 1e-9 * traj.t_end]
    alpha, r = traj.plant.alpha, traj.plant.r
    inside = (x > -alpha) & (x <= alpha + _REL_SLACK * r)
    settling: float | None
    if inside.all():
        settling = 0.0
    else:
        last_out = int(np.max(np.nonzero(~inside)[0]))
        settling = float(t[last_out + 1]) if last_out + 1 < len(t) else None
    return Metrics(
        pellet_count=len(traj.fire_samples()),
        min_x_steady=float(window.min()),
        max_x_steady=float(window.max()),
        mean_x_steady=float(window.mean()),
        settling_time=settling,
    )


@dataclass(frozen=True)
class VerifyReport:
    envelope_ok: bool | None
    zeno_ok: bool
    dwell_ok: bool | None
    contraction_ok: bool | None
    windup_detected: bool
    metrics: Metrics
    witnesses: dict

    def all_applicable_pass(self) -> bool:
        return (
            self.zeno_ok
            and self.envelope_ok is not False
            and self.dwell_ok is not False
            and self.contraction_ok is not False
        )

    def failures(self) -> list[dict]:
        out = []
        for name, ok in (
            ("envelope", self.envelope_ok),
            ("zeno", self.zeno_ok),
            ("dwell", self.dwell_ok),
            ("contraction", self.contraction_ok),
        ):
            if ok is False:
                witness = self.witnesses.get(name)
                out.append({"check": name, "witness": witness.as_dict() if witness else None})
        return out

    def as_dict(self) -> dict:
        def status(ok):
            if ok is None:
                return "not_applicable"
            return "pass" if ok else "fail"

        d = {
            "envelope": status(self.envelope_ok),
            "zeno": status(self.zeno_ok),
            "dwell": status(self.dwell_ok),
            "contraction": status(self.contraction_ok),
            "windup_detected": self.windup_detected,
            "metrics": self.metrics.as_dict(),
        }
        if self.witnesses:
            d["witnesses"] = {k: w.as_dict() for k, w in self.witnesses.items()}
        return d


def report(traj: Trajectory, cert: Certificate, fraction: float = 0.5) -> VerifyReport:
    """Run every check that applies and collect metrics."""
    witnesses: dict[str, CheckWitness] = {}
    env_ok, w = check_envelope(traj, cert)
    if w:
        witnesses["envelope"] = w
    zeno_ok, w = check_zeno(traj)
    if w:
        witnesses["zeno"] = w
    dwell_ok, w = check_dwell(traj, cert)
    if w:
        witnesses["dwell"] = w
    contr_ok, w = check_contraction(traj, cert)
    if w:
        witnesses["contraction"] = w
    return VerifyReport(
        envelope_ok=env_ok,
        zeno_ok=zeno_ok,
        dwell_ok=dwell_ok,
        contraction_ok=contr_ok,
        windup_detected=detect_windup(traj, traj.controller.delta),
        metrics=compute_metrics(traj, fraction),
        witnesses=witnesses,
    )
