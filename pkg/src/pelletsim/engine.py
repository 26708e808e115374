"""Tick-driven hybrid simulation.

The engine alternates closed-form flow over one tick period with the
controller's jump map, recording the hybrid time domain as it goes.  Tick
times are always computed as k*t_c from the integer tick index, never by
accumulating additions, so long horizons do not drift.  Intermediate flow
samples exist only for output fidelity; every control decision is taken
on the exact tick-boundary state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import flow
from .controllers import tick_jump
from .core import (
    ActuatorSpec,
    ControllerSpec,
    HybridState,
    HybridTime,
    PlantParams,
    Trajectory,
    TrajectorySample,
    ValidationError,
    Variant,
    validate,
)

# relative slack used when counting whole ticks inside a horizon
_TICK_EPS = 1e-9


class EmptyTrajectory(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    """A complete, validated simulation setup."""

    plant: PlantParams
    actuator: ActuatorSpec
    controller: ControllerSpec
    x0: float
    t_end: float
    xi0: float = 0.0
    samples_per_tick: int = 10
    seed_note: str | None = None  # provenance note carried into outputs

    def __post_init__(self) -> None:
        validate(self.plant, self.actuator, self.controller)
        if self.x0 > self.plant.r:
            raise ValidationError(
                f"x0={self.x0!r} exceeds the reference r={self.plant.r!r} (n_e would be negative)"
            )
        if self.xi0 < 0.0:
            raise ValidationError("xi0 must be nonnegative")
        if not self.t_end > 0.0:
            raise ValidationError("t_end must be positive")
        if self.samples_per_tick < 1:
            raise ValidationError("samples_per_tick must be a positive integer")

    @property
    def x_sat(self) -> float | None:
        """Integrator clipping level delta/t_c, set only for SDM_IC."""
        if self.controller.variant is Variant.SDM_IC:
            return self.controller.delta / self.actuator.t_c
        return None

    def initial_state(self) -> HybridState:
        return HybridState(x=self.x0, xi=self.xi0, t_timer=0.0, t_prep_timer=0.0)


def _flow_state(
    state: HybridState, dt: float, plant: PlantParams, x_sat: float | None
) -> HybridState:
    return HybridState(
        x=flow.flow_x(state.x, dt, plant),
        xi=flow.flow_xi(state.x, state.xi, dt, plant, x_sat),
        t_timer=state.t_timer + dt,
        t_prep_timer=state.t_prep_timer + dt,
    )


def simulate(scenario: Scenario) -> Trajectory:
    """Run the scenario and record its trajectory.

    Jumps occur exactly at t = k*t_c; the jump count can therefore never
    exceed floor(t/t_c) + 1, which rules out Zeno behaviour and is checked
    as the simulation runs.
    """
    plant, actuator, controller = scenario.plant, scenario.actuator, scenario.controller
    validate(plant, actuator, controller)
    t_c = actuator.t_c
    spt = scenario.samples_per_tick
    x_sat = scenario.x_sat

    state = scenario.initial_state()
    samples = [TrajectorySample(HybridTime(0.0, 0), state, False)]
    n_ticks = int(math.floor(scenario.t_end / t_c + _TICK_EPS))
    j = 0

    for k in range(1, n_ticks + 1):
        for m in range(1, spt + 1):
            dt = t_c * (m / spt)
            t = t_c * (k - 1 + m / spt)
            samples.append(
                TrajectorySample(HybridTime(t, j), _flow_state(state, dt, plant, x_sat), False)
            )
        boundary = samples[-1].state  # t_timer == t_c exactly: t_c*(spt/spt)
        outcome = tick_jump(boundary, plant, controller, actuator)
        j += 1
        if j > k + 1:
            raise RuntimeError("minimum dwell time violated: more jumps than ticks")
        samples.append(TrajectorySample(HybridTime(t_c * k, j), outcome.state_after, outcome.fired))
        state = outcome.state_after

    remainder = scenario.t_end - t_c * n_ticks
    if remainder > _TICK_EPS * t_c:
        m = 1
        while t_c * (m / spt) < remainder - _TICK_EPS * t_c and m <= spt:
            dt = t_c * (m / spt)
            samples.append(
                TrajectorySample(
                    HybridTime(t_c * (n_ticks + m / spt), j),
                    _flow_state(state, dt, plant, x_sat),
                    False,
                )
            )
            m += 1
        samples.append(
            TrajectorySample(
                HybridTime(scenario.t_end, j), _flow_state(state, remainder, plant, x_sat), False
            )
        )

    return Trajectory(tuple(samples), plant, controller, actuator)


def steady_state_window(traj: Trajectory, fraction: float = 0.5) -> tuple[float, float]:
    """Trailing `fraction` of the simulated time span, for steady-state metrics."""
    if len(traj) == 0:
        raise EmptyTrajectory("cannot take a steady-state window of an empty trajectory")
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must lie in (0, 1)")
    t_end = traj.t_end
    return (t_end * (1.0 - fraction), t_end)
