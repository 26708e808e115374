"""Closed-form flow between actuator ticks.

During flow the error relaxes toward the reference,

    x(t) = r - e^(-t/tau) * (r - x0),

and the membrane potential integrates ``max(0, x)`` (optionally clipped at
a saturation level ``x_sat``).  Both integrals have exp/log closed forms,
so the engine never steps an ODE: the crossing times of x = 0 and
x = x_sat are computed exactly and the membrane increment is assembled
piecewise.  This makes trajectories bit-reproducible across runs and
platforms, up to floating-point determinism.

Because x is monotone during flow, each crossing occurs at most once per
interval, so an interval has at most two breakpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import PlantParams

# crossing times closer than this fraction of tau to either interval end are
# snapped onto the end to avoid zero-length pieces
BOUNDARY_SNAP = 1e-15

ZERO_CROSSING = "zero_crossing"
SAT_CROSSING = "sat_crossing"


@dataclass(frozen=True)
class FlowSegment:
    """One flow interval with its interior kink offsets, each in (0, duration)."""

    x_start: float
    xi_start: float
    duration: float
    breakpoints: tuple[tuple[float, str], ...] = ()


def flow_x(x0: float, dt: float, plant: PlantParams) -> float:
    """Error after flowing dt seconds from x0.  Total for dt >= 0, x0 <= r;
    the result never exceeds r and is nondecreasing in dt for x0 < r."""
    # x0 - (r - x0)*expm1(-dt/tau) is exact at dt=0 and keeps precision when
    # x0 is close to r
    return x0 - (plant.r - x0) * math.expm1(-dt / plant.tau)


def zero_crossing_time(x0: float, plant: PlantParams) -> float | None:
    """Time for the error to reach 0 from x0, None if it never does (x0 > 0)."""
    if x0 > 0.0:
        return None
    if x0 == 0.0:
        return 0.0
    return plant.tau * math.log1p(-x0 / plant.r)


def sat_crossing_time(x0: float, x_sat: float, plant: PlantParams) -> float | None:
    """Time for the error to climb from x0 to x_sat, 0 if already there,
    None if x_sat >= r (the flow limit) so it is never reached."""
    if x0 >= x_sat:
        return 0.0
    if x_sat >= plant.r:
        return None
    return plant.tau * math.log((plant.r - x0) / (plant.r - x_sat))


def _snap(t: float, duration: float, tau: float) -> float:
    eps = BOUNDARY_SNAP * tau
    if t <= eps:
        return 0.0
    if t >= duration - eps:
        return duration
    return t


def flow_segment(
    x0: float, xi_start: float, duration: float, plant: PlantParams, x_sat: float | None = None
) -> FlowSegment:
    """Locate the interior kinks of one flow interval."""
    breakpoints: list[tuple[float, str]] = []
    if x0 < 0.0:
        t0 = _snap(zero_crossing_time(x0, plant), duration, plant.tau)
        if 0.0 < t0 < duration:
            breakpoints.append((t0, ZERO_CROSSING))
    if x_sat is not None and x0 < x_sat:
        ts = sat_crossing_time(x0, x_sat, plant)
        if ts is not None:
            ts = _snap(ts, duration, plant.tau)
            if 0.0 < ts < duration:
                breakpoints.append((ts, SAT_CROSSING))
    assert len(breakpoints) <= 2
    assert all(b < c for (b, _), (c, _) in zip(breakpoints, breakpoints[1:]))
    return FlowSegment(x0, xi_start, duration, tuple(breakpoints))


def _positive_increment(x_a: float, span: float, plant: PlantParams) -> float:
    # integral of x over a span starting at x_a >= 0:
    #   r*span + tau*(x_a - r)*(1 - e^(-span/tau))
    # the two terms nearly cancel for very short spans; the true value is
    # nonnegative, so clamp the rounded sum
    inc = plant.r * span + plant.tau * (plant.r - x_a) * math.expm1(-span / plant.tau)
    return max(0.0, inc)


def flow_xi(
    x0: float,
    xi0: float,
    dt: float,
    plant: PlantParams,
    x_sat: float | None = None,
) -> float:
    """Membrane potential after flowing dt seconds.

    Integrates max(0, x) piecewise-analytically, or its clipped version when
    ``x_sat`` is given.  The result is never below xi0 and is exactly xi0
    while x stays negative.  The x value at a piece start is pinned to the
    crossing level (0 or x_sat) instead of re-evaluated, so rounding residue
    at a kink cannot leak a negative sliver into the integral.
    """
    if dt <= 0.0:
        return xi0

    t_pos, x_pos = 0.0, x0
    if x0 < 0.0:
        t0 = _snap(zero_crossing_time(x0, plant), dt, plant.tau)
        if t0 >= dt:
            return xi0  # negative throughout
        t_pos, x_pos = t0, 0.0

    if x_sat is None:
        return xi0 + _positive_increment(x_pos, dt - t_pos, plant)
    if x_pos >= x_sat:
        return xi0 + x_sat * (dt - t_pos)

    ts = sat_crossing_time(x_pos, x_sat, plant)
    if ts is None:
        return xi0 + _positive_increment(x_pos, dt - t_pos, plant)
    ts = _snap(t_pos + ts, dt, plant.tau)
    if ts <= t_pos:
        return xi0 + x_sat * (dt - t_pos)
    if ts >= dt:
        return xi0 + _positive_increment(x_pos, dt - t_pos, plant)
    return xi0 + _positive_increment(x_pos, ts - t_pos, plant) + x_sat * (dt - ts)
