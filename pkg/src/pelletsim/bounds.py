"""Closed-form tuning constraints and ultimate-bound envelopes.

For a reset-family controller (NM, SDM_JM) on a plant with contraction
factor gamma = (r - alpha)/r, the tick period must satisfy
t_c <= tau_d := tau*ln(r/(r - alpha)) and the threshold must lie in
(0, delta_max(t_c)]; the error then stays inside a decaying envelope and
ultimately inside (-alpha, alpha].  Input clipping (SDM_IC) needs an
actuator twice as fast for the same ultimate bound, but with a near-zero
threshold a slower actuator (t_c <= tau_d) still yields the wider
steady-state bound (-alpha, alpha*(2 - alpha/r)].  A preparation time
t_prep stretches every constraint by l = ceil(t_prep/t_c) ticks.

Plain SDM gets no certificate: its integrator wind-up makes the
controller use every launch slot until the residue is worked off,
ignoring the reference, so no bound can be guaranteed.
"""

from __future__ import annotations

import math

from .core import (
    ActuatorSpec,
    Certificate,
    ControllerSpec,
    PlantParams,
    Variant,
    validate,
)
from .flow import flow_x

# a clipping level below this fraction of alpha is treated as a near-zero
# threshold, which is what the widened slow-actuator bound is proven for
_NEAR_ZERO_SAT = 1e-6


def tc_max(plant: PlantParams, variant: Variant, l: int = 1) -> float:
    """Largest admissible tick period for the variant.

    Reset-family controllers admit tau_d/l (closed end); input clipping
    admits tau_d/2, with the endpoint itself excluded.
    """
    if variant is Variant.SDM_IC:
        return plant.tau_d / 2.0
    return plant.tau_d / max(l, 1)


def delta_max(plant: PlantParams, t_c: float, variant: Variant, l: int = 1) -> float:
    """Upper end of the admissible threshold range (may be <= 0 when the
    tick period is too long, meaning the range is empty)."""
    r, tau = plant.r, plant.tau
    if variant is Variant.SDM_IC:
        return (r - (r - plant.alpha) * math.exp(2.0 * t_c / tau)) * t_c
    t_eff = max(l, 1) * t_c
    return (
        r * tau * math.log(r / (r - plant.alpha))
        - r * tau * (1.0 - plant.gamma * math.exp(t_eff / tau))
        - r * t_eff
    )


def r_max(plant: PlantParams, t_c: float, l: int = 1) -> float:
    """Highest reference the actuator can sustain with pellets of size alpha."""
    growth = math.exp(max(l, 1) * t_c / plant.tau)
    return growth / (growth - 1.0) * plant.alpha


def envelope(t: float, x0: float, plant: PlantParams) -> tuple[float, float]:
    """Certified (lower, upper) error bounds at time t; the lower bound is
    exclusive, the upper inclusive.

    For x0 > 0 the upper bound decays geometrically per dwell interval and
    converges to alpha; for x0 <= 0 the lower bound follows the open-loop
    climb until it passes -alpha.
    """
    if x0 > 0.0:
        upper = plant.gamma ** (t / plant.tau_d - 1.0) * x0 + plant.alpha
        return (-plant.alpha, upper)
    lower = min(flow_x(x0, t, plant), -plant.alpha)
    return (lower, plant.alpha)


def ub_ic_slow(plant: PlantParams) -> float:
    """Steady-state upper bound alpha*(2 - alpha/r) for input clipping with a
    near-zero threshold on an actuator no faster than the reset family needs."""
    return plant.alpha * (2.0 - plant.alpha / plant.r)


def certify(
    plant: PlantParams, actuator: ActuatorSpec, controller: ControllerSpec
) -> Certificate:
    """Evaluate every applicable tuning condition and assemble the verdict.

    An infeasible certificate never blocks simulation; it just records that
    no bound is guaranteed for the configuration.
    """
    validate(plant, actuator, controller)
    l = actuator.prep_ticks()
    tau_d, gamma = plant.tau_d, plant.gamma
    t_c, delta = actuator.t_c, controller.delta
    rmax = r_max(plant, t_c, l)
    ultimate = (-plant.alpha, plant.alpha)

    if controller.variant is Variant.SDM:
        return Certificate(
            tc_max=tc_max(plant, Variant.SDM, l),
            delta_max=delta_max(plant, t_c, Variant.SDM, l),
            tau_d=tau_d,
            gamma=gamma,
            r_max=rmax,
            l=l,
            feasible=False,
            nonstandard=actuator.prep_enabled and l > 1,
            reason="plain sigma-delta is subject to integrator wind-up; no bound is guaranteed",
        )

    if controller.variant is Variant.SDM_IC:
        nonstandard = actuator.prep_enabled and l > 1
        tcm = tc_max(plant, Variant.SDM_IC)
        dm = delta_max(plant, t_c, Variant.SDM_IC)
        if nonstandard:
            return Certificate(
                tc_max=tcm, delta_max=dm, tau_d=tau_d, gamma=gamma, r_max=rmax, l=l,
                feasible=False, nonstandard=True,
                reason="input clipping combined with a multi-tick preparation time is "
                "not a certified configuration",
            )
        if t_c < tcm and 0.0 < delta <= dm:
            return Certificate(
                tc_max=tcm, delta_max=dm, tau_d=tau_d, gamma=gamma, r_max=rmax, l=l,
                feasible=True, bound_interval=ultimate, bound_scope="trajectory",
            )
        # widened steady-state bound: actuator as slow as the reset family
        # allows, threshold small enough that clipping kicks in immediately
        dm_widened = _NEAR_ZERO_SAT * plant.alpha * t_c
        if t_c <= tau_d and 0.0 < delta <= dm_widened:
            return Certificate(
                tc_max=tau_d, delta_max=dm_widened, tau_d=tau_d, gamma=gamma,
                r_max=rmax, l=l, feasible=True,
                bound_interval=(-plant.alpha, ub_ic_slow(plant)),
                bound_scope="steady_state",
                reason="slow actuator with near-zero threshold: only the widened "
                "steady-state bound is certified",
            )
        return Certificate(
            tc_max=tcm, delta_max=dm, tau_d=tau_d, gamma=gamma, r_max=rmax, l=l,
            feasible=False,
            reason="tick period or threshold outside the certified range for input clipping",
        )

    # reset family: NM and SDM_JM share identical conditions and bounds
    tcm = tc_max(plant, controller.variant, l)
    dm = delta_max(plant, t_c, controller.variant, l)
    prep_ok = (not actuator.prep_enabled) or actuator.t_prep <= tau_d
    feasible = prep_ok and t_c <= tcm and 0.0 < delta <= dm
    reason = ""
    if not prep_ok:
        reason = "preparation time exceeds the certified dwell bound"
    elif not feasible:
        reason = "tick period or threshold outside the certified range"
    return Certificate(
        tc_max=tcm, delta_max=dm, tau_d=tau_d, gamma=gamma, r_max=rmax, l=l,
        feasible=feasible,
        bound_interval=ultimate if feasible else None,
        bound_scope="trajectory" if feasible else "none",
        reason=reason,
    )
