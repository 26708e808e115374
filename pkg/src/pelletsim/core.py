"""Domain types for pellet-fuelled plasma density control.

The plant is a first-order electron-density decay with confinement time
``tau``; the controlled quantity is the density error ``x = r - n_e``.
Injecting one pellet raises the density by ``alpha`` instantaneously, so
the error jumps by ``-alpha``.  A spiking controller accumulates the
(clipped) positive error in a membrane potential ``xi`` and may fire a
pellet only at actuator ticks, i.e. at integer multiples of the tick
period ``t_c``, optionally gated by a pellet preparation time ``t_prep``.

All types are immutable after construction and safe to share between
threads.  Densities are SI doubles of magnitude ~1e19; relative
comparisons elsewhere in the package are scaled by ``max(|value|, alpha)``
to avoid absolute-epsilon misuse at these magnitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class ValidationError(ValueError):
    """A parameter set violates a model invariant."""


class RNotAboveAlpha(ValidationError):
    """Reference at or below the pellet increment: the open loop already
    converges to r on its own and pellets add nothing."""


class NonPositiveParam(ValidationError):
    """A parameter that must be positive (or nonnegative) is not."""


class Variant(str, Enum):
    """Controller variant: what happens to xi when a pellet fires.

    NM      -- integrate-and-fire reset, xi+ = 0
    SDM     -- sigma-delta residue, xi+ = xi - delta (wind-up prone)
    SDM_IC  -- sigma-delta with the integrator input clipped at delta/t_c
    SDM_JM  -- sigma-delta subtracting k*delta, k = floor(xi/delta)
    """

    NM = "NM"
    SDM = "SDM"
    SDM_IC = "SDM_IC"
    SDM_JM = "SDM_JM"


class ActuatorMode(str, Enum):
    CENTRIFUGE = "centrifuge"
    GAS_GUN = "gas_gun"


def _require_positive(name: str, value: float) -> None:
    if not (value > 0.0) or not math.isfinite(value):
        raise NonPositiveParam(f"{name} must be positive and finite, got {value!r}")


def _require_nonnegative(name: str, value: float) -> None:
    if value < 0.0 or not math.isfinite(value):
        raise NonPositiveParam(f"{name} must be nonnegative and finite, got {value!r}")


@dataclass(frozen=True)
class PlantParams:
    """Physics constants of the density loop."""

    tau: float    # confinement time [s]
    r: float      # reference density [particles/m^3]
    alpha: float  # density increase per pellet [particles/m^3]

    def __post_init__(self) -> None:
        _require_positive("tau", self.tau)
        _require_positive("alpha", self.alpha)
        if not math.isfinite(self.r):
            raise NonPositiveParam(f"r must be finite, got {self.r!r}")
        if self.r <= self.alpha:
            raise RNotAboveAlpha(
                f"reference r={self.r!r} must exceed pellet increment alpha={self.alpha!r}"
            )

    @classmethod
    def from_pellet(cls, tau: float, r: float, m_p: float, volume: float) -> PlantParams:
        """Build from pellet particle count and plasma volume; the pair is
        collapsed to alpha = m_p / volume and not retained."""
        _require_positive("m_p", m_p)
        _require_positive("volume", volume)
        return cls(tau=tau, r=r, alpha=m_p / volume)

    @property
    def gamma(self) -> float:
        """Per-cycle contraction factor (r - alpha) / r, in (0, 1)."""
        return (self.r - self.alpha) / self.r

    @property
    def tau_d(self) -> float:
        """Certified maximum time between pellet launches, tau*ln(r/(r-alpha))."""
        return self.tau * math.log(self.r / (self.r - self.alpha))


@dataclass(frozen=True)
class ActuatorSpec:
    """Pellet launcher timing."""

    t_c: float                                   # tick (rotation/sampling) period [s]
    t_prep: float = 0.0                          # pellet preparation time [s]
    mode: ActuatorMode = ActuatorMode.CENTRIFUGE

    def __post_init__(self) -> None:
        if not isinstance(self.mode, ActuatorMode):
            object.__setattr__(self, "mode", ActuatorMode(self.mode))
        _require_positive("t_c", self.t_c)
        _require_nonnegative("t_prep", self.t_prep)
        if self.mode is ActuatorMode.GAS_GUN and not self.t_prep > 0.0:
            # for a gas gun t_c is merely the sampling period; the physical
            # rate limit is t_prep, which therefore must be set
            raise NonPositiveParam("gas_gun mode requires t_prep > 0")

    @property
    def prep_enabled(self) -> bool:
        return self.t_prep > 0.0

    def prep_ticks(self) -> int:
        """Minimum tick spacing l = ceil(t_prep / t_c) between pellets (1 when
        the preparation gate is disabled or shorter than one tick)."""
        if not self.prep_enabled:
            return 1
        # shave float noise so an exact multiple does not round up
        return max(1, math.ceil(self.t_prep / self.t_c - 1e-9))


@dataclass(frozen=True)
class ControllerSpec:
    """Spiking controller configuration."""

    variant: Variant
    delta: float  # firing threshold in accumulated-error units [particles*s/m^3]

    def __post_init__(self) -> None:
        if not isinstance(self.variant, Variant):
            object.__setattr__(self, "variant", Variant(self.variant))
        _require_positive("delta", self.delta)


@dataclass(frozen=True)
class HybridState:
    """Full state (x, xi, T, T_p) between or at ticks.

    The bound x <= r depends on the plant and is enforced where states meet a
    plant: at scenario construction and throughout the flow, which can only
    push x toward r from below.
    """

    x: float              # density error r - n_e [particles/m^3]
    xi: float             # membrane potential [particles*s/m^3]
    t_timer: float = 0.0  # time since last tick [s]
    t_prep_timer: float = 0.0  # time since last pellet [s]

    def __post_init__(self) -> None:
        if self.xi < 0.0:
            raise ValidationError(f"xi must be nonnegative, got {self.xi!r}")
        if self.t_timer < 0.0 or self.t_prep_timer < 0.0:
            raise ValidationError("timers must be nonnegative")


@dataclass(frozen=True, order=True)
class HybridTime:
    """A point (t, j) of a hybrid time domain: t seconds, j jumps so far."""

    t: float
    j: int

    def __post_init__(self) -> None:
        if self.t < 0.0 or self.j < 0:
            raise ValidationError("hybrid time components must be nonnegative")


@dataclass(frozen=True)
class TrajectorySample:
    time: HybridTime
    state: HybridState
    fired: bool = False


@dataclass(frozen=True)
class Trajectory:
    """Ordered samples over a hybrid time domain, with pellet-fire markers."""

    samples: tuple[TrajectorySample, ...]
    plant: PlantParams
    controller: ControllerSpec
    actuator: ActuatorSpec

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def t_end(self) -> float:
        return self.samples[-1].time.t if self.samples else 0.0

    def times(self):
        import numpy as np

        return np.array([s.time.t for s in self.samples])

    def x_values(self):
        import numpy as np

        return np.array([s.state.x for s in self.samples])

    def xi_values(self):
        import numpy as np

        return np.array([s.state.xi for s in self.samples])

    def fire_samples(self) -> tuple[TrajectorySample, ...]:
        """Post-jump samples at which a pellet fired."""
        return tuple(s for s in self.samples if s.fired)

    def tick_events(self) -> tuple["TickEvent", ...]:
        """(t, j_after, pre-jump state, post-jump state, fired) per tick."""
        events = []
        for a, b in zip(self.samples, self.samples[1:]):
            if b.time.j == a.time.j + 1:
                events.append(TickEvent(a.time.t, b.time.j, a.state, b.state, b.fired))
        return tuple(events)


@dataclass(frozen=True)
class TickEvent:
    t: float
    j_after: int
    before: HybridState
    after: HybridState
    fired: bool


@dataclass(frozen=True)
class Certificate:
    """Closed-form tuning bounds plus the feasibility verdict.

    ``tc_max`` and ``delta_max`` are the limits backing *this* certificate
    (for the widened slow-actuator result they are the widened limits), so
    feasible == (t_c within tc_max) and (0 < delta <= delta_max) always
    reads consistently.  ``bound_scope`` records what the bound interval is
    claimed over: the whole trajectory via the decaying envelope, or only
    the steady state.
    """

    tc_max: float
    delta_max: float
    tau_d: float
    gamma: float
    r_max: float
    l: int
    feasible: bool
    bound_interval: tuple[float, float] | None = None
    bound_scope: str = "none"  # "trajectory" | "steady_state" | "none"
    reason: str = ""
    nonstandard: bool = False

    def as_dict(self) -> dict:
        return {
            "tc_max": self.tc_max,
            "delta_max": self.delta_max,
            "tau_d": self.tau_d,
            "gamma": self.gamma,
            "r_max": self.r_max,
            "l": self.l,
            "feasible": self.feasible,
            "bound_interval": list(self.bound_interval) if self.bound_interval else None,
            "bound_scope": self.bound_scope,
            "reason": self.reason,
            "nonstandard": self.nonstandard,
        }


def validate(plant: PlantParams, actuator: ActuatorSpec, controller: ControllerSpec) -> None:
    """Re-assert every cross-parameter invariant; raises on violation.

    Constructors already enforce these, so this is cheap insurance on the
    simulation entry path.
    """
    _require_positive("tau", plant.tau)
    _require_positive("alpha", plant.alpha)
    if plant.r <= plant.alpha:
        raise RNotAboveAlpha(
            f"reference r={plant.r!r} must exceed pellet increment alpha={plant.alpha!r}"
        )
    _require_positive("t_c", actuator.t_c)
    _require_nonnegative("t_prep", actuator.t_prep)
    if actuator.mode is ActuatorMode.GAS_GUN and not actuator.t_prep > 0.0:
        raise NonPositiveParam("gas_gun mode requires t_prep > 0")
    _require_positive("delta", controller.delta)
