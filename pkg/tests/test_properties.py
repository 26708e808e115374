"""Property-based tests over randomized plants, tunings, and initial states."""

import math

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pelletsim import (
    ActuatorSpec,
    ControllerSpec,
    HybridState,
    PlantParams,
    Scenario,
    Variant,
    certify,
    check_contraction,
    check_dwell,
    check_envelope,
    delta_max,
    flow_x,
    flow_xi,
    simulate,
    tick_jump,
)

finite = dict(allow_nan=False, allow_infinity=False)

taus = st.floats(0.01, 1.0, **finite)
alphas = st.floats(1e18, 5e19, **finite)
ratios = st.floats(1.1, 10.0, **finite)
fractions = st.floats(1e-6, 1.0, **finite)


@st.composite
def plants(draw):
    alpha = draw(alphas)
    return PlantParams(tau=draw(taus), r=alpha * draw(ratios), alpha=alpha)


@st.composite
def certified_setups(draw, variant=Variant.NM):
    """Plant, actuator and threshold satisfying every tuning condition."""
    plant = draw(plants())
    t_c = draw(st.floats(0.05, 0.95, **finite)) * plant.tau_d
    dm = delta_max(plant, t_c, variant)
    assume(dm > 0.0)
    delta = draw(fractions) * dm
    assume(delta > 0.0)
    x0 = draw(fractions) * plant.r
    return plant, ActuatorSpec(t_c=t_c), ControllerSpec(variant, delta), x0


def short_scenario(plant, actuator, controller, x0, cycles=4.0):
    t_end = max(cycles * plant.tau_d, 3.0 * actuator.t_c)
    return Scenario(plant, actuator, controller, x0=x0, t_end=t_end, samples_per_tick=1)


class TestFlowProperties:
    @given(plants(), st.floats(0.0, 2.0, **finite), st.floats(0.0, 0.3, **finite),
           st.floats(0.0, 0.3, **finite))
    @settings(max_examples=300, deadline=None)
    def test_semigroup(self, plant, drop, a, b):
        x0 = plant.r * (1.0 - drop)
        chained = flow_x(flow_x(x0, a, plant), b, plant)
        direct = flow_x(x0, a + b, plant)
        scale = max(abs(chained), abs(direct), plant.alpha)
        assert abs(chained - direct) <= 1e-12 * scale

    @given(plants(), st.floats(0.0, 2.0, **finite), st.floats(0.0, 0.5, **finite),
           st.floats(0.0, 0.5, **finite), st.floats(0.0, 1e18, **finite))
    @settings(max_examples=300, deadline=None)
    def test_membrane_monotone_and_frozen_below_zero(self, plant, drop, d1, d2, xi0):
        x0 = plant.r * (1.0 - drop)
        lo, hi = min(d1, d2), max(d1, d2)
        assert flow_xi(x0, xi0, lo, plant) <= flow_xi(x0, xi0, hi, plant)
        if x0 < 0.0:
            crossing = plant.tau * math.log1p(-x0 / plant.r)
            assert flow_xi(x0, xi0, 0.5 * crossing, plant) == xi0

    @given(plants(), st.floats(0.0, 1.0, **finite), st.floats(0.0, 0.5, **finite))
    @settings(max_examples=300, deadline=None)
    def test_flow_never_exceeds_reference(self, plant, frac, dt):
        x0 = plant.r * frac
        assert flow_x(x0, dt, plant) <= plant.r


class TestJumpProperties:
    @given(plants(), st.floats(1e10, 1e18, **finite), st.floats(1.0, 50.0, **finite))
    @settings(max_examples=300, deadline=None)
    def test_multi_subtraction_lands_below_threshold(self, plant, delta, multiple):
        actuator = ActuatorSpec(t_c=0.01)
        state = HybridState(x=0.0, xi=multiple * delta, t_timer=0.01)
        out = tick_jump(state, plant, ControllerSpec(Variant.SDM_JM, delta), actuator)
        assert out.fired
        assert out.k_multiples >= 1
        assert 0.0 <= out.state_after.xi < delta

    @given(plants(), st.floats(1e10, 1e18, **finite), st.floats(0.0, 1.0, exclude_max=True,
           **finite))
    @settings(max_examples=300, deadline=None)
    def test_below_threshold_never_fires(self, plant, delta, frac):
        actuator = ActuatorSpec(t_c=0.01)
        state = HybridState(x=0.0, xi=frac * delta * (1.0 - 1e-6), t_timer=0.01)
        out = tick_jump(state, plant, ControllerSpec(Variant.NM, delta), actuator)
        assert not out.fired


class TestTrajectoryProperties:
    @given(certified_setups(), st.sampled_from(list(Variant)))
    @settings(max_examples=100, deadline=None)
    def test_zeno_bound_for_every_variant(self, setup, variant):
        plant, actuator, controller, x0 = setup
        scenario = short_scenario(plant, actuator, ControllerSpec(variant, controller.delta), x0)
        traj = simulate(scenario)
        t_c = actuator.t_c
        for s in traj.samples:
            assert s.time.j <= math.floor(s.time.t / t_c + 1e-9) + 1

    @given(certified_setups())
    @settings(max_examples=100, deadline=None)
    def test_certified_reset_runs_stay_in_envelope(self, setup):
        plant, actuator, controller, x0 = setup
        cert = certify(plant, actuator, controller)
        assert cert.feasible
        traj = simulate(short_scenario(plant, actuator, controller, x0))
        ok, witness = check_envelope(traj, cert)
        assert ok is True, witness

    @given(certified_setups())
    @settings(max_examples=100, deadline=None)
    def test_certified_cycles_contract(self, setup):
        plant, actuator, controller, x0 = setup
        cert = certify(plant, actuator, controller)
        traj = simulate(short_scenario(plant, actuator, controller, x0))
        ok, witness = check_contraction(traj, cert)
        assert ok is True, witness

    @given(certified_setups())
    @settings(max_examples=100, deadline=None)
    def test_certified_gaps_within_dwell_bound(self, setup):
        plant, actuator, controller, x0 = setup
        cert = certify(plant, actuator, controller)
        traj = simulate(short_scenario(plant, actuator, controller, x0))
        ok, witness = check_dwell(traj, cert)
        assert ok is True, witness

    @given(certified_setups(variant=Variant.SDM_JM))
    @settings(max_examples=100, deadline=None)
    def test_multi_subtraction_variant_keeps_reset_family_bounds(self, setup):
        plant, actuator, controller, x0 = setup
        cert = certify(plant, actuator, controller)
        assert cert.feasible
        traj = simulate(short_scenario(plant, actuator, controller, x0))
        assert check_envelope(traj, cert)[0] is True
        for s in traj.fire_samples():
            assert 0.0 <= s.state.xi < controller.delta
