"""Two ways to tame the sigma-delta integrator.

Input clipping caps the membrane input at delta/t_c, so the integrator can
gain at most one threshold per rotation; it buys back the certified bound
at the price of a double-speed actuator.  Adjusting the jump map instead
subtracts floor(xi/delta) thresholds per fire, which removes the backlog in
one shot and keeps the reset-family certificate at unchanged speed.
"""

from pathlib import Path

import pelletsim as ps
from pelletsim.io import render_svg

OUT = Path(__file__).parent / "_out"
OUT.mkdir(exist_ok=True)

plant = ps.PlantParams(tau=0.1, r=5e19, alpha=1e19)

runs = (
    ("input clipping, 140 Hz", ps.Variant.SDM_IC, ps.ActuatorSpec(t_c=1 / 140), 2.755e16),
    ("adjusted jump map, 70 Hz", ps.Variant.SDM_JM, ps.ActuatorSpec(t_c=1 / 70), 1.569e16),
)

for label, variant, actuator, delta in runs:
    controller = ps.ControllerSpec(variant, delta)
    cert = ps.certify(plant, actuator, controller)
    traj = ps.simulate(ps.Scenario(plant, actuator, controller, x0=plant.r, t_end=1.0))
    rep = ps.report(traj, cert)
    m = rep.metrics
    print(f"{label}: certificate {'feasible' if cert.feasible else 'withheld'}")
    print(f"  envelope: {rep.envelope_ok}   wind-up: {rep.windup_detected}")
    print(f"  steady error band [{m.min_x_steady:.3e}, {m.max_x_steady:.3e}]")
    if variant is ps.Variant.SDM_JM:
        multiples = [s.state.xi / delta for s in traj.fire_samples()]
        print(f"  every post-fire residue below one threshold: {max(multiples) < 1.0}")
    render_svg(traj, cert, OUT / f"mitigated_{variant.value.lower()}.svg")
    print()

print("the adjusted jump map matches the reset controller's certificate for")
print("identical parameters, so mitigation costs nothing but the extra logic;")
print("clipping instead halves the allowed tick period.")
