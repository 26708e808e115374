"""How fast must the actuator tick, and how large may the threshold be?

Walks the closed-form tuning bounds for a 13 m^3 plasma fuelled with
1.3e20-particle pellets (alpha = 1e19 m^-3): the maximum tick period per
controller variant, the admissible threshold range as the actuator slows
down, and the highest reference density a given actuator can hold.
"""

import pelletsim as ps

plant = ps.PlantParams(tau=0.1, r=5e19, alpha=1e19)

print("plant: tau=%.2fs  r=%.1e  alpha=%.1e  gamma=%.2f  tau_d=%.4fs"
      % (plant.tau, plant.r, plant.alpha, plant.gamma, plant.tau_d))
print()

print("maximum tick period by variant (seconds):")
for variant in (ps.Variant.NM, ps.Variant.SDM_JM, ps.Variant.SDM_IC):
    print(f"  {variant.value:7s} {ps.tc_max(plant, variant):.6f}")
print("  (input clipping needs an actuator twice as fast for the same bound)")
print()

print("admissible threshold range shrinks as the tick period grows:")
print("  t_c [s]     delta_max (reset family)")
for frac in (0.25, 0.5, 0.75, 0.9, 0.99, 1.0):
    t_c = frac * ps.tc_max(plant, ps.Variant.NM)
    print(f"  {t_c:.6f}    {ps.delta_max(plant, t_c, ps.Variant.NM):.4e}")
print("  at the limit every launch slot is needed and no tuning room is left")
print()

print("reference ceiling r_max for a 70 Hz centrifuge:")
print(f"  r_max = {ps.r_max(plant, 1 / 70):.4e}  (reference above this is unreachable)")
print()

print("assembled certificates:")
for variant, delta in ((ps.Variant.NM, 1.569e16), (ps.Variant.SDM, 1.569e16),
                       (ps.Variant.SDM_IC, 2.755e16)):
    t_c = 1 / 140 if variant is ps.Variant.SDM_IC else 1 / 70
    cert = ps.certify(plant, ps.ActuatorSpec(t_c=t_c), ps.ControllerSpec(variant, delta))
    verdict = "feasible" if cert.feasible else f"infeasible ({cert.reason})"
    print(f"  {variant.value:7s} t_c={t_c:.5f}  delta={delta:.3e}: {verdict}")
