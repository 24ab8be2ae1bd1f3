"""From dimensionless notch shifts to an experiment: how far does the notch
travel during time of flight, and how small a phase error can a 5 micron
imaging system resolve?

Run:  python demos/04_lab_units.py
"""
from dataclasses import replace
from math import pi

from momentum_interferometry.dimensional import (
    LaserPulse,
    imprinted_phase,
    notch_displacement,
    notch_velocity,
    reference_lab_context,
    pulse_duration_for_phase,
    resolvance,
)

ctx = reference_lab_context()  # Rb-87, 2 kHz trap, 200 ms flight, 5 micron resolution
for phi in (0.9 * pi, 1.1 * pi, 1.3 * pi):
    print(f"phi = {phi / pi:.1f} pi: notch velocity {notch_velocity(phi, ctx) * 1e3:+.4f} mm/s, "
          f"displacement {notch_displacement(phi, ctx) * 1e6:+.2f} um")

r = resolvance(ctx)
print(f"\nresolvance r = {r:.1f}: smallest resolvable phase deviation pi/r = {pi / r:.2e} rad")
for factor in (0.5, 2.0):
    print(f"  resolution x{factor}: r = {resolvance(replace(ctx, delta_s=ctx.delta_s * factor)):.1f}")

# The imprint itself: a far-detuned pulse shifts the energy by hbar Omega^2 / (4 Delta).
rabi, detuning = 2 * pi * 1e6, -2 * pi * 1e9
t = pulse_duration_for_phase(pi, rabi, detuning)
ctx_laser = replace(ctx, laser=LaserPulse(rabi, detuning, t))
print(f"\npulse for phi = pi at Omega = 2pi x 1 MHz, Delta = -2pi x 1 GHz: {t * 1e6:.1f} us "
      f"(check: {imprinted_phase(ctx_laser) / pi:.6f} pi)")
