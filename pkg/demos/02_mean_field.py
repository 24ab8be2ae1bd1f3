"""Interactions make the cloud wider, so its momentum distribution gets
narrower. The notch then moves less per radian of phase but keeps more of
its contrast. The Thomas-Fermi profile gives closed forms for both effects.

Run:  python demos/02_mean_field.py      (a few seconds; solves the GPE)
"""
from math import pi

from momentum_interferometry import (
    GpeParams,
    PhaseProfile,
    apply_imprint,
    find_notch,
    momentum_density,
    reference_density,
    solve_ground_state,
    tf_approximations,
)
from momentum_interferometry.gpe import tf_chemical_potential, tf_extrema, tf_half_width

for g in (0.0, 5.0, 20.0, 80.0):
    state = solve_ground_state(GpeParams(g))
    tf = tf_chemical_potential(g) if g else float("nan")
    print(f"g = {g:5.1f}: u = {state.u:9.5f}   Thomas-Fermi u = {tf:9.5f}   "
          f"(imaginary-time steps: {state.iterations})")

ground = solve_ground_state(GpeParams(20.0))


def notch(phi):
    psi = apply_imprint(ground.psi, phi, PhaseProfile.step())
    return find_notch(lambda q: momentum_density(psi, q).values)


d = tf_half_width(20.0)
print("\n  phi/pi   q0 (g=0)   q0 (g=20)   q0 (TF)    v (g=0)  v (g=20)  v (TF linear)")
for phi in (0.8 * pi, 0.9 * pi, pi, 1.1 * pi, 1.2 * pi):
    m0 = find_notch(lambda q: reference_density(q, phi))
    m20, mtf = notch(phi), tf_extrema(phi, d)
    print(f"  {phi / pi:5.2f}  {m0.q0:+9.5f}  {m20.q0:+9.5f}  {mtf.q0:+9.5f}   "
          f"{m0.visibility:7.4f}  {m20.visibility:7.4f}  {tf_approximations(phi, d).visibility:7.4f}")

print(f"\nnotch width at phi = pi: g=20 {notch(pi).width:.4f}, TF exact {tf_extrema(pi, d).width:.4f}, "
      f"16/(3d) = {tf_approximations(pi, d).width:.4f}")
