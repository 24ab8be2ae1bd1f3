"""Ten particles: hard-core bosons (Tonks-Girardeau) and free fermions share
the same density but not the same momentum distribution. The bosons keep a
central dip after a pi imprint. In the fermions, the N shifted orbital
patterns average the dip away. Emptying the even orbitals (parity-selective
evaporation) turns the central zero at phi = 0 into a peak at phi = pi.

Run:  python demos/03_many_body.py      (about ten seconds)
"""
from math import pi

import numpy as np

from momentum_interferometry import (
    PhaseProfile,
    fermi_rspdm,
    find_notch,
    imprint_orbitals,
    momentum_distribution,
    peak_shift,
    pse_orbitals,
    tg_rspdm,
)
from momentum_interferometry.manybody import fermi_momentum, ground_orbitals

N = 10
q = np.linspace(-4, 4, 17)
for phi in (0.0, pi):
    orbs = imprint_orbitals(ground_orbitals(N), phi)
    tg = momentum_distribution(tg_rspdm(orbs), q).values
    fe = momentum_distribution(fermi_rspdm(orbs), q).values
    print(f"\nphi = {phi / pi:.0f} pi\n     q     n_TG      n_F")
    for row in zip(q, tg, fe):
        print("  {:+5.1f}  {:7.4f}  {:7.4f}".format(*row))

rho = tg_rspdm(imprint_orbitals(ground_orbitals(N), pi))
m = find_notch(lambda k: momentum_distribution(rho, k).values, search=(-3, 3))
print(f"\nTG central dip at phi = pi: q0 = {m.q0:+.1e}, visibility = {m.visibility:.3f}")

pse = pse_orbitals(N)
k = np.array([0.0, 0.5, 1.0])
print("\nodd orbitals only:")
for phi in (0.0, pi):
    print(f"  phi = {phi / pi:.0f} pi: n_F(0, 0.5, 1) = "
          + ", ".join(f"{v:.3e}" for v in fermi_momentum(imprint_orbitals(pse, phi), k)))

print("\npeak shift vs phase (sharp step and zeta = 0.5 smoothing):")
for phi in np.linspace(0.8 * pi, 1.2 * pi, 5):
    sharp = peak_shift(pse, phi)
    smooth = peak_shift(pse, phi, PhaseProfile.sigmoid(0.5))
    print(f"  phi/pi = {phi / pi:.2f}: {sharp:+.5f}  {smooth:+.5f}")
