"""Momentum-space interferometry with phase-imprinted trapped quantum gases.

Dimensionless harmonic-oscillator units throughout: positions in
``sqrt(hbar / (m omega))``, momenta in the inverse of that length.
"""
from .basis import eigenenergy, eigenstate, half_line_moments, hermite_function
from .gpe import (
    GpeParams,
    solve_ground_state,
    tf_approximations,
    tf_momentum_density,
    tf_wavefunction,
)
from .imprint import PhaseProfile, apply_imprint
from .manybody import (
    fermi_rspdm,
    imprint_orbitals,
    momentum_distribution,
    peak_shift,
    pse_orbitals,
    tg_rspdm,
)
from .momentum import momentum_density, reference_density, to_momentum
from .notch import NotchMetrics, approx_reference, find_notch, q0_exact_reference
from .wavefunction import GridSpec

__version__ = "0.1.0"

__all__ = [
    "GridSpec",
    "eigenstate",
    "eigenenergy",
    "hermite_function",
    "half_line_moments",
    "PhaseProfile",
    "apply_imprint",
    "to_momentum",
    "momentum_density",
    "reference_density",
    "find_notch",
    "NotchMetrics",
    "approx_reference",
    "q0_exact_reference",
    "GpeParams",
    "solve_ground_state",
    "tf_wavefunction",
    "tf_momentum_density",
    "tf_approximations",
    "imprint_orbitals",
    "fermi_rspdm",
    "tg_rspdm",
    "momentum_distribution",
    "pse_orbitals",
    "peak_shift",
]
