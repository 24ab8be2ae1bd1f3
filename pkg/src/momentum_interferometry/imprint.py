"""Phase-imprint profiles ``w(y)`` and ``psi(y) -> psi(y) exp(i phi w(y))``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .wavefunction import ComplexWavefunction, RealWavefunction

__all__ = ["PhaseProfile", "profile_value", "apply_imprint"]


@dataclass(frozen=True)
class PhaseProfile:
    """Imprint profile: ``"step"`` is ``Theta(y - y0)`` (with ``Theta(0) = 1``),
    ``"sigmoid"`` is ``(1 + tanh((y - y0)/zeta)) / 2``."""

    kind: str = "step"
    y0: float = 0.0
    zeta: float = 0.0

    def __post_init__(self):
        if self.kind not in ("step", "sigmoid"):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.kind == "sigmoid" and not self.zeta > 0:
            raise ValueError("sigmoid profile needs zeta > 0")
        if self.kind == "step" and self.zeta != 0:
            raise ValueError("step profile takes no smoothing width")

    @classmethod
    def step(cls, y0: float = 0.0) -> "PhaseProfile":
        return cls("step", float(y0), 0.0)

    @classmethod
    def sigmoid(cls, zeta: float, y0: float = 0.0) -> "PhaseProfile":
        return cls("sigmoid", float(y0), float(zeta))

    @classmethod
    def from_smoothing(cls, zeta: float = 0.0, y0: float = 0.0) -> "PhaseProfile":
        """Step for ``zeta == 0``, sigmoid otherwise (the figure convention)."""
        return cls.step(y0) if zeta == 0 else cls.sigmoid(zeta, y0)

    def value(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if self.kind == "step":
            return (y >= self.y0).astype(float)
        return 0.5 * (1.0 + np.tanh((y - self.y0) / self.zeta))


def profile_value(p: PhaseProfile, y):
    out = p.value(y)
    return out[()] if np.ndim(y) == 0 else out


def apply_imprint(psi, phi: float, p: PhaseProfile) -> ComplexWavefunction:
    """Multiply ``psi`` pointwise by ``exp(i phi w(y))``.

    The result remembers the pre-imprint state and the profile so that the
    momentum transform can integrate across the jump exactly.
    """
    factor = np.exp(1j * phi * p.value(psi.grid.points))
    values = psi.values * factor
    if isinstance(psi, RealWavefunction):
        base, imprints = psi, ()
    elif psi.base is not None:
        base, imprints = psi.base, psi.imprints
    else:
        base, imprints = None, ()
    if base is None:
        return ComplexWavefunction(psi.grid, values)
    return ComplexWavefunction(psi.grid, values, base, imprints + ((float(phi), p),))
