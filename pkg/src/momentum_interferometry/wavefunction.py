"""Grids and sampled wavefunctions in dimensionless trap units."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

__all__ = [
    "GridSpec",
    "RealWavefunction",
    "ComplexWavefunction",
    "GridTooNarrow",
    "EdgeDecayError",
    "EDGE_DECAY",
]

EDGE_DECAY = 1e-10


class GridTooNarrow(ValueError):
    """The grid does not contain the state up to the decay threshold."""


class EdgeDecayError(ValueError):
    """A wavefunction does not vanish at the grid edges."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``linspace(y_min, y_max, n_points)``."""

    y_min: float
    y_max: float
    n_points: int

    def __post_init__(self):
        if not self.y_min < self.y_max:
            raise ValueError("need y_min < y_max")
        if self.n_points < 64:
            raise ValueError("need at least 64 grid points")

    @classmethod
    def symmetric(cls, half_width: float, n_points: int) -> "GridSpec":
        return cls(-float(half_width), float(half_width), int(n_points))

    @property
    def spacing(self) -> float:
        return (self.y_max - self.y_min) / (self.n_points - 1)

    @property
    def is_symmetric(self) -> bool:
        return self.y_min == -self.y_max

    @cached_property
    def points(self) -> np.ndarray:
        y = np.linspace(self.y_min, self.y_max, self.n_points)
        y.flags.writeable = False
        return y

    @cached_property
    def weights(self) -> np.ndarray:
        """Composite trapezoid weights."""
        w = np.full(self.n_points, self.spacing)
        w[0] = w[-1] = 0.5 * self.spacing
        w.flags.writeable = False
        return w

    def integrate(self, values) -> complex | float:
        return np.dot(self.weights, values)

    def conjugate_momenta(self) -> np.ndarray:
        """FFT-conjugate momentum grid (ascending), spacing ``2 pi / (n h)``."""
        n = self.n_points
        return 2 * np.pi * np.fft.fftshift(np.fft.fftfreq(n, d=self.spacing))


def _readonly(a, dtype):
    a = np.array(a, dtype=dtype)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class RealWavefunction:
    """Real amplitudes on a grid.

    ``evaluator`` optionally gives the exact function at arbitrary positions
    (eigenstates, Thomas-Fermi profile); otherwise off-grid values come from
    trigonometric interpolation of the samples. ``support`` restricts the
    state to a closed interval; with ``sqrt_edges`` the state vanishes like a
    square root at both ends of it.
    """

    grid: GridSpec
    values: np.ndarray
    evaluator: Optional[Callable[[np.ndarray], np.ndarray]] = None
    support: Optional[tuple[float, float]] = None
    sqrt_edges: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", _readonly(self.values, float))
        if self.values.shape != (self.grid.n_points,):
            raise ValueError("values do not match the grid")

    def norm(self) -> float:
        return float(np.sqrt(self.grid.integrate(np.abs(self.values) ** 2)))

    def __call__(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if self.evaluator is not None:
            return self.evaluator(y)
        return _trig_interpolate(self, y).real

    @cached_property
    def _fourier_coefficients(self):
        return _coefficients(self.grid, self.values)


@dataclass(frozen=True, eq=False)
class ComplexWavefunction:
    """Complex amplitudes on a grid.

    When produced by phase imprinting, ``base`` is the smooth pre-imprint state
    and ``imprints`` the ``(phi, profile)`` pairs applied to it, which lets the
    momentum transform treat the phase jumps exactly.
    """

    grid: GridSpec
    values: np.ndarray
    base: Optional[RealWavefunction | "ComplexWavefunction"] = None
    imprints: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "values", _readonly(self.values, complex))
        if self.values.shape != (self.grid.n_points,):
            raise ValueError("values do not match the grid")

    def norm(self) -> float:
        return float(np.sqrt(self.grid.integrate(np.abs(self.values) ** 2)))

    def phase_factor(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        out = np.ones(y.shape, dtype=complex)
        for phi, profile in self.imprints:
            out = out * np.exp(1j * phi * profile.value(y))
        return out

    def __call__(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if self.base is not None:
            return self.base(y) * self.phase_factor(y)
        return _trig_interpolate(self, y)

    @cached_property
    def _fourier_coefficients(self):
        return _coefficients(self.grid, self.values)


def _coefficients(grid: GridSpec, values):
    n = grid.n_points
    c = np.fft.fft(values) / n
    k = np.fft.fftfreq(n, d=grid.spacing) * 2 * np.pi
    if n % 2 == 0:
        # split the Nyquist mode symmetrically so real data stays real
        c = np.append(c, 0.5 * c[n // 2])
        c[n // 2] *= 0.5
        k = np.append(k, -k[n // 2])
    return c, k


def _trig_interpolate(psi, y, chunk: int = 256):
    """Band-limited interpolation of the periodic extension of the samples."""
    c, k = psi._fourier_coefficients
    y = np.asarray(y, dtype=float)
    flat = y.ravel() - psi.grid.y_min
    out = np.empty(flat.shape, dtype=complex)
    for start in range(0, flat.size, chunk):
        seg = flat[start : start + chunk]
        out[start : start + chunk] = np.exp(1j * np.outer(seg, k)) @ c
    return out.reshape(y.shape)
