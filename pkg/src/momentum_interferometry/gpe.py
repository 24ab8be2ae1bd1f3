"""Mean-field regime: 1D GPE ground state and Thomas-Fermi closed forms.

Dimensionless stationary equation, kinetic term without the 1/2:

    u psi = -psi'' + y^2 psi + g |psi|^2 psi,   int |psi|^2 dy = 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi, sqrt
from typing import NamedTuple

import numpy as np

from . import specfun
from .basis import DEFAULT_GRID
from .quadrature import panel_rule
from .wavefunction import GridSpec, GridTooNarrow, RealWavefunction

__all__ = [
    "GpeParams",
    "GpeGroundState",
    "GpeNotConverged",
    "solve_ground_state",
    "energy_functional",
    "chemical_potential",
    "stationarity_residual",
    "tf_chemical_potential",
    "tf_half_width",
    "tf_wavefunction",
    "tf_momentum_density",
    "TFApprox",
    "tf_approximations",
    "tf_extrema_factors",
    "tf_extrema",
]


class GpeNotConverged(RuntimeError):
    pass


@dataclass(frozen=True)
class GpeParams:
    g: float
    grid: GridSpec = DEFAULT_GRID
    dtau: float = 1e-3
    conv_tol: float = 1e-14
    max_iter: int = 200_000
    polish: bool = True

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("g must be nonnegative")
        if not (self.dtau > 0 and self.conv_tol > 0):
            raise ValueError("dtau and conv_tol must be positive")


@dataclass(frozen=True)
class GpeGroundState:
    psi: RealWavefunction
    u: float
    energy_history: np.ndarray = field(repr=False)
    iterations: int = 0


def _wavenumbers(grid: GridSpec) -> np.ndarray:
    return 2 * np.pi * np.fft.fftfreq(grid.n_points, d=grid.spacing)


def _kinetic_density(psi, grid):
    k = _wavenumbers(grid)
    dpsi = np.fft.ifft(1j * k * np.fft.fft(psi))
    return np.abs(dpsi) ** 2


def energy_functional(psi: np.ndarray, g: float, grid: GridSpec) -> float:
    """``int |psi'|^2 + y^2 |psi|^2 + (g/2) |psi|^4``, the quantity imaginary time lowers."""
    y = grid.points
    rho = np.abs(psi) ** 2
    return float(grid.integrate(_kinetic_density(psi, grid) + y * y * rho + 0.5 * g * rho * rho))


def chemical_potential(psi: np.ndarray, g: float, grid: GridSpec) -> float:
    """``u = <psi| -d^2 + y^2 + g|psi|^2 |psi>`` for normalized ``psi``."""
    y = grid.points
    rho = np.abs(psi) ** 2
    return float(grid.integrate(_kinetic_density(psi, grid) + y * y * rho + g * rho * rho))


def stationarity_residual(psi: np.ndarray, u: float, g: float, grid: GridSpec) -> float:
    """L2 norm of ``u psi - (-psi'' + y^2 psi + g|psi|^2 psi)``."""
    k = _wavenumbers(grid)
    lap = np.fft.ifft(-k * k * np.fft.fft(psi)).real
    y = grid.points
    r = u * psi - (-lap + y * y * psi + g * psi**3)
    return float(np.sqrt(grid.integrate(r * r)))


def tf_chemical_potential(g: float) -> float:
    return (3 * g / 4) ** (2 / 3)


def tf_half_width(g: float) -> float:
    """``d = sqrt(u) = (3g/4)^{1/3}``."""
    return (3 * g / 4) ** (1 / 3)


def _initial_guess(g: float, grid: GridSpec) -> np.ndarray:
    y = grid.points
    gauss = np.pi**-0.25 * np.exp(-0.5 * y * y)
    if g == 0:
        return gauss
    u = tf_chemical_potential(g)
    psi = np.sqrt(np.clip(u - y * y, 0, None) / g) + 1e-3 * gauss
    return psi / np.sqrt(grid.integrate(psi * psi))


def solve_ground_state(p: GpeParams) -> GpeGroundState:
    """Imaginary-time Strang split-step with renormalization after every step.

    Half step of ``exp(-dtau (y^2 + g psi^2)/2)``, full kinetic step
    ``exp(-dtau k^2)`` in Fourier space, half potential step. Stops when the
    relative change of ``energy_functional`` per step drops below ``conv_tol``.
    """
    grid = p.grid
    if p.g > 0 and tf_half_width(p.g) + 4 > min(grid.y_max, -grid.y_min):
        raise GridTooNarrow("Thomas-Fermi half-width + 4 exceeds the grid")
    if p.g == 0 and 5 > min(grid.y_max, -grid.y_min):
        raise GridTooNarrow("grid must reach |y| = 5")
    y = grid.points
    v_ext = y * y
    kin = np.exp(-p.dtau * _wavenumbers(grid) ** 2)
    psi = _initial_guess(p.g, grid)
    energies = [energy_functional(psi, p.g, grid)]
    for it in range(1, p.max_iter + 1):
        psi = psi * np.exp(-0.5 * p.dtau * (v_ext + p.g * psi * psi))
        psi = np.fft.ifft(kin * np.fft.fft(psi)).real
        psi = psi * np.exp(-0.5 * p.dtau * (v_ext + p.g * psi * psi))
        psi = psi / np.sqrt(grid.integrate(psi * psi))
        e = energy_functional(psi, p.g, grid)
        energies.append(e)
        if abs(energies[-2] - e) <= p.conv_tol * abs(e):
            break
    else:
        raise GpeNotConverged(f"no convergence after {p.max_iter} steps")
    if psi[np.argmax(np.abs(psi))] < 0:
        psi = -psi
    u = chemical_potential(psi, p.g, grid)
    if p.polish:
        psi, u = _newton_polish(psi, u, p.g, grid)
    return GpeGroundState(RealWavefunction(grid, psi), u, np.array(energies), it)


def _laplacian_matrix(grid: GridSpec) -> np.ndarray:
    k = _wavenumbers(grid)
    eye = np.eye(grid.n_points)
    return np.fft.ifft(-k[:, None] ** 2 * np.fft.fft(eye, axis=0), axis=0).real


def _newton_polish(psi, u, g, grid, tol=1e-9, max_steps=8):
    """Newton iteration on the spectrally discretized equation plus the norm.

    The split-step fixed point carries an O(dtau) splitting bias; a few Newton
    steps remove it.
    """
    n = grid.n_points
    h = grid.spacing
    y = grid.points
    lap = _laplacian_matrix(grid)
    jac = np.zeros((n + 1, n + 1))
    for _ in range(max_steps):
        res = -lap @ psi + (y * y + g * psi * psi - u) * psi
        nres = 0.5 * (h * psi @ psi - 1.0)
        if np.sqrt(h * res @ res) < tol and abs(nres) < tol:
            break
        jac[:n, :n] = -lap
        jac[np.arange(n), np.arange(n)] += y * y + 3 * g * psi * psi - u
        jac[:n, n] = -psi
        jac[n, :n] = h * psi
        jac[n, n] = 0.0
        step = np.linalg.solve(jac, -np.concatenate([res, [nres]]))
        psi = psi + step[:n]
        u = u + step[n]
    else:
        raise GpeNotConverged("Newton polish did not converge")
    return psi, float(u)


def tf_wavefunction(g: float, grid: GridSpec = DEFAULT_GRID) -> RealWavefunction:
    """``sqrt((u - y^2)/g)`` on ``|y| < d``, zero outside, ``u = (3g/4)^{2/3}``."""
    if not g > 0:
        raise ValueError("Thomas-Fermi profile needs g > 0")
    u = tf_chemical_potential(g)
    d = sqrt(u)
    if d > min(grid.y_max, -grid.y_min):
        raise GridTooNarrow("Thomas-Fermi support exceeds the grid")

    def evaluate(y, u=u, g=g):
        return np.sqrt(np.clip(u - np.asarray(y, dtype=float) ** 2, 0, None) / g)

    psi = RealWavefunction(grid, evaluate(grid.points), evaluate, (-d, d), True)
    nodes, weights = panel_rule(-d, d, sqrt_ends=(-d, d))
    norm = float(np.dot(weights, evaluate(nodes) ** 2))
    if abs(norm - 1) > 1e-8:  # pragma: no cover - holds analytically
        raise AssertionError(f"Thomas-Fermi profile norm {norm}")
    return psi


def _j1_over_x(x):
    small = np.abs(x) < 1e-3
    xs = np.where(small, 1.0, x)
    x2 = x * x
    return np.where(small, 0.5 - x2 / 16 + x2 * x2 / 384, specfun.bessel_j(1, xs) / xs)


def _h1_over_x(x):
    small = np.abs(x) < 1e-3
    xs = np.where(small, 1.0, x)
    x2 = x * x
    series = 2 / pi * (x / 3 - x * x2 / 45 + x * x2 * x2 / 1575)
    return np.where(small, series, specfun.struve_h(1, xs) / xs)


def tf_momentum_density(q, phi: float, d: float):
    """``3 pi / (8 d q^2) [J1(qd) cos(phi/2) + H1(qd) sin(phi/2)]^2``.

    Written as ``(3 pi d / 8) [c J1(x)/x + s H1(x)/x]^2`` with ``x = qd`` and
    series for ``|x| < 1e-3``.
    """
    if not d > 0:
        raise ValueError("d must be positive")
    q = np.asarray(q, dtype=float)
    x = q * d
    f = np.cos(phi / 2) * _j1_over_x(x) + np.sin(phi / 2) * _h1_over_x(x)
    return 3 * pi * d / 8 * f * f


class TFApprox(NamedTuple):
    q0: float
    q_plus: float
    q_minus: float
    width: float
    visibility: float


def tf_approximations(phi: float, d: float) -> TFApprox:
    """Linearized Thomas-Fermi notch shift, maxima, width and visibility."""
    q0 = 3 * pi / (8 * d) * (phi - pi)
    qp = 8 / (3 * pi * d) * phi
    qm = -8 / (3 * pi * d) * (2 * pi - phi)
    return TFApprox(q0, qp, qm, qp - qm, 1 - 0.5 * abs(phi - pi))


def tf_extrema_factors(q, phi: float, d: float, grouping: str = "bracket"):
    """The two factors whose product vanishes at extrema of ``tf_momentum_density``.

    ``a1 = [J1(x) c + H1(x) s] / x`` and
    ``a2 = [pi x J2(x) c + (2 + pi x H_{-2}(x)) s] / x^2`` for
    ``grouping="bracket"``, which is what differentiating ``a1`` gives.
    ``grouping="printed"`` multiplies only the Struve term by ``s``:
    ``[pi x J2 c + 2 + pi x H_{-2} s] / x^2``.
    """
    q = np.asarray(q, dtype=float)
    x = q * d
    c, s = np.cos(phi / 2), np.sin(phi / 2)
    a1 = c * specfun.bessel_j(1, x) / x + s * specfun.struve_h(1, x) / x
    # 2 + pi x H_{-2}(x) = 2 pi H_1(x) - pi x H_0(x), free of the 1/x pole
    core = 2 * pi * specfun.struve_h(1, x) - pi * x * specfun.struve_h(0, x)
    jterm = pi * x * specfun.bessel_j(2, x) * c
    if grouping == "bracket":
        a2 = (jterm + core * s) / (x * x)
    elif grouping == "printed":
        a2 = (jterm + 2 + (core - 2) * s) / (x * x)
    else:
        raise ValueError(f"unknown grouping {grouping!r}")
    return a1, a2


def tf_extrema(phi: float, d: float):
    """Notch and flanking maxima of ``tf_momentum_density`` by direct numerical
    differentiation (slope roots via the notch finder)."""
    from .notch import find_notch

    return find_notch(lambda q: tf_momentum_density(q, phi, d), search=(-8 / d, 8 / d), step=0.005)
