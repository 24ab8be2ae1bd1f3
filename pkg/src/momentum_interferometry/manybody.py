"""Free fermions and the Tonks-Girardeau gas after a phase imprint.

Both share the orbitals; they differ only in the reduced single-particle
density matrix ``rho(y, y')``. The bosonic one follows the cofactor
construction

    rho_TG(y, y') = sum_{l,n} conj(psi_l(y)) A_ln(y, y') psi_n(y'),
    A = (P^{-1})^T det P,   P_ln = delta_ln - 2 int_y^{y'} conj(psi_l) psi_n,

for ``y <= y'``, with the other triangle filled by Hermitian symmetry.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt
from typing import Sequence

import numpy as np

from .basis import eigenstate
from .imprint import PhaseProfile, apply_imprint
from .momentum import MomentumDensity, to_momentum
from .notch import NoNotch, _refine, _local_extrema
from .wavefunction import GridSpec

__all__ = [
    "MANYBODY_GRID",
    "OrbitalSet",
    "ReducedDensityMatrix",
    "HermiticityError",
    "SingularP",
    "NoPeak",
    "ground_orbitals",
    "pse_orbitals",
    "imprint_orbitals",
    "fermi_rspdm",
    "tg_rspdm",
    "momentum_distribution",
    "momentum_distribution_fft",
    "fermi_momentum",
    "peak_shift",
]

MANYBODY_GRID = GridSpec.symmetric(12.0, 512)
_DET_GUARD = 1e-10


class HermiticityError(ValueError):
    pass


class SingularP(ArithmeticError):
    """The overlap matrix is singular and the adjugate fallback failed."""


class NoPeak(RuntimeError):
    """The momentum distribution has no isolated central maximum."""


@dataclass(frozen=True)
class OrbitalSet:
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise ValueError("empty orbital set")
        if idx[0] < 0 or any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("indices must be strictly increasing and nonnegative")
        object.__setattr__(self, "indices", idx)

    @property
    def N(self) -> int:
        return len(self.indices)


def ground_orbitals(N: int) -> OrbitalSet:
    return OrbitalSet(tuple(range(N)))


def pse_orbitals(N: int) -> OrbitalSet:
    """Odd-parity occupation ``{1, 3, ..., 2N-1}`` left by parity-selective evaporation."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return OrbitalSet(tuple(range(1, 2 * N, 2)))


@dataclass(frozen=True, eq=False)
class ReducedDensityMatrix:
    grid: GridSpec
    values: np.ndarray
    statistics: str

    def __post_init__(self):
        if self.statistics not in ("fermi", "tg"):
            raise ValueError("statistics must be 'fermi' or 'tg'")
        v = np.array(self.values, dtype=complex)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def density(self) -> np.ndarray:
        return np.diagonal(self.values).real

    def trace(self) -> float:
        return float(self.grid.integrate(self.density))

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.values - self.values.conj().T)))


def imprint_orbitals(orbitals: OrbitalSet, phi: float, p: PhaseProfile | None = None,
                     grid: GridSpec = MANYBODY_GRID):
    p = PhaseProfile.step() if p is None else p
    return [apply_imprint(eigenstate(n, grid), phi, p) for n in orbitals.indices]


def _matrix(orbitals: Sequence) -> np.ndarray:
    grids = {o.grid for o in orbitals}
    if len(grids) != 1:
        raise ValueError("orbitals live on different grids")
    return np.array([o.values for o in orbitals], dtype=complex)


def fermi_rspdm(orbitals: Sequence) -> ReducedDensityMatrix:
    """``rho_F(y, y') = sum_n conj(psi_n(y)) psi_n(y')``."""
    psi = _matrix(orbitals)
    return ReducedDensityMatrix(orbitals[0].grid, psi.conj().T @ psi, "fermi")


def _cumulative_overlaps(psi: np.ndarray, grid: GridSpec) -> np.ndarray:
    """``C[j] = int_{y_0}^{y_j} conj(psi_l) psi_n`` by the trapezoid rule, shape (G, N, N)."""
    prod = np.einsum("lg,ng->gln", psi.conj(), psi)
    c = np.zeros_like(prod)
    c[1:] = np.cumsum(0.5 * grid.spacing * (prod[1:] + prod[:-1]), axis=0)
    return c


def _adjugate_transpose_svd(p: np.ndarray) -> np.ndarray:
    """``(adj P)^T`` from the SVD; finite where ``P`` is singular."""
    u, s, vh = np.linalg.svd(p)
    n = s.shape[-1]
    prods = np.empty_like(s)
    for k in range(n):
        prods[..., k] = np.prod(np.delete(s, k, axis=-1), axis=-1)
    phase = np.linalg.det(u) * np.linalg.det(vh)
    adj = np.einsum("...ik,...k,...kj->...ij", vh.conj().swapaxes(-1, -2), prods, u.conj().swapaxes(-1, -2))
    return (phase[..., None, None] * adj).swapaxes(-1, -2)


def _a_matrices(p: np.ndarray) -> np.ndarray:
    det = np.linalg.det(p)
    small = np.abs(det) < _DET_GUARD
    out = np.empty_like(p)
    if np.any(~small):
        good = p[~small]
        out[~small] = np.linalg.inv(good).swapaxes(-1, -2) * det[~small][:, None, None]
    if np.any(small):
        out[small] = _adjugate_transpose_svd(p[small])
    if not np.all(np.isfinite(out)):
        raise SingularP("cofactor evaluation produced non-finite entries")
    return out


def tg_rspdm(orbitals: Sequence) -> ReducedDensityMatrix:
    """Tonks-Girardeau RSPDM by the cofactor construction; ``O(N^3 G^2)``."""
    psi = _matrix(orbitals)
    n_orb, g = psi.shape
    if n_orb > 20:
        raise ValueError("tg_rspdm supports at most 20 particles")
    grid = orbitals[0].grid
    cum = _cumulative_overlaps(psi, grid)
    eye = np.eye(n_orb)
    rho = np.zeros((g, g), dtype=complex)
    conj_psi = psi.conj()
    for i in range(g):
        p = eye - 2.0 * (cum[i:] - cum[i])
        a = _a_matrices(p)
        # rho[i, j] = sum_ln conj(psi_l(y_i)) A_ln(i, j) psi_n(y_j)
        left = np.einsum("l,jln->jn", conj_psi[:, i], a)
        rho[i, i:] = np.einsum("jn,nj->j", left, psi[:, i:])
    upper = np.triu(rho, 1)
    rho = upper + upper.conj().T + np.diag(np.diagonal(rho).real)
    return ReducedDensityMatrix(grid, rho, "tg")


def _check_hermitian(rho: ReducedDensityMatrix, tol: float = 1e-10):
    scale = max(1.0, float(np.max(np.abs(rho.values))))
    if rho.hermiticity_defect() > tol * scale:
        raise HermiticityError("density matrix is not Hermitian")


def _finalize(n: np.ndarray, q: np.ndarray) -> MomentumDensity:
    scale = max(1.0, float(np.max(np.abs(n.real))))
    if np.max(np.abs(n.imag)) > 1e-10 * scale:
        raise HermiticityError("momentum distribution has an imaginary part")
    return MomentumDensity(q, n.real)


def momentum_distribution(rho: ReducedDensityMatrix, q) -> MomentumDensity:
    """``n(q) = (2 pi)^{-1} int int exp(iq(y - y')) rho(y, y')`` by trapezoid sums.

    Contracted as ``conj(v) . rho v`` with ``v_k = w_k exp(-i q y_k)``.
    """
    _check_hermitian(rho)
    q = np.atleast_1d(np.asarray(q, dtype=float))
    grid = rho.grid
    v = grid.weights[None, :] * np.exp(-1j * np.outer(q, grid.points))
    n = np.einsum("qj,qj->q", v.conj(), v @ rho.values.T) / (2 * pi)
    return _finalize(n, q)


def momentum_distribution_fft(rho: ReducedDensityMatrix) -> MomentumDensity:
    """Same sum on the full conjugate momentum band of the grid.

    The band integral equals the discrete trace exactly (discrete Parseval),
    so this is the path for checking ``int n dq = N``.
    """
    _check_hermitian(rho)
    grid = rho.grid
    q = grid.conjugate_momenta()
    phase = np.exp(-1j * q * grid.y_min)
    # column transform over y' (kernel exp(-i q y')), then row transform over y (exp(+i q y))
    t = np.fft.fftshift(np.fft.fft(rho.values, axis=1), axes=1) * phase[None, :]
    t = np.fft.fftshift(np.fft.ifft(t, axis=0), axes=0) * grid.n_points * phase.conj()[:, None]
    n = np.diagonal(t) * grid.spacing**2 / (2 * pi)
    return _finalize(np.asarray(n), q)


def fermi_momentum(orbitals: Sequence, q, method: str = "auto") -> np.ndarray:
    """``n_F(q) = sum_n |psi_n(q)|^2`` from per-orbital transforms."""
    q = np.asarray(q, dtype=float)
    return sum(np.abs(to_momentum(o, q, method)) ** 2 for o in orbitals)


def peak_shift(orbitals: OrbitalSet, phi: float, p: PhaseProfile | None = None,
               grid: GridSpec = MANYBODY_GRID, search: float = 1.5,
               step: float = 0.005) -> float:
    """Position of the global maximum of ``n_F`` on ``|q| <= search``.

    Uses the jump-aware orbital transforms, refined to a slope root. Raises
    ``NoPeak`` when the centre carries a zero (``phi = 0`` for odd orbitals)
    or when the largest maxima are mirror images of equal height.
    """
    orbs = imprint_orbitals(orbitals, phi, p, grid)

    def density(q):
        return fermi_momentum(orbs, q)

    q = np.arange(-search, search + 0.5 * step, step)
    f = density(q)
    top = float(f.max())
    if float(density(np.array([0.0]))[0]) < 1e-10 * top:
        raise NoPeak("distribution vanishes at q = 0")
    maxima = _local_extrema(f, "max")
    if maxima.size == 0:
        raise NoPeak("no interior maximum")
    order = maxima[np.argsort(-f[maxima], kind="stable")]
    i = order[0]
    if order.size > 1:
        j = order[1]
        if abs(f[i] - f[j]) <= 1e-9 * top and abs(q[i] + q[j]) <= 2 * step:
            raise NoPeak("two mirror maxima of equal height")
    try:
        return _refine(density, q[i - 1], q[i + 1], "max")
    except NoNotch as exc:  # pragma: no cover
        raise NoPeak(str(exc)) from exc
