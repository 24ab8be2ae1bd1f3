"""Central dark notch of a momentum density: location, width, visibility.

Also the linearized formulas around ``phi = pi`` for the imprinted ground
state and the excited-state slope ``A_n / B_n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import exp, pi, sqrt
from typing import Callable, NamedTuple

import numpy as np
from scipy import optimize

from . import specfun
from .basis import half_line_moments

__all__ = [
    "NoNotch",
    "AmbiguousNotch",
    "NotchMetrics",
    "ApproxConstants",
    "APPROX",
    "approx_constants",
    "find_notch",
    "find_peak",
    "q0_exact_reference",
    "ReferenceApprox",
    "approx_reference",
    "q0_approx_excited",
    "reference_extrema_residual",
]

REFINE_TOL = 1e-8
_FD_STEP = 1e-5


class NoNotch(RuntimeError):
    """No interior minimum (or no flanking maxima) in the search window."""


class AmbiguousNotch(RuntimeError):
    """Two interior minima are equally close to q = 0."""


@dataclass(frozen=True)
class NotchMetrics:
    q0: float
    q_minus: float
    q_plus: float
    visibility: float
    depth: float
    peak_minus: float
    peak_plus: float

    def __post_init__(self):
        if not self.q_minus < self.q0 < self.q_plus:
            raise ValueError("flanking maxima must enclose the notch")

    @property
    def width(self) -> float:
        return self.q_plus - self.q_minus


@dataclass(frozen=True)
class ApproxConstants:
    alpha: float
    beta: float


def approx_constants() -> ApproxConstants:
    """``alpha = e^{-pi/2} erfi(sqrt(pi)/2)^2 / sqrt(pi)`` and
    ``beta = e^{-pi/2} erfi(sqrt(pi)/2) (-2 e^{pi/4} + pi + pi erfi(sqrt(pi)/2)) / pi^{3/2}``."""
    e = float(specfun.erfi_real(sqrt(pi) / 2))
    alpha = exp(-pi / 2) / sqrt(pi) * e * e
    beta = exp(-pi / 2) / pi**1.5 * e * (-2 * exp(pi / 4) + pi + pi * e)
    return ApproxConstants(alpha, beta)


APPROX = approx_constants()
if (round(APPROX.alpha, 3), round(APPROX.beta, 3)) != (0.210, 0.148):
    raise RuntimeError(f"notch constants drifted: {APPROX}")


def _local_extrema(f: np.ndarray, kind: str) -> np.ndarray:
    if kind == "min":
        left = f[1:-1] < f[:-2]
        right = f[1:-1] <= f[2:]
    else:
        left = f[1:-1] > f[:-2]
        right = f[1:-1] >= f[2:]
    return np.nonzero(left & right)[0] + 1


def _refine(density, lo: float, hi: float, kind: str) -> float:
    """Stationary point inside a scan bracket.

    Brent root of the central-difference slope; if the slope does not change
    sign across the bracket, bounded Brent minimization (parabolic steps with
    golden-section fallback) of the density or its negative.
    """
    h = _FD_STEP

    def slope(x):
        f = density(np.array([x - h, x + h]))
        return float(f[1] - f[0]) / (2 * h)

    s_lo, s_hi = slope(lo), slope(hi)
    if s_lo * s_hi < 0:
        return float(optimize.brentq(slope, lo, hi, xtol=1e-13))
    sign = 1.0 if kind == "min" else -1.0
    res = optimize.minimize_scalar(
        lambda x: sign * float(density(np.array([x]))[0]),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": REFINE_TOL, "maxiter": 500},
    )
    return float(res.x)


def _scan(density, lo, hi, step):
    n = int(round((hi - lo) / step)) + 1
    q = np.linspace(lo, hi, n)
    return q, np.asarray(density(q), dtype=float)


def _flank(density, q, f, i0, side):
    maxima = _local_extrema(f, "max")
    cand = maxima[maxima > i0] if side > 0 else maxima[maxima < i0][::-1]
    if cand.size == 0:
        return None
    j = cand[0]
    return _refine(density, q[j - 1], q[j + 1], "max")


def find_notch(
    density: Callable[[np.ndarray], np.ndarray],
    search: tuple[float, float] = (-4.0, 4.0),
    step: float = 0.01,
) -> NotchMetrics:
    """Locate the interior minimum closest to ``q = 0`` and its two flanking maxima.

    Each scan bracket is refined to the zero of the density's slope (see
    ``_refine``). Visibility follows

        v = min_pm(n(q_pm) - n(q0)) / ((n(q+) + n(q-))/2 + n(q0)).

    If a flanking maximum is missing, the window is widened once by a factor
    two before ``NoNotch`` is raised.
    """
    lo, hi = search
    q, f = _scan(density, lo, hi, step)
    minima = _local_extrema(f, "min")
    if minima.size == 0:
        raise NoNotch(f"no interior minimum in [{lo}, {hi}]")
    order = np.argsort(np.abs(q[minima]), kind="stable")
    i0 = minima[order[0]]

    q0 = _refine(density, q[i0 - 1], q[i0 + 1], "min")
    if minima.size > 1:
        i1 = minima[order[1]]
        if abs(abs(q[i1]) - abs(q[i0])) <= 2 * step:
            q1 = _refine(density, q[i1 - 1], q[i1 + 1], "min")
            if abs(abs(q1) - abs(q0)) < REFINE_TOL:
                raise AmbiguousNotch(f"minima at {q0:.6g} and {q1:.6g} tie")
            if abs(q1) < abs(q0):
                q0, i0 = q1, i1

    q_plus = _flank(density, q, f, i0, +1)
    q_minus = _flank(density, q, f, i0, -1)
    if q_plus is None or q_minus is None:
        wide = (q0 - 2 * (q0 - lo), q0 + 2 * (hi - q0))
        q, f = _scan(density, wide[0], wide[1], step)
        i0 = int(np.argmin(np.abs(q - q0)))
        q_plus = _flank(density, q, f, i0, +1)
        q_minus = _flank(density, q, f, i0, -1)
        if q_plus is None or q_minus is None:
            raise NoNotch("flanking maxima not found even in the widened window")

    n0, nm, np_ = (float(v) for v in density(np.array([q0, q_minus, q_plus])))
    vis = min(np_ - n0, nm - n0) / (0.5 * (np_ + nm) + n0)
    return NotchMetrics(q0, q_minus, q_plus, vis, n0, nm, np_)


def find_peak(
    density: Callable[[np.ndarray], np.ndarray],
    search: tuple[float, float] = (-2.0, 2.0),
    step: float = 0.01,
) -> float:
    """Global maximum of ``density`` on ``search`` (grid scan + Brent)."""
    q, f = _scan(density, *search, step)
    i = int(np.argmax(f))
    if i == 0 or i == q.size - 1:
        raise NoNotch("maximum sits on the search boundary")
    return _refine(density, q[i - 1], q[i + 1], "max")


def _wrap(phi: float) -> float:
    return float(np.mod(phi, 2 * pi))


def q0_exact_reference(phi: float) -> float:
    """Root of ``erfi(q0/sqrt 2) = -cot(phi/2)`` to 1e-10 (bracketed Brent)."""
    phi = _wrap(phi)
    if phi == 0.0:
        raise ValueError("no notch for phi = 0 mod 2 pi")
    target = -np.cos(phi / 2) / np.sin(phi / 2)

    def g(q):
        return float(specfun.erfi_real(q / sqrt(2))) - target

    b = 1.0
    while g(b) * g(-b) > 0:
        b *= 2
        if b / sqrt(2) > specfun.ERFI_LIMIT:
            raise ValueError(f"cannot bracket the notch for phi = {phi}")
    return float(optimize.brentq(g, -b, b, xtol=1e-14, rtol=4 * np.finfo(float).eps))


class ReferenceApprox(NamedTuple):
    q0: float
    q_minus: float
    q_plus: float
    width: float
    visibility: float


def approx_reference(phi: float) -> ReferenceApprox:
    """Linearized notch position, maxima, width and visibility (ground state)."""
    q0 = sqrt(pi / 2) * (phi - pi) / 2
    qp = phi / sqrt(2 * pi)
    qm = -(2 * pi - phi) / sqrt(2 * pi)
    v = 1 - APPROX.beta / APPROX.alpha * abs(phi - pi)
    return ReferenceApprox(q0, qm, qp, qp - qm, v)


def q0_approx_excited(phi: float, n: int) -> float:
    """``(A_n/B_n)(phi - pi)/2`` for even n, ``(A_n/B_n) phi/2`` for odd n."""
    a, b = half_line_moments(n)
    if n % 2 == 0:
        return a / b * (phi - pi) / 2
    return a / b * phi / 2


def reference_extrema_residual(q, phi: float):
    """``z1 * z2``; vanishes at every extremum of the reference density."""
    q = np.asarray(q, dtype=float)
    c, s = np.cos(phi / 2), np.sin(phi / 2)
    e = specfun.erfi_real(q / sqrt(2))
    z1 = c + s * e
    z2 = q * c - s * (np.exp(q * q / 2) * sqrt(2 / pi) - q * e)
    return z1 * z2
