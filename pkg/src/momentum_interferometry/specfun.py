"""Special functions needed by the closed-form momentum densities.

Every function here has (at least) two evaluation routes that can be
selected with ``method=`` so that they can be checked against each other:

* ``erfi_real``: Dawson relation (default) or the positive power series.
* ``erfi_complex``: Faddeeva function (default), straight-path quadrature,
  or the complex power series.
* ``bessel_j``: ascending series below ``SWITCH`` and the Hankel expansion
  above it.
* ``struve_h``: ascending series below ``SWITCH``; above it
  ``H_nu = Y_nu + (H_nu - Y_nu)`` with the difference taken from its Laplace
  integral. ``H_{-2}`` additionally has the downward order recurrence.

Ascending series are summed in ``numpy.longdouble`` because the alternating
terms reach ~1e7 near ``|x| = 18``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gamma, pi, sqrt

import numpy as np
from scipy import special as _sp

__all__ = [
    "EvalAccuracy",
    "SpecialFunctionOverflow",
    "SWITCH",
    "ERFI_LIMIT",
    "erfi_real",
    "erfi_complex",
    "hermite",
    "bessel_j",
    "bessel_y",
    "struve_h",
]

SWITCH = 18.0
ERFI_LIMIT = 26.0

_LD = np.longdouble
_TWO_OVER_SQRT_PI = 2.0 / sqrt(pi)


@dataclass(frozen=True)
class EvalAccuracy:
    """Mixed absolute/relative tolerance used when comparing two routes."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("abs_tol and rel_tol must be strictly positive")

    def close(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        return np.abs(a - b) <= self.abs_tol + self.rel_tol * np.abs(b)


class SpecialFunctionOverflow(OverflowError):
    """Raised instead of returning inf when exp(x**2) is not representable."""


def _check_erfi_range(re_part):
    big = np.max(np.abs(re_part), initial=0.0)
    if not np.isfinite(big) or big > ERFI_LIMIT:
        raise SpecialFunctionOverflow(
            f"erfi argument with |Re z| = {big:g} exceeds {ERFI_LIMIT}"
        )


def _scalar_out(x, out):
    return out[()] if np.ndim(x) == 0 else out


def erfi_real(x, method: str = "dawson"):
    """Imaginary error function ``(2/sqrt(pi)) * int_0^x exp(t**2) dt``.

    Parameters
    ----------
    x : float or array_like
    method : {"dawson", "series"}
        ``"dawson"`` uses ``erfi(x) = 2/sqrt(pi) * exp(x**2) * D(x)``;
        ``"series"`` sums ``sum x**(2k+1) / (k! (2k+1))`` term by term (all
        terms share the sign of ``x``, so there is no cancellation).
    """
    xa = np.asarray(x, dtype=float)
    _check_erfi_range(xa)
    if method == "dawson":
        out = _TWO_OVER_SQRT_PI * np.exp(xa * xa) * _sp.dawsn(xa)
    elif method == "series":
        out = _erfi_series(xa.astype(complex)).real
    else:
        raise ValueError(f"unknown method {method!r}")
    return _scalar_out(x, np.asarray(out, dtype=float))


def erfi_complex(z, method: str = "faddeeva"):
    """Analytic continuation of erfi to complex arguments.

    ``"faddeeva"`` uses ``erfi(z) = i (exp(z**2) w(-z) - 1)`` with the
    Faddeeva function ``w``; ``"quadrature"`` integrates ``exp(t**2)`` along
    the segment from 0 to ``z`` with Gauss-Legendre; ``"series"`` sums the
    Maclaurin series in extended precision (it cancels badly once
    ``|Im z|`` exceeds ~3).
    """
    za = np.asarray(z, dtype=complex)
    _check_erfi_range(za.real)
    if method == "faddeeva":
        out = 1j * (np.exp(za * za) * _sp.wofz(-za) - 1.0)
        # exact on the real axis; removes the O(eps) imaginary residue
        out = np.where(za.imag == 0, erfi_real(za.real) + 0j, out)
    elif method == "quadrature":
        zz = za[..., None]
        vals = np.exp(zz * zz * _GL_S * _GL_S) @ _GL_W
        out = _TWO_OVER_SQRT_PI * za * vals
    elif method == "series":
        out = _erfi_series(za)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _scalar_out(z, np.asarray(out, dtype=complex))


_GL_S, _GL_W = np.polynomial.legendre.leggauss(256)
_GL_S = 0.5 * (_GL_S + 1.0)
_GL_W = 0.5 * _GL_W


def _erfi_series(z):
    z = np.asarray(z, dtype=np.clongdouble)
    z2 = z * z
    power = z.copy()  # z**(2k+1) / k!
    total = power.copy()
    k = 0
    while True:
        k += 1
        power = power * z2 / k
        term = power / (2 * k + 1)
        total = total + term
        scale = np.maximum(np.abs(total), 1e-300)
        if np.all(np.abs(term) <= 1e-21 * scale) and k > np.max(np.abs(z2), initial=0):
            break
        if k > 5000:  # pragma: no cover - guarded by ERFI_LIMIT
            break
    return (_TWO_OVER_SQRT_PI * total).astype(complex)


def hermite(n: int, y):
    """Physicists' Hermite polynomial ``H_n(y)`` by the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    y = np.asarray(y, dtype=float)
    h_prev = np.ones_like(y)
    if n == 0:
        return _scalar_out(y, h_prev)
    h = 2.0 * y
    for k in range(1, n):
        h_prev, h = h, 2.0 * y * h - 2.0 * k * h_prev
    return _scalar_out(y, h)


# --- Bessel ---------------------------------------------------------------


def _bessel_j_series(nu: int, x):
    h = np.asarray(x, dtype=_LD) / 2
    term = h**nu / _LD(gamma(nu + 1))
    total = term.copy()
    hh = -h * h
    k = 0
    while True:
        term = term * hh / ((k + 1) * (k + 1 + nu))
        total = total + term
        k += 1
        if k > 4 and np.all(np.abs(term) <= 1e-22 * np.maximum(1.0, np.abs(total))):
            break
    return total.astype(float)


def _hankel_pq(nu: int, x):
    """Hankel asymptotic P, Q sums, truncated at the smallest term."""
    x = np.asarray(x, dtype=float)
    mu = 4.0 * nu * nu
    p = np.ones_like(x)
    q = np.zeros_like(x)
    a = 1.0  # a_k(nu) without the x**-k factor
    last = np.full_like(x, np.inf)
    active = np.ones_like(x, dtype=bool)
    for k in range(1, 60):
        a *= (mu - (2 * k - 1) ** 2) / (k * 8.0)
        term = a / x**k
        mag = np.abs(term)
        active &= mag < last
        if not np.any(active):
            break
        last = np.where(active, mag, last)
        sign = (-1) ** (k // 2)
        if k % 2 == 0:
            p = p + np.where(active, sign * term, 0.0)
        else:
            q = q + np.where(active, sign * term, 0.0)
    return p, q


def _bessel_asymptotic(nu: int, x):
    """(J_nu, Y_nu) for x > 0 from the Hankel expansion."""
    x = np.asarray(x, dtype=float)
    p, q = _hankel_pq(nu, x)
    chi = x - (0.5 * nu + 0.25) * pi
    amp = np.sqrt(2.0 / (pi * x))
    c, s = np.cos(chi), np.sin(chi)
    return amp * (p * c - q * s), amp * (p * s + q * c)


def bessel_j(order: int, x, method: str = "auto"):
    """Bessel function of the first kind, ``order`` in {0, 1, 2}.

    ``method`` is ``"auto"`` (series below ``SWITCH``, Hankel above),
    ``"series"`` or ``"asymptotic"``.
    """
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    xa = np.asarray(x, dtype=float)
    ax = np.abs(xa)
    if method == "series":
        out = _bessel_j_series(order, ax)
    elif method == "asymptotic":
        if np.any(ax == 0):
            raise ValueError("asymptotic route needs x != 0")
        out = _bessel_asymptotic(order, ax)[0]
    elif method == "auto":
        out = np.empty_like(ax)
        small = ax < SWITCH
        if np.any(small):
            out[small] = _bessel_j_series(order, ax[small])
        if np.any(~small):
            out[~small] = _bessel_asymptotic(order, ax[~small])[0]
    else:
        raise ValueError(f"unknown method {method!r}")
    if order % 2:
        out = np.where(xa < 0, -out, out)
    return _scalar_out(x, out)


def bessel_y(order: int, x):
    """Bessel function of the second kind for ``x >= SWITCH`` (Hankel only).

    Only the large-argument regime is needed, as an ingredient of ``struve_h``.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < SWITCH):
        raise ValueError(f"bessel_y is only provided for x >= {SWITCH}")
    return _scalar_out(x, _bessel_asymptotic(order, xa)[1])


# --- Struve ---------------------------------------------------------------

_LAGUERRE_NODES, _LAGUERRE_WEIGHTS = _sp.roots_laguerre(80)


def _struve_series(nu: int, x):
    """Ascending series ``sum (-1)^k (x/2)^(2k+nu+1) / (G(k+3/2) G(k+nu+3/2))``.

    Valid for ``nu = -2`` as well (Gamma(-1/2) is finite); then the leading
    term is the ``-2/(pi x)`` pole.
    """
    h = np.asarray(x, dtype=_LD) / 2
    term = h ** (nu + 1) / _LD(gamma(1.5) * gamma(nu + 1.5))
    total = term.copy()
    hh = -h * h
    k = 0
    while True:
        term = term * hh / ((k + _LD(1.5)) * (k + nu + _LD(1.5)))
        total = total + term
        k += 1
        ref = np.maximum(1.0, np.abs(total))
        if k > 4 and np.all(np.abs(term) <= 1e-22 * ref):
            break
    return total.astype(float)


def _struve_large(nu: int, x):
    """``H_nu = Y_nu + 2 (x/2)^nu / (sqrt(pi) G(nu+1/2)) int_0^inf e^{-xt} (1+t^2)^(nu-1/2) dt``."""
    x = np.asarray(x, dtype=float)
    s = _LAGUERRE_NODES[:, None] / x[None, :]
    integral = np.sum(_LAGUERRE_WEIGHTS[:, None] * (1 + s * s) ** (nu - 0.5), axis=0) / x
    diff = 2 * (x / 2) ** nu / (sqrt(pi) * gamma(nu + 0.5)) * integral
    return _bessel_asymptotic(nu, x)[1] + diff


def _struve_nonneg(nu: int, ax, method: str):
    if method == "series":
        return _struve_series(nu, ax)
    if method == "asymptotic":
        return _struve_large(nu, ax)
    out = np.empty_like(ax)
    small = ax < SWITCH
    if np.any(small):
        out[small] = _struve_series(nu, ax[small])
    if np.any(~small):
        out[~small] = _struve_large(nu, ax[~small])
    return out


def struve_h(order: int, x, method: str = "auto"):
    """Struve function ``H_order(x)`` for ``order`` in {-2, 0, 1}.

    For ``order = -2`` the ``"auto"`` route applies the downward recurrence
    ``H_{nu-1} = (2 nu / x) H_nu - H_{nu+1} + (x/2)^nu / (sqrt(pi) G(nu+3/2))``
    twice, i.e. ``H_{-2}(x) = (2/x) H_1(x) - 2/(pi x) - H_0(x)``, and falls
    back to the ascending series for ``|x| < 1`` where the recurrence cancels.
    ``method="recurrence"`` forces the recurrence everywhere (``x != 0``).
    """
    if order not in (-2, 0, 1):
        raise ValueError("order must be -2, 0 or 1")
    xa = np.asarray(x, dtype=float)
    ax = np.abs(xa)
    if method not in ("auto", "series", "asymptotic", "recurrence"):
        raise ValueError(f"unknown method {method!r}")
    if order == -2 and np.any(ax == 0):
        raise ZeroDivisionError("H_{-2} has a pole at x = 0")

    if order == -2 and method in ("auto", "recurrence"):
        base = "auto"
        out = np.empty_like(ax)
        use_rec = ax >= 1.0 if method == "auto" else np.ones_like(ax, dtype=bool)
        if np.any(use_rec):
            xr = ax[use_rec]
            h1 = _struve_nonneg(1, xr, base)
            h0 = _struve_nonneg(0, xr, base)
            out[use_rec] = 2.0 / xr * h1 - 2.0 / (pi * xr) - h0
        if np.any(~use_rec):
            out[~use_rec] = _struve_series(-2, ax[~use_rec])
    else:
        if method == "recurrence":
            method = "auto"
        out = _struve_nonneg(order, ax, method)
    # H_1 is even in x; H_0 and H_{-2} are odd
    if order != 1:
        out = np.where(xa < 0, -out, out)
    return _scalar_out(x, out)
