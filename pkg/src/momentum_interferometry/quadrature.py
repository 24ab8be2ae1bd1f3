"""Composite Gauss-Legendre rules with breakpoints.

Used where the integrand is smooth only piecewise: across phase steps, inside
the narrow transition of a sharp sigmoid, and next to the square-root edges
of a Thomas-Fermi profile.
"""
from __future__ import annotations

import numpy as np

_GRADING = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 24.0)


def _gauss(order: int):
    return np.polynomial.legendre.leggauss(order)


def panel_rule(
    a: float,
    b: float,
    breakpoints=(),
    sqrt_ends=(),
    max_width: float = 0.5,
    order: int = 24,
):
    """Nodes and weights on ``[a, b]``.

    Every interval between consecutive breakpoints is cut into panels no wider
    than ``max_width``. A panel whose end lies in ``sqrt_ends`` is mapped by
    ``y = end +/- L t^2`` so a ``sqrt(|y - end|)`` factor becomes smooth.
    """
    x, w = _gauss(order)
    t = 0.5 * (x + 1.0)
    wt = 0.5 * w
    cuts = sorted({a, b, *(c for c in breakpoints if a < c < b)})
    sqrt_ends = tuple(sqrt_ends)
    nodes, weights = [], []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        m = max(1, int(np.ceil((hi - lo) / max_width - 1e-12)))
        edges = np.linspace(lo, hi, m + 1)
        for p0, p1 in zip(edges[:-1], edges[1:]):
            length = p1 - p0
            left = any(np.isclose(p0, e) for e in sqrt_ends)
            right = any(np.isclose(p1, e) for e in sqrt_ends)
            if left and right:
                mid = 0.5 * (p0 + p1)
                for q0, q1, anchor in ((p0, mid, "lo"), (mid, p1, "hi")):
                    n_, w_ = _sqrt_panel(q0, q1, anchor, t, wt)
                    nodes.append(n_)
                    weights.append(w_)
            elif left:
                n_, w_ = _sqrt_panel(p0, p1, "lo", t, wt)
                nodes.append(n_)
                weights.append(w_)
            elif right:
                n_, w_ = _sqrt_panel(p0, p1, "hi", t, wt)
                nodes.append(n_)
                weights.append(w_)
            else:
                nodes.append(p0 + length * t)
                weights.append(length * wt)
    return np.concatenate(nodes), np.concatenate(weights)


def _sqrt_panel(p0, p1, anchor, t, wt):
    length = p1 - p0
    if anchor == "lo":
        return p0 + length * t * t, 2 * length * t * wt
    return p1 - length * t * t, 2 * length * t * wt


def graded_breaks(center: float, width: float, lo: float, hi: float):
    """Breakpoints clustered geometrically around a sigmoid centre."""
    pts = [center]
    for g in _GRADING:
        pts.extend((center - g * width, center + g * width))
    return [p for p in pts if lo < p < hi]
