"""Fourth-order 1D WENO interpolation kernels.

Two quadratics share the central interval of a four-node stencil: the
*left* one through nodes -1, 0, 1 and the *right* one through 0, 1, 2
(positions in node-spacing units, the target ``t`` lies in ``[0, 1]``).
Blending them with the ideal weights gives the cubic through all four
nodes; blending with nonlinear weights suppresses whichever quadratic
oscillates.

The smoothness indicators are the usual sum of scaled squared-derivative
integrals over the central interval, in closed form. The scaling by powers
of the node spacing makes them independent of that spacing.

All functions accept numpy arrays and broadcast.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .grid import WenoParams, extend

__all__ = [
    "DirectionalSample",
    "Stencil4",
    "ideal_weights",
    "nonlinear_weights",
    "quad_eval",
    "si_left",
    "si_right",
    "weno_midpoint",
    "weno_spline_eval",
    "weno_spline_lines",
]


class Stencil4(NamedTuple):
    """Values at four consecutive nodes, positions -1, 0, 1, 2."""

    a: float
    b: float
    c: float
    d: float


class DirectionalSample(NamedTuple):
    """A candidate value at the target and the smoothness of its quadratic."""

    p: float
    si: float


def quad_eval(v0, v1, v2, t):
    """Quadratic through ``(-1, v0), (0, v1), (1, v2)`` evaluated at ``t``."""
    return v1 + 0.5 * (v2 - v0) * t + 0.5 * (v0 - 2.0 * v1 + v2) * t * t


def si_left(a, b, c):
    """Smoothness of the quadratic through nodes -1, 0, 1 over ``[0, 1]``."""
    d1 = c - a
    d2 = a - 2.0 * b + c
    return 0.25 * d1 * d1 + 0.5 * d1 * d2 + (4.0 / 3.0) * d2 * d2


def si_right(b, c, d):
    """Smoothness of the quadratic through nodes 0, 1, 2 over ``[0, 1]``."""
    e1 = d - b
    e2 = b - 2.0 * c + d
    return 0.25 * e1 * e1 - 0.5 * e1 * e2 + (4.0 / 3.0) * e2 * e2


def ideal_weights(t):
    """Linear weights ``(C0, C1)`` that turn the two quadratics into the cubic.

    Raises ``ValueError`` if ``t`` is outside ``[0, 1]``.
    """
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any((t_arr < 0.0) | (t_arr > 1.0)) or not np.all(np.isfinite(t_arr)):
        raise ValueError("ideal weights are defined for t in [0, 1] only")
    c0 = (2.0 - t_arr) / 3.0
    c1 = (1.0 + t_arr) / 3.0
    if np.ndim(t) == 0:
        return float(c0), float(c1)
    return c0, c1


def nonlinear_weights(c0, c1, si0, si1, params: WenoParams):
    """WENO weights from ideal weights and smoothness indicators.

    The two weights always sum to one; equal indicators (or ``beta = 0``)
    return the ideal weights unchanged.
    """
    eps = params.eps()
    si0 = np.asarray(si0, dtype=np.float64)
    si1 = np.asarray(si1, dtype=np.float64)
    # Divide both alphas by the larger one: ratios stay in [0, 1], no overflow.
    ratio = (eps + np.minimum(si0, si1)) / (eps + np.maximum(si0, si1))
    scale = ratio**params.beta
    alpha0 = np.where(si0 <= si1, c0, c0 * scale)
    alpha1 = np.where(si0 <= si1, c1 * scale, c1)
    total = alpha0 + alpha1
    w0 = np.where(scale == 1.0, c0, alpha0 / total)
    w1 = np.where(scale == 1.0, c1, alpha1 / total)
    if w0.ndim == 0:
        return float(w0), float(w1)
    return w0, w1


def weno_midpoint(s: Stencil4, params: WenoParams):
    """WENO value at the midpoint between nodes 0 and 1."""
    a, b, c, d = s
    p_left = (-a + 6.0 * b + 3.0 * c) / 8.0
    p_right = (3.0 * b + 6.0 * c - d) / 8.0
    w0, w1 = nonlinear_weights(0.5, 0.5, si_left(a, b, c), si_right(b, c, d), params)
    return w0 * p_left + w1 * p_right


def _blend_at(a, b, c, d, t, params: WenoParams):
    c0, c1 = ideal_weights(t)
    w0, w1 = nonlinear_weights(c0, c1, si_left(a, b, c), si_right(b, c, d), params)
    return w0 * quad_eval(a, b, c, t) + w1 * quad_eval(b, c, d, t - 1.0)


def _locate(x, n: int):
    x = np.asarray(x, dtype=np.float64)
    if np.any((x < 0) | (x > n - 1)) or not np.all(np.isfinite(x)):
        raise ValueError(f"evaluation points must lie in [0, {n - 1}]")
    i = np.clip(np.floor(x).astype(np.intp), 0, n - 2)
    return i, x - i


def weno_spline_eval(values, x, params: WenoParams, boundary: str = "extrapolate"):
    """Evaluate the piecewise WENO interpolant of ``values`` (nodes ``0..n-1``) at ``x``.

    ``x`` may be a scalar or an array; node positions return the sample exactly.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.size < 2:
        raise ValueError("values must be a 1-D sequence of at least two samples")
    out = weno_spline_lines(v[np.newaxis, :], x, params, boundary=boundary)[0]
    return float(out) if np.ndim(x) == 0 else out


def weno_spline_lines(lines: np.ndarray, x, params: WenoParams, boundary: str = "extrapolate") -> np.ndarray:
    """Evaluate the WENO interpolant of every row of ``lines`` at positions ``x``.

    Returns an array of shape ``lines.shape[:1] + np.shape(x)``.
    """
    lines = np.asarray(lines, dtype=np.float64)
    n = lines.shape[1]
    i, t = _locate(x, n)
    padded = extend(lines, (0, 1), boundary)
    # padded column k + 1 holds node k
    a = padded[:, i]
    b = padded[:, i + 1]
    c = padded[:, i + 2]
    d = padded[:, i + 3]
    out = _blend_at(a, b, c, d, np.broadcast_to(t, i.shape), params)
    # exact node values regardless of rounding in the blend
    on_node = t == 0.0
    if np.any(on_node):
        out[..., on_node] = b[..., on_node]
    on_end = t == 1.0
    if np.any(on_end):
        out[..., on_end] = c[..., on_end]
    return out
