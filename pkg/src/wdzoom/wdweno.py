"""Weighted-direction WENO doubling of a 2-D field.

A doubling maps an ``m x n`` field to ``(2m-1) x (2n-1)`` samples in two
phases. Phase 1 fills the odd/odd ("x") points from four diagonal
quadratics built on the original samples. Phase 2 fills the mixed-parity
("+") points from four axis quadratics that use the original samples and
the phase-1 results. Each candidate quadratic is weighted by its own
smoothness indicator plus ``h**2 / 4`` times the indicators of the same
direction at the nearest points of the sweep.

The vectorised :func:`phase1` / :func:`phase2` work on strided views of the
fine grid, one direction at a time, in the fixed order of
:data:`PHASE1_DIRECTIONS` / :data:`PHASE2_DIRECTIONS`. The pointwise
functions (:func:`directional_sample`, :func:`couple_si_phase1`,
:func:`couple_si_phase2`, :func:`blend_point`) compute the same quantities
one point at a time with mirrored boundaries. They are meant for
inspection and are far too slow for real grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .grid import FineGrid, ScalarField, WenoParams, extend, mirror_index, sample_extended
from .weno1d import DirectionalSample, si_right

__all__ = [
    "DEFAULT_MAX_SAMPLES",
    "Direction",
    "PHASE1_DIRECTIONS",
    "PHASE2_DIRECTIONS",
    "SiPlane",
    "blend_point",
    "couple_si_phase1",
    "couple_si_phase2",
    "direction_weights",
    "directional_sample",
    "double",
    "double_k",
    "doubled_size",
    "phase1",
    "phase2",
]

DEFAULT_MAX_SAMPLES = 2**31


class Direction(NamedTuple):
    """Step between consecutive stencil nodes, in fine-grid index units."""

    dx: int
    dy: int


PHASE1_DIRECTIONS = (Direction(1, 1), Direction(-1, 1), Direction(-1, -1), Direction(1, -1))
PHASE2_DIRECTIONS = (Direction(1, 0), Direction(0, 1), Direction(-1, 0), Direction(0, -1))

# Nodes sit at -1, +1, +3 steps from the target; the quadratic through them at 0.
_NODE_STEPS = (-1, 1, 3)


def _quad_value(vm, vp, v3):
    return (3.0 * vm + 6.0 * vp - v3) / 8.0


# ---------------------------------------------------------------------------
# pointwise API


@dataclass
class SiPlane:
    """Smoothness indicators of one phase, one fine-grid-sized plane per direction.

    Entries that are not points of the phase are NaN.
    """

    shape: tuple[int, int]
    planes: dict[Direction, np.ndarray] = field(default_factory=dict)

    def plane(self, direction: Direction) -> np.ndarray:
        direction = Direction(*direction)
        if direction not in self.planes:
            self.planes[direction] = np.full(self.shape, np.nan)
        return self.planes[direction]

    def get(self, direction: Direction, i: int, j: int) -> float:
        plane = self.plane(direction)
        value = plane[mirror_index(j, self.shape[0]), mirror_index(i, self.shape[1])]
        if not np.isfinite(value):
            raise RuntimeError(f"smoothness indicator at ({i}, {j}) for {tuple(direction)} is not populated")
        return float(value)


def directional_sample(grid: FineGrid, i: int, j: int, direction: Direction) -> DirectionalSample:
    """Candidate value and smoothness indicator at fine point ``(i, j)`` along ``direction``."""
    dx, dy = direction
    nodes = [sample_extended(grid, i + k * dx, j + k * dy) for k in _NODE_STEPS]
    if not all(np.isfinite(nodes)):
        raise RuntimeError(f"stencil of ({i}, {j}) along {tuple(direction)} reads unfilled points")
    vm, vp, v3 = nodes
    return DirectionalSample(p=_quad_value(vm, vp, v3), si=float(si_right(vm, vp, v3)))


def _couple(si_plane: SiPlane, i, j, direction, params, offsets):
    own = si_plane.get(direction, i, j)
    total = 0.0
    for ox, oy in offsets:
        total += si_plane.get(direction, i + ox, j + oy)
    return own + params.h**2 / 4.0 * total


def couple_si_phase1(si_plane: SiPlane, i: int, j: int, direction: Direction, params: WenoParams) -> float:
    """Coupled indicator at an "x" point: neighbours two fine steps away along the axes."""
    return _couple(si_plane, i, j, direction, params, ((0, 2), (2, 0), (0, -2), (-2, 0)))


def couple_si_phase2(si_plane: SiPlane, i: int, j: int, direction: Direction, params: WenoParams) -> float:
    """Coupled indicator at a "+" point: neighbours one fine step away along the diagonals."""
    return _couple(si_plane, i, j, direction, params, ((1, 1), (-1, -1), (-1, 1), (1, -1)))


def direction_weights(coupled, params: WenoParams) -> np.ndarray:
    """Normalised weights for four coupled indicators stacked along axis 0.

    Equivalent to ``alpha = 0.5 / (eps + D)**beta`` normalised to sum to one,
    computed relative to the smallest indicator so nothing overflows.
    """
    coupled = np.asarray(coupled, dtype=np.float64)
    eps = params.eps()
    smallest = coupled.min(axis=0)
    alpha = 0.5 * ((eps + smallest) / (eps + coupled)) ** params.beta
    return alpha / alpha.sum(axis=0)


def _combine(weights, values):
    # fixed accumulation order over the four directions
    return weights[0] * values[0] + weights[1] * values[1] + weights[2] * values[2] + weights[3] * values[3]


def blend_point(samples: Sequence[DirectionalSample], coupled: Sequence[float], params: WenoParams) -> float:
    """Weighted combination of four directional candidates."""
    if len(samples) != 4 or len(coupled) != 4:
        raise ValueError("blend_point needs exactly four samples and four coupled indicators")
    weights = direction_weights(coupled, params)
    return float(_combine(weights, [s.p for s in samples]))


# ---------------------------------------------------------------------------
# vectorised phases


def _shifted(padded: np.ndarray, pad: tuple[int, int], off: tuple[int, int], shape: tuple[int, int]) -> np.ndarray:
    r0 = pad[0] + off[0]
    c0 = pad[1] + off[1]
    return padded[r0 : r0 + shape[0], c0 : c0 + shape[1]]


def _coarse_offset(k: int, step: int) -> int:
    # fine offset k*step from an odd index, expressed on the even (coarse) subgrid
    return (1 + k * step) // 2


def _cross_offset(k: int, step: int) -> int:
    # fine offset k*step from an even index, expressed on the odd subgrid
    return (k * step - 1) // 2


def _candidates(sources, params):
    """p and raw SI for four directions; ``sources[d]`` lists the three node arrays."""
    ps, sis = [], []
    for vm, vp, v3 in sources:
        ps.append(_quad_value(vm, vp, v3))
        sis.append(si_right(vm, vp, v3))
    return ps, sis


def _finish(ps, coupled, params, return_weights):
    weights = direction_weights(np.stack(coupled), params)
    value = _combine(weights, ps)
    return value, (weights if return_weights else None)


def phase1(grid: FineGrid, params: WenoParams, boundary: str = "extrapolate", return_weights: bool = False):
    """Fill the odd/odd points of ``grid`` in place.

    With ``return_weights`` the ``(4, m-1, n-1)`` direction weights are returned.
    """
    if grid.phase != 0:
        raise RuntimeError("phase1 has already been applied to this grid")
    coarse = grid.coarse
    if coarse.shape[0] < 2 or coarse.shape[1] < 2:
        raise ValueError("doubling needs at least 2x2 source samples")
    if not np.all(np.isfinite(coarse)):
        raise RuntimeError("source samples of the fine grid must be finite")
    m, n = coarse.shape
    shape = (m - 1, n - 1)
    cp = extend(coarse, 1, boundary)
    h2 = params.h**2 / 4.0

    ps, coupled = [], []
    for dx, dy in PHASE1_DIRECTIONS:
        nodes = [_shifted(cp, (1, 1), (_coarse_offset(k, dy), _coarse_offset(k, dx)), shape) for k in _NODE_STEPS]
        (p,), (si,) = _candidates([nodes], params)
        sp = extend(si, 1, "mirror", symmetric=True)
        neighbours = sp[:-2, 1:-1] + sp[2:, 1:-1] + sp[1:-1, :-2] + sp[1:-1, 2:]
        ps.append(p)
        coupled.append(si + h2 * neighbours)

    value, weights = _finish(ps, coupled, params, return_weights)
    grid.cross[...] = value
    grid.phase = 1
    return weights


def phase2(grid: FineGrid, params: WenoParams, boundary: str = "extrapolate", return_weights: bool = False):
    """Fill the mixed-parity points of ``grid`` in place (requires :func:`phase1`).

    With ``return_weights`` a pair of weight arrays is returned, shaped
    ``(4, m, n-1)`` for the odd-column points and ``(4, m-1, n)`` for the
    odd-row points.
    """
    if grid.phase != 1:
        raise RuntimeError("phase2 requires a grid on which only phase1 has run")
    coarse = grid.coarse
    cross = grid.cross
    if not np.all(np.isfinite(cross)):
        raise RuntimeError("diagonal points must be filled before phase2")
    m, n = coarse.shape
    shape_h = (m, n - 1)  # odd column, even row
    shape_v = (m - 1, n)  # even column, odd row
    cp = extend(coarse, 1, boundary)
    xp = extend(cross, 2, boundary, symmetric=True)
    h2 = params.h**2 / 4.0

    ps_h, ps_v, co_h, co_v = [], [], [], []
    for dx, dy in PHASE2_DIRECTIONS:
        if dx:
            nodes_h = [_shifted(cp, (1, 1), (0, _coarse_offset(k, dx)), shape_h) for k in _NODE_STEPS]
            nodes_v = [_shifted(xp, (2, 2), (0, _cross_offset(k, dx)), shape_v) for k in _NODE_STEPS]
        else:
            nodes_h = [_shifted(xp, (2, 2), (_cross_offset(k, dy), 0), shape_h) for k in _NODE_STEPS]
            nodes_v = [_shifted(cp, (1, 1), (_coarse_offset(k, dy), 0), shape_v) for k in _NODE_STEPS]
        (p_h, p_v), (si_h, si_v) = _candidates([nodes_h, nodes_v], params)

        # diagonal neighbours of one family are points of the other family
        bp = extend(si_v, (1, 0), "mirror", symmetric=True)
        around_h = bp[:m, : n - 1] + bp[:m, 1:] + bp[1:, : n - 1] + bp[1:, 1:]
        ap = extend(si_h, (0, 1), "mirror", symmetric=True)
        around_v = ap[: m - 1, :n] + ap[: m - 1, 1:] + ap[1:, :n] + ap[1:, 1:]

        ps_h.append(p_h)
        ps_v.append(p_v)
        co_h.append(si_h + h2 * around_h)
        co_v.append(si_v + h2 * around_v)

    value_h, weights_h = _finish(ps_h, co_h, params, return_weights)
    value_v, weights_v = _finish(ps_v, co_v, params, return_weights)
    grid.plus_h[...] = value_h
    grid.plus_v[...] = value_v
    grid.phase = 2
    if return_weights:
        return weights_h, weights_v
    return None


def double(source: ScalarField, params: WenoParams | None = None, boundary: str = "extrapolate") -> ScalarField:
    """One WD-WENO doubling; the result has spacing ``source.spacing / 2``.

    The coarse spacing used in the weights is taken from ``source.spacing``.
    """
    params = (params or WenoParams()).with_h(source.spacing)
    grid = FineGrid.from_field(source)
    phase1(grid, params, boundary)
    phase2(grid, params, boundary)
    return grid.to_field()


def doubled_size(n: int, k: int) -> int:
    return 2**k * (n - 1) + 1


def double_k(
    source: ScalarField,
    k: int,
    params: WenoParams | None = None,
    boundary: str = "extrapolate",
    max_samples: int = DEFAULT_MAX_SAMPLES,
) -> ScalarField:
    """Apply :func:`double` ``k`` times; ``k = 0`` returns ``source`` itself."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    out_w = doubled_size(source.width, k)
    out_h = doubled_size(source.height, k)
    if out_w * out_h > max_samples:
        raise MemoryError(f"{k} doublings would produce {out_w}x{out_h} samples, above the limit of {max_samples}")
    out = source
    for _ in range(k):
        out = double(out, params, boundary)
    return out
