"""Grid data model and boundary extension shared by all interpolation routines.

Arrays are stored row-major as ``data[row, col]``; the physical x axis runs
along columns and y along rows. On a doubled grid, even/even indices hold
the original samples, odd/odd indices are the diagonal ("x") points and
mixed-parity indices the axis ("+") points.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BOUNDARY_MODES",
    "FineGrid",
    "ScalarField",
    "WenoParams",
    "extend",
    "mirror_index",
    "sample_extended",
]

#: Ghost-node policies understood by :func:`extend`.
BOUNDARY_MODES = ("extrapolate", "mirror")


@dataclass(frozen=True)
class WenoParams:
    """Free parameters of the WENO weights.

    ``h`` is the coarse grid spacing of the field being interpolated. It
    enters both ``eps = k_eps * h**2`` and the ``h**2 / 4`` factor that
    couples neighbouring smoothness indicators.
    """

    beta: float = 2.0
    k_eps: float = 1e-8
    h: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.beta) or self.beta < 0:
            raise ValueError(f"beta must be a finite number >= 0, got {self.beta}")
        if not self.k_eps > 0:
            raise ValueError(f"k_eps must be > 0, got {self.k_eps}")
        if not self.h > 0:
            raise ValueError(f"h must be > 0, got {self.h}")

    def eps(self) -> float:
        return self.k_eps * self.h**2

    def with_h(self, h: float) -> "WenoParams":
        return WenoParams(beta=self.beta, k_eps=self.k_eps, h=h)


@dataclass(frozen=True)
class ScalarField:
    """One channel of samples on a uniform grid.

    Sample ``data[j, i]`` sits at ``(origin[0] + i * spacing, origin[1] + j * spacing)``.
    """

    data: np.ndarray
    spacing: float = 1.0
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError(f"field data must be 2-D, got shape {data.shape}")
        if data.shape[0] < 2 or data.shape[1] < 2:
            raise ValueError(f"field must be at least 2x2, got {data.shape[1]}x{data.shape[0]}")
        if not np.all(np.isfinite(data)):
            raise ValueError("field samples must be finite")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be > 0, got {self.spacing}")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Physical ``(x, y)`` coordinate vectors of the columns and rows."""
        x = self.origin[0] + self.spacing * np.arange(self.width)
        y = self.origin[1] + self.spacing * np.arange(self.height)
        return x, y


@dataclass
class FineGrid:
    """The ``(2m-1) x (2n-1)`` target of one doubling, filled in two phases.

    Unknown samples are NaN. ``phase`` records how far the fill has got:
    0 after construction, 1 once the diagonal points are known, 2 when done.
    """

    data: np.ndarray
    spacing: float
    origin: tuple[float, float] = (0.0, 0.0)
    phase: int = field(default=0)

    @classmethod
    def from_field(cls, source: ScalarField) -> "FineGrid":
        m, n = source.data.shape
        data = np.full((2 * m - 1, 2 * n - 1), np.nan)
        data[0::2, 0::2] = source.data
        return cls(data=data, spacing=source.spacing / 2, origin=source.origin)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    # Strided views onto the four parity classes; writes go through to data.
    @property
    def coarse(self) -> np.ndarray:
        return self.data[0::2, 0::2]

    @property
    def cross(self) -> np.ndarray:
        """Odd/odd ("x") points, shape ``(m-1, n-1)``."""
        return self.data[1::2, 1::2]

    @property
    def plus_h(self) -> np.ndarray:
        """Odd column, even row "+" points, shape ``(m, n-1)``."""
        return self.data[0::2, 1::2]

    @property
    def plus_v(self) -> np.ndarray:
        """Even column, odd row "+" points, shape ``(m-1, n)``."""
        return self.data[1::2, 0::2]

    def to_field(self) -> ScalarField:
        if self.phase != 2:
            raise RuntimeError("fine grid is incomplete; run phase1 and phase2 first")
        return ScalarField(self.data, spacing=self.spacing, origin=self.origin)


def mirror_index(i: int, size: int) -> int:
    """Whole-sample reflection of index ``i`` into ``[0, size)``.

    Only a single reflection is supported, i.e. ``-(size-1) <= i <= 2*(size-1)``.
    """
    last = size - 1
    if i < -last or i > 2 * last:
        raise IndexError(f"index {i} is outside the single-mirror range of a size-{size} axis")
    if i < 0:
        return -i
    if i > last:
        return 2 * last - i
    return i


def sample_extended(grid: ScalarField | FineGrid, i: int, j: int) -> float:
    """Value at column ``i``, row ``j`` with mirrored out-of-range access."""
    data = grid.data
    return float(data[mirror_index(j, data.shape[0]), mirror_index(i, data.shape[1])])


def _extrapolation_rows(values: np.ndarray, count: int, axis: int) -> tuple[np.ndarray, np.ndarray]:
    # Lagrange extrapolation from the nearest (up to) four samples on each side.
    size = values.shape[axis]
    order = min(size, 4)
    nodes = np.arange(order, dtype=np.float64)

    def take(idx):
        return np.take(values, idx, axis=axis)

    def ghosts(edge_idx):
        rows = []
        for g in range(1, count + 1):
            target = -float(g)
            coeffs = [
                np.prod([(target - nodes[q]) / (nodes[p] - nodes[q]) for q in range(order) if q != p])
                for p in range(order)
            ]
            rows.append(sum(c * take(edge_idx[p]) for p, c in enumerate(coeffs)))
        # outermost ghost first
        return np.stack(rows[::-1], axis=axis)

    low = ghosts(list(range(order)))
    high = np.flip(ghosts([size - 1 - p for p in range(order)]), axis=axis)
    return low, high


def extend(data: np.ndarray, pad: int | tuple[int, int], mode: str = "extrapolate", *, symmetric: bool = False) -> np.ndarray:
    """Pad a 2-D array with ``pad`` ghost samples per side along (rows, cols).

    ``"mirror"`` reflects about the edge sample (``v[-1] = v[1]``), or about the
    edge itself when ``symmetric`` is set (``v[-1] = v[0]``). The latter is the
    same whole-sample mirror expressed on a half-offset subgrid such as the
    odd indices of a fine grid. ``"extrapolate"`` continues the edge by the
    cubic through the four nearest samples (fewer on tiny axes). Ghost values
    then carry an O(h**4) error on smooth data and are exact for data that is
    cubic along each axis.
    """
    if mode not in BOUNDARY_MODES:
        raise ValueError(f"unknown boundary mode {mode!r}; expected one of {BOUNDARY_MODES}")
    pad_r, pad_c = (pad, pad) if isinstance(pad, int) else pad
    if mode == "mirror":
        np_mode = "symmetric" if symmetric else "reflect"
        widths = ((pad_r, pad_r), (pad_c, pad_c))
        out = np.pad(data, widths, mode=np_mode)
        return out
    out = data
    if pad_c:
        low, high = _extrapolation_rows(out, pad_c, axis=1)
        out = np.concatenate([low, out, high], axis=1)
    if pad_r:
        low, high = _extrapolation_rows(out, pad_r, axis=0)
        out = np.concatenate([low, out, high], axis=0)
    return out
