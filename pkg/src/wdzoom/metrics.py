"""Image quality and numerical error measures."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.signal import fftconvolve

from .grid import ScalarField

__all__ = [
    "PSNR_CAP",
    "ConvergenceReport",
    "ErrorPair",
    "convergence_orders",
    "error_norms",
    "gaussian_window",
    "mssim",
    "psnr",
]

PSNR_CAP = 99.0


def _as_stack(img) -> np.ndarray:
    # Image objects, (H, W) arrays and (H, W, C) arrays all become (C, H, W)
    channels = getattr(img, "channels", None)
    if channels is not None:
        return np.stack([np.asarray(getattr(c, "data", c), dtype=np.float64) for c in channels])
    arr = np.asarray(getattr(img, "data", img), dtype=np.float64)
    if arr.ndim == 2:
        return arr[np.newaxis]
    if arr.ndim == 3:
        return np.moveaxis(arr, -1, 0)
    raise ValueError(f"expected a 2-D or 3-D image, got shape {arr.shape}")


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    sa, sb = _as_stack(a), _as_stack(b)
    if sa.shape != sb.shape:
        raise ValueError(f"image shapes differ: {sa.shape} vs {sb.shape}")
    return sa, sb


def psnr(a, b, peak: float = 1.0, cap: float = PSNR_CAP) -> float:
    """Peak signal-to-noise ratio in dB over all channels and pixels.

    Identical inputs return ``cap``; larger values are clipped to it as well.
    """
    if not peak > 0:
        raise ValueError("peak must be positive")
    sa, sb = _pair(a, b)
    diff = sa - sb
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return cap
    return min(cap, 10.0 * math.log10(peak * peak / mse))


def gaussian_window(size: int = 11, sigma: float = 1.5) -> np.ndarray:
    r = np.arange(size) - (size - 1) / 2.0
    g = np.exp(-(r * r) / (2.0 * sigma * sigma))
    w = np.outer(g, g)
    return w / w.sum()


def _filter_valid(x: np.ndarray, window: np.ndarray) -> np.ndarray:
    return fftconvolve(x, window, mode="valid")


def mssim(a, b, window_size: int = 11, sigma: float = 1.5, k1: float = 0.01, k2: float = 0.03,
          data_range: float = 1.0) -> float:
    """Mean structural similarity with a Gaussian window, averaged over channels.

    Local statistics use the population (biased) moments and only positions
    where the whole window fits inside the image.
    """
    sa, sb = _pair(a, b)
    if sa.shape[1] < window_size or sa.shape[2] < window_size:
        raise ValueError(f"image {sa.shape[2]}x{sa.shape[1]} is smaller than the {window_size}x{window_size} window")
    window = gaussian_window(window_size, sigma)
    c1 = (k1 * data_range) ** 2
    c2 = (k2 * data_range) ** 2
    scores = []
    for x, y in zip(sa, sb):
        mu_x = _filter_valid(x, window)
        mu_y = _filter_valid(y, window)
        var_x = _filter_valid(x * x, window) - mu_x * mu_x
        var_y = _filter_valid(y * y, window) - mu_y * mu_y
        cov = _filter_valid(x * y, window) - mu_x * mu_y
        num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)
        den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
        scores.append(float(np.mean(num / den)))
    return float(np.mean(scores))


@dataclass(frozen=True)
class ErrorPair:
    linf: float
    l2: float


def error_norms(
    approx: ScalarField,
    exact: Callable[[np.ndarray, np.ndarray], np.ndarray],
    region: tuple[float, float, float, float] | None = None,
) -> ErrorPair:
    """Max and root-mean-square error of ``approx`` against ``exact(x, y)``.

    ``region`` is ``(xmin, xmax, ymin, ymax)``, inclusive; all samples whose
    coordinates fall inside it are measured.
    """
    x, y = approx.coordinates()
    cols = np.ones(x.shape, bool)
    rows = np.ones(y.shape, bool)
    if region is not None:
        xmin, xmax, ymin, ymax = region
        tol = 1e-9 * approx.spacing
        cols = (x >= xmin - tol) & (x <= xmax + tol)
        rows = (y >= ymin - tol) & (y <= ymax + tol)
    if not cols.any() or not rows.any():
        raise ValueError(f"region {region} contains no grid points")
    xx, yy = np.meshgrid(x[cols], y[rows])
    err = np.abs(approx.data[np.ix_(rows, cols)] - exact(xx, yy))
    return ErrorPair(linf=float(err.max()), l2=float(np.sqrt(np.mean(err * err))))


@dataclass
class ConvergenceReport:
    """Errors per refinement level and the observed orders between levels."""

    levels: list[tuple[float, ErrorPair]]
    orders: list[tuple[float, float]] = field(default_factory=list)

    def to_tsv(self, digits: int = 4) -> str:
        lines = ["h\tLinf\tOinf\tL2\tO2"]
        for idx, (h, err) in enumerate(self.levels):
            if idx == 0:
                o_inf = o_2 = ""
            else:
                o_inf, o_2 = (_fmt_order(o, digits) for o in self.orders[idx - 1])
            lines.append(f"{h:.2E}\t{err.linf:.2E}\t{o_inf}\t{err.l2:.2E}\t{o_2}")
        return "\n".join(lines) + "\n"


def _fmt_order(value: float, digits: int) -> str:
    return "nan" if math.isnan(value) else f"{value:.{digits}f}"


def _order(coarse: float, fine: float) -> float:
    if coarse <= 0.0 or fine <= 0.0:
        return math.nan
    return math.log2(coarse / fine)


def convergence_orders(levels: Sequence[tuple[float, ErrorPair]]) -> ConvergenceReport:
    """Pairwise ``log2(err_i / err_{i+1})`` for both norms.

    A zero error on either side gives NaN for that order.
    """
    levels = list(levels)
    if len(levels) < 2:
        raise ValueError("need at least two levels to compute convergence orders")
    orders = [
        (_order(a.linf, b.linf), _order(a.l2, b.l2))
        for (_, a), (_, b) in zip(levels[:-1], levels[1:])
    ]
    return ConvergenceReport(levels=levels, orders=orders)
