"""Resampling to arbitrary sizes.

Every method uses endpoint-aligned coordinates: output sample ``i`` of
``out_w`` sits at source position ``i * (n - 1) / (out_w - 1)``, so the
corners of the input and output coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .grid import ScalarField, WenoParams, extend
from .image_io import Image
from .wdweno import DEFAULT_MAX_SAMPLES, double_k, doubled_size
from .weno1d import weno_spline_lines

__all__ = [
    "METHODS",
    "ResizeSpec",
    "baseline_resample",
    "choose_doublings",
    "source_positions",
    "tensor_resample",
    "zoom",
    "zoom_image",
]

METHODS = ("wd-weno", "tensor-weno", "bilinear", "bicubic-catmullrom")
_ALIASES = {"bicubic": "bicubic-catmullrom", "catmullrom": "bicubic-catmullrom", "catrom": "bicubic-catmullrom"}


def _canonical_method(method: str) -> str:
    method = _ALIASES.get(method, method)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return method


@dataclass(frozen=True)
class ResizeSpec:
    """Target of a resize: an explicit size or a scale factor, plus the method.

    A scale factor ``d`` maps ``n`` samples to ``round(d * (n - 1)) + 1``.
    """

    target_width: int | None = None
    target_height: int | None = None
    scale: float | Fraction | None = None
    method: str = "wd-weno"

    def __post_init__(self):
        has_size = self.target_width is not None or self.target_height is not None
        if has_size == (self.scale is not None):
            raise ValueError("give either a target size or a scale factor, not both or neither")
        if has_size:
            if self.target_width is None or self.target_height is None:
                raise ValueError("target size needs both width and height")
            if self.target_width < 2 or self.target_height < 2:
                raise ValueError("target size must be at least 2x2")
        elif not self.scale > 0:
            raise ValueError(f"scale factor must be positive, got {self.scale}")
        object.__setattr__(self, "method", _canonical_method(self.method))

    def resolve(self, width: int, height: int) -> tuple[int, int]:
        if self.scale is None:
            return self.target_width, self.target_height
        out = tuple(int(round(self.scale * (size - 1))) + 1 for size in (width, height))
        if min(out) < 2:
            raise ValueError(f"scale {self.scale} maps {width}x{height} below 2x2")
        return out


def source_positions(n: int, count: int) -> np.ndarray:
    """Source coordinates of ``count`` endpoint-aligned samples over ``n`` nodes."""
    if count < 2:
        raise ValueError("need at least two output samples per axis")
    return np.arange(count) * (n - 1) / (count - 1)


def _separable(data: np.ndarray, out_w: int, out_h: int, resample_lines: Callable) -> np.ndarray:
    m, n = data.shape
    if m < 2 or n < 2:
        raise ValueError("source must be at least 2x2")
    # columns first: each column of A becomes a column of Z, then rows of Z
    z = resample_lines(data.T, source_positions(m, out_h)).T
    return resample_lines(z, source_positions(n, out_w))


def tensor_resample(
    source: ScalarField,
    out_w: int,
    out_h: int,
    params: WenoParams | None = None,
    boundary: str = "extrapolate",
) -> ScalarField:
    """Separable 1D-WENO resampling to ``out_w x out_h``."""
    params = (params or WenoParams()).with_h(source.spacing)
    data = _separable(source.data, out_w, out_h, lambda lines, x: weno_spline_lines(lines, x, params, boundary))
    return ScalarField(data, spacing=_output_spacing(source, out_w), origin=source.origin)


def _output_spacing(source: ScalarField, out_w: int) -> float:
    return source.spacing * (source.width - 1) / (out_w - 1)


def _linear_lines(lines, x):
    n = lines.shape[1]
    i = np.clip(np.floor(x).astype(np.intp), 0, n - 2)
    t = x - i
    return lines[:, i] * (1.0 - t) + lines[:, i + 1] * t


def _catmull_rom_weights(t):
    # Keys cubic convolution with a = -0.5, taps at -1, 0, 1, 2
    t2 = t * t
    t3 = t2 * t
    return (
        -0.5 * t3 + t2 - 0.5 * t,
        1.5 * t3 - 2.5 * t2 + 1.0,
        -1.5 * t3 + 2.0 * t2 + 0.5 * t,
        0.5 * t3 - 0.5 * t2,
    )


def _catmull_rom_lines(lines, x):
    n = lines.shape[1]
    i = np.clip(np.floor(x).astype(np.intp), 0, n - 2)
    t = x - i
    padded = extend(lines, (0, 1), "mirror")
    w = _catmull_rom_weights(t)
    return sum(w[k] * padded[:, i + k] for k in range(4))


_BASELINES = {"bilinear": _linear_lines, "bicubic-catmullrom": _catmull_rom_lines}


def baseline_resample(source: ScalarField, out_w: int, out_h: int, method: str = "bilinear") -> ScalarField:
    """Separable bilinear or Catmull-Rom resampling with mirrored edges."""
    method = _canonical_method(method)
    if method not in _BASELINES:
        raise ValueError(f"{method!r} is not a baseline filter")
    data = _separable(source.data, out_w, out_h, _BASELINES[method])
    return ScalarField(data, spacing=_output_spacing(source, out_w), origin=source.origin)


def choose_doublings(width: int, height: int, out_w: int, out_h: int) -> int:
    """Smallest ``k`` whose doubled size covers the target in both dimensions."""
    k = 0
    while doubled_size(width, k) < out_w or doubled_size(height, k) < out_h:
        k += 1
    return k


def zoom(
    source: ScalarField,
    spec: ResizeSpec,
    params: WenoParams | None = None,
    boundary: str = "extrapolate",
    max_samples: int = DEFAULT_MAX_SAMPLES,
    info: dict | None = None,
) -> ScalarField:
    """Resize ``source`` according to ``spec``.

    ``wd-weno`` doubles ``k`` times to the smallest covering size and, when
    that overshoots the target, finishes with a tensor-WENO pass. If ``info``
    is given it receives ``k``, the intermediate size and whether the tensor
    pass ran.
    """
    params = params or WenoParams()
    out_w, out_h = spec.resolve(source.width, source.height)
    if spec.method == "tensor-weno":
        if (out_w, out_h) == (source.width, source.height):
            return source
        return tensor_resample(source, out_w, out_h, params, boundary)
    if spec.method != "wd-weno":
        return baseline_resample(source, out_w, out_h, spec.method)

    k = choose_doublings(source.width, source.height, out_w, out_h)
    mid_w, mid_h = doubled_size(source.width, k), doubled_size(source.height, k)
    if mid_w * mid_h > max_samples:
        raise MemoryError(
            f"target {out_w}x{out_h} needs k={k} doublings ({mid_w}x{mid_h} intermediate), "
            f"above the limit of {max_samples} samples"
        )
    doubled = double_k(source, k, params, boundary, max_samples=max_samples)
    tensor_pass = (mid_w, mid_h) != (out_w, out_h)
    if info is not None:
        info.update(k=k, intermediate=(mid_w, mid_h), tensor_pass=tensor_pass)
    if not tensor_pass:
        return doubled
    return tensor_resample(doubled, out_w, out_h, params, boundary)


def zoom_image(
    img: Image,
    spec: ResizeSpec,
    params: WenoParams | None = None,
    boundary: str = "extrapolate",
    max_samples: int = DEFAULT_MAX_SAMPLES,
    info: dict | None = None,
) -> Image:
    """Resize every channel of ``img`` independently (alpha included)."""
    out = [zoom(ch, spec, params, boundary, max_samples, info) for ch in img.channels]
    return Image.from_channels(out, img.bit_depth)
