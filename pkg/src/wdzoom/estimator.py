"""scikit-learn style wrapper around :func:`wdzoom.resample.zoom`.

``fit`` only validates the hyper-parameters and remembers the input layout;
``transform`` resizes one image given as an ``(H, W)`` or ``(H, W, C)``
array. This lets the resizer sit in a :class:`sklearn.pipeline.Pipeline`
and be cloned or grid-searched like any other transformer.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .grid import BOUNDARY_MODES, ScalarField, WenoParams
from .resample import METHODS, ResizeSpec, _canonical_method, zoom

__all__ = ["WenoZoom", "check_image_array"]


def check_image_array(X) -> np.ndarray:
    """Validate an image array and return it as float64 ``(H, W, C)``."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 2:
        arr = arr[:, :, np.newaxis]
    if arr.ndim != 3:
        raise ValueError(f"expected an (H, W) or (H, W, C) array, got shape {arr.shape}")
    if arr.shape[0] < 2 or arr.shape[1] < 2:
        raise ValueError(f"image must be at least 2x2, got {arr.shape[1]}x{arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("image contains NaN or infinite values")
    return arr


class WenoZoom(TransformerMixin, BaseEstimator):
    """Resize images with WD-WENO, tensor WENO or a baseline filter.

    Parameters
    ----------
    scale : float, default=2
        Scale factor ``d``; ``n`` samples become ``round(d * (n - 1)) + 1``.
        Ignored when ``size`` is set.
    size : tuple of int, optional
        Explicit ``(width, height)`` target.
    method : str, default="wd-weno"
        One of ``wd-weno``, ``tensor-weno``, ``bilinear``, ``bicubic-catmullrom``.
    beta : float, default=2.0
        Exponent of the nonlinear weights.
    k_eps : float, default=1e-8
        Scale of the regularisation ``eps = k_eps * h**2``.
    boundary : str, default="extrapolate"
        Ghost-node policy at the image border.
    """

    def __init__(self, scale=2, size=None, method="wd-weno", beta=2.0, k_eps=1e-8, boundary="extrapolate"):
        self.scale = scale
        self.size = size
        self.method = method
        self.beta = beta
        self.k_eps = k_eps
        self.boundary = boundary

    def _spec(self) -> ResizeSpec:
        method = _canonical_method(self.method)
        if self.size is not None:
            width, height = self.size
            return ResizeSpec(target_width=int(width), target_height=int(height), method=method)
        return ResizeSpec(scale=self.scale, method=method)

    def fit(self, X, y=None):
        if self.boundary not in BOUNDARY_MODES:
            raise ValueError(f"boundary must be one of {BOUNDARY_MODES}, got {self.boundary!r}")
        if _canonical_method(self.method) not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        self.spec_ = self._spec()
        self.params_ = WenoParams(beta=self.beta, k_eps=self.k_eps)
        arr = check_image_array(X)
        self.n_channels_in_ = arr.shape[2]
        self.output_size_ = self.spec_.resolve(arr.shape[1], arr.shape[0])
        return self

    def transform(self, X):
        check_is_fitted(self, "spec_")
        arr = check_image_array(X)
        if arr.shape[2] != self.n_channels_in_:
            raise ValueError(f"fitted on {self.n_channels_in_} channels, got {arr.shape[2]}")
        out = [
            zoom(ScalarField(arr[:, :, c]), self.spec_, self.params_, self.boundary).data
            for c in range(arr.shape[2])
        ]
        result = np.stack(out, axis=-1)
        return result[:, :, 0] if np.ndim(X) == 2 else result
