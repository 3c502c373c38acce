"""WENO-based image zooming: weighted-direction doubling, tensor WENO resampling
and the tools to measure them."""

from .estimator import WenoZoom
from .grid import FineGrid, ScalarField, WenoParams, extend, sample_extended
from .image_io import Image, crop_for_scale, decimate, load, save
from .metrics import ConvergenceReport, ErrorPair, convergence_orders, error_norms, mssim, psnr
from .resample import ResizeSpec, baseline_resample, tensor_resample, zoom, zoom_image
from .wdweno import double, double_k, phase1, phase2
from .weno1d import weno_midpoint, weno_spline_eval

__all__ = [
    "ConvergenceReport",
    "ErrorPair",
    "FineGrid",
    "Image",
    "ResizeSpec",
    "ScalarField",
    "WenoParams",
    "WenoZoom",
    "baseline_resample",
    "convergence_orders",
    "crop_for_scale",
    "decimate",
    "double",
    "double_k",
    "error_norms",
    "extend",
    "load",
    "mssim",
    "phase1",
    "phase2",
    "psnr",
    "sample_extended",
    "save",
    "tensor_resample",
    "weno_midpoint",
    "weno_spline_eval",
    "zoom",
    "zoom_image",
]

__version__ = "0.1.0"
