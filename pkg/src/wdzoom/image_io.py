"""Raster image loading/saving and the crop/decimate steps of the benchmark protocol.

Pixels are held as float64 in ``[0, 1]`` (value / (2**depth - 1)); saving
clamps to that range and rounds half up.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np
import png

from .grid import ScalarField

__all__ = ["DecodeError", "Image", "crop_for_scale", "decimate", "load", "save"]

PNM_EXTENSIONS = (".pnm", ".pgm", ".ppm")


class DecodeError(ValueError):
    """The file could not be decoded into an :class:`Image`."""


@dataclass
class Image:
    """A stack of channels, ``data`` shaped ``(height, width, channels)``."""

    data: np.ndarray
    bit_depth: int = 8

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim == 2:
            data = data[:, :, np.newaxis]
        if data.ndim != 3 or not 1 <= data.shape[2] <= 4:
            raise ValueError(f"image data must be (H, W, C) with 1-4 channels, got {data.shape}")
        if self.bit_depth not in (8, 16):
            raise ValueError(f"bit depth must be 8 or 16, got {self.bit_depth}")
        self.data = data

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def n_channels(self) -> int:
        return self.data.shape[2]

    @property
    def has_alpha(self) -> bool:
        return self.n_channels in (2, 4)

    @property
    def channels(self) -> list[ScalarField]:
        return [ScalarField(self.data[:, :, c]) for c in range(self.n_channels)]

    @classmethod
    def from_channels(cls, channels, bit_depth: int = 8) -> "Image":
        return cls(np.stack([getattr(c, "data", c) for c in channels], axis=-1), bit_depth)


# ---------------------------------------------------------------------------
# PNG


def _load_png(path) -> Image:
    try:
        width, height, rows, info = png.Reader(filename=os.fspath(path)).asDirect()
        pixels = np.vstack([np.asarray(row, dtype=np.float64) for row in rows])
    except (png.Error, EOFError, OSError, ValueError) as exc:
        raise DecodeError(f"{path}: cannot decode PNG ({exc})") from exc
    planes = info["planes"]
    depth = info["bitdepth"]
    pixels = pixels.reshape(height, width, planes)
    return Image(pixels / (2**depth - 1), bit_depth=16 if depth > 8 else 8)


def _save_png(img: Image, path, raw: np.ndarray) -> None:
    writer = png.Writer(
        width=img.width,
        height=img.height,
        greyscale=img.n_channels <= 2,
        alpha=img.has_alpha,
        bitdepth=img.bit_depth,
    )
    with open(path, "wb") as fh:
        writer.write(fh, raw.reshape(img.height, img.width * img.n_channels))


# ---------------------------------------------------------------------------
# PNM

_PNM_CHANNELS = {b"P2": 1, b"P5": 1, b"P3": 3, b"P6": 3}
_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _load_pnm(path) -> Image:
    with open(path, "rb") as fh:
        blob = fh.read()
    magic = blob[:2]
    if magic not in _PNM_CHANNELS:
        raise DecodeError(f"{path}: unsupported PNM variant {magic!r}")
    pos = 2
    header = []
    for _ in range(3):
        match = _TOKEN.match(blob, pos)
        if match is None:
            raise DecodeError(f"{path}: truncated PNM header")
        header.append(match.group(1))
        pos = match.end()
    try:
        width, height, maxval = (int(tok) for tok in header)
    except ValueError as exc:
        raise DecodeError(f"{path}: malformed PNM header") from exc
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise DecodeError(f"{path}: invalid PNM dimensions or maxval")
    planes = _PNM_CHANNELS[magic]
    count = width * height * planes
    if magic in (b"P5", b"P6"):
        body = blob[pos + 1 :]  # exactly one whitespace byte ends the header
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        if len(body) < count * dtype.itemsize:
            raise DecodeError(f"{path}: truncated PNM pixel data")
        values = np.frombuffer(body, dtype=dtype, count=count).astype(np.float64)
    else:
        tokens = blob[pos:].split()
        if len(tokens) < count:
            raise DecodeError(f"{path}: truncated PNM pixel data")
        values = np.array([int(t) for t in tokens[:count]], dtype=np.float64)
    if values.max(initial=0) > maxval:
        raise DecodeError(f"{path}: sample exceeds maxval {maxval}")
    return Image(values.reshape(height, width, planes) / maxval, bit_depth=16 if maxval > 255 else 8)


def _save_pnm(img: Image, path, raw: np.ndarray) -> None:
    if img.n_channels not in (1, 3):
        raise ValueError(f"PNM cannot store {img.n_channels} channels; use PNG")
    magic = b"P5" if img.n_channels == 1 else b"P6"
    maxval = 2**img.bit_depth - 1
    dtype = ">u2" if img.bit_depth == 16 else "u1"
    with open(path, "wb") as fh:
        fh.write(b"%s\n%d %d\n%d\n" % (magic, img.width, img.height, maxval))
        fh.write(raw.astype(dtype).tobytes())


# ---------------------------------------------------------------------------


def _extension(path) -> str:
    return os.path.splitext(os.fspath(path))[1].lower()


def load(path) -> Image:
    """Decode a PNG or PNM file."""
    ext = _extension(path)
    if ext == ".png":
        return _load_png(path)
    if ext in PNM_EXTENSIONS:
        return _load_pnm(path)
    raise DecodeError(f"{path}: unsupported image format {ext!r}")


def quantize(img: Image) -> np.ndarray:
    maxval = 2**img.bit_depth - 1
    clipped = np.clip(img.data, 0.0, 1.0)
    return np.floor(clipped * maxval + 0.5).astype(np.uint16 if img.bit_depth == 16 else np.uint8)


def save(img: Image, path) -> None:
    """Encode by extension (``.png``, ``.pgm``, ``.ppm``, ``.pnm``)."""
    ext = _extension(path)
    raw = quantize(img)
    if ext == ".png":
        _save_png(img, path, raw)
    elif ext in PNM_EXTENSIONS:
        _save_pnm(img, path, raw)
    else:
        raise ValueError(f"{path}: unsupported output format {ext!r}")


def crop_for_scale(img: Image, d: int) -> Image:
    """Drop the last ``d - 1`` rows and columns (the reference image for scale ``d``)."""
    if d < 2:
        raise ValueError("scale d must be at least 2")
    if img.width < d or img.height < d:
        raise ValueError(f"{img.width}x{img.height} image is too small to crop for d={d}")
    cut = d - 1
    return Image(img.data[:-cut, :-cut, :], img.bit_depth)


def decimate(img: Image, d: int) -> Image:
    """Keep every ``d``-th sample from index 0; ``(size - 1)`` must be divisible by ``d``."""
    if d < 1:
        raise ValueError("decimation factor must be positive")
    if (img.width - 1) % d or (img.height - 1) % d:
        raise ValueError(f"{img.width}x{img.height} cannot be decimated by {d}: (size - 1) must be divisible by d")
    return Image(img.data[::d, ::d, :], img.bit_depth)
