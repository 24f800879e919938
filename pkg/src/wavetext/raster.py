"""Gray images and binary masks: decoding, encoding, luma conversion, padding.

Images are plain numpy arrays. A gray image is a ``(height, width)`` uint8
array, a mask is a ``(height, width)`` bool array with ``True`` marking a
foreground ("white") pixel. Pixel ``(x, y)`` lives at ``arr[y, x]``.
"""

from __future__ import annotations

import os
import re
from pathlib import Path

import numpy as np

__all__ = [
    "ImageFormatError",
    "to_gray",
    "rgb_to_gray",
    "load_image",
    "pad_to_even",
    "save_gray",
    "save_mask",
]

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
_PGM_HEADER = re.compile(rb"P5(?:\s|#[^\n]*\n)+(\d+)(?:\s|#[^\n]*\n)+(\d+)(?:\s|#[^\n]*\n)+(\d+)\s")


class ImageFormatError(ValueError):
    """Raised when a file is not a supported PGM/PNG image."""

    def __init__(self, path, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


def to_gray(r, g, b):
    """BT.601 luma, rounded half-up, computed exactly in integers.

    Accepts scalars or broadcastable integer arrays. Scalars give an ``int``,
    arrays give a uint8 array.
    """
    r = np.asarray(r, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    y = np.clip((299 * r + 587 * g + 114 * b + 500) // 1000, 0, 255)
    if y.ndim == 0:
        return int(y)
    return y.astype(np.uint8)


def rgb_to_gray(rgb: np.ndarray) -> np.ndarray:
    """Convert an ``(H, W, 3)`` array to gray with :func:`to_gray`."""
    return to_gray(rgb[..., 0], rgb[..., 1], rgb[..., 2])


def _composite_over_white(channels: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    c = channels.astype(np.int64)
    a = alpha.astype(np.int64)[..., None] if channels.ndim == 3 else alpha.astype(np.int64)
    # round-half-up of (c*a + 255*(255-a)) / 255
    return ((2 * (c * a + 255 * (255 - a)) + 255) // 510).astype(np.uint8)


def _decode_pgm(path, raw: bytes) -> np.ndarray:
    m = _PGM_HEADER.match(raw)
    if m is None:
        raise ImageFormatError(path, "malformed PGM header")
    width, height, maxval = (int(v) for v in m.groups())
    if width < 1 or height < 1:
        raise ImageFormatError(path, f"invalid PGM dimensions {width}x{height}")
    if not 0 < maxval <= 255:
        raise ImageFormatError(path, f"unsupported PGM maxval {maxval} (8-bit only)")
    body = raw[m.end():m.end() + width * height]
    if len(body) < width * height:
        raise ImageFormatError(path, "truncated PGM pixel data")
    data = np.frombuffer(body, dtype=np.uint8).reshape(height, width)
    if maxval != 255:
        scaled = (data.astype(np.int64) * 255 * 2 + maxval) // (2 * maxval)
        data = np.clip(scaled, 0, 255).astype(np.uint8)
    return data.copy()


def _decode_png(path) -> np.ndarray:
    from PIL import Image

    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode == "P":
                im = im.convert("RGBA")
                mode = "RGBA"
            elif mode == "1":
                im = im.convert("L")
                mode = "L"
            arr = np.asarray(im)
    except OSError as exc:
        raise ImageFormatError(path, f"cannot decode PNG ({exc})") from exc

    if mode == "L":
        return arr.astype(np.uint8)
    if mode == "LA":
        return _composite_over_white(arr[..., 0], arr[..., 1])
    if mode == "RGB":
        return rgb_to_gray(arr)
    if mode == "RGBA":
        return rgb_to_gray(_composite_over_white(arr[..., :3], arr[..., 3]))
    raise ImageFormatError(path, f"unsupported PNG mode {mode!r} (8-bit gray/RGB/RGBA only)")


def load_image(path) -> np.ndarray:
    """Read a binary PGM (P5) or PNG file as a uint8 gray image.

    Raises ``OSError`` if the file cannot be read and
    :class:`ImageFormatError` if it is not a supported image.
    """
    path = os.fspath(path)
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw.startswith(b"P5"):
        return _decode_pgm(path, raw)
    if raw.startswith(PNG_MAGIC):
        return _decode_png(path)
    raise ImageFormatError(path, "not a binary PGM (P5) or PNG file")


def pad_to_even(img: np.ndarray) -> np.ndarray:
    """Replicate the last row and/or column once so both dimensions are even.

    Already-even images are returned unchanged (same object). The caller
    keeps ``img.shape`` to crop back to the original size.
    """
    h, w = img.shape
    pad_h, pad_w = h % 2, w % 2
    if not (pad_h or pad_w):
        return img
    return np.pad(img, ((0, pad_h), (0, pad_w)), mode="edge")


def _write_pgm(data: np.ndarray, path) -> None:
    h, w = data.shape
    Path(path).write_bytes(b"P5\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(data, dtype=np.uint8).tobytes())


def save_gray(img: np.ndarray, path) -> None:
    if img.dtype != np.uint8:
        raise TypeError(f"expected uint8 image, got {img.dtype}")
    _write_pgm(img, path)


def save_mask(mask: np.ndarray, path) -> None:
    """Write a boolean mask as a 0/255 PGM."""
    _write_pgm(np.where(mask, 255, 0).astype(np.uint8), path)
