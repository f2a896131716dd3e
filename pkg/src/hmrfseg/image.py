"""Grayscale image I/O, mirror boundary handling, and Gaussian blur.

Images are 2D float64 arrays of shape (height, width). Loaded images hold
intensities in [0, 1]; the processing functions accept any finite values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "load_image",
    "save_image",
    "save_label_image",
    "mirror_expand",
    "mirror_shrink",
    "GaussianKernel",
    "gaussian_kernel",
    "gaussian_blur",
]


def _read_pgm(path: str) -> np.ndarray:
    with open(path, "rb") as f:
        data = f.read()

    # Header: magic, width, height, maxval, separated by whitespace.
    # '#' starts a comment running to end of line.
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < 4 and pos < len(data):
        c = data[pos : pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            nl = data.find(b"\n", pos)
            pos = len(data) if nl < 0 else nl + 1
        else:
            end = pos
            while end < len(data) and not data[end : end + 1].isspace():
                end += 1
            tokens.append(data[pos:end])
            pos = end
    if len(tokens) < 4 or tokens[0] != b"P5":
        raise ValueError(f"malformed PGM header in {path!r}")
    try:
        width, height, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    except ValueError:
        raise ValueError(f"malformed PGM header in {path!r}") from None
    if width <= 0 or height <= 0:
        raise ValueError(f"zero-dimension image in {path!r}")
    if maxval != 255:
        raise ValueError(f"unsupported PGM maxval {maxval} (want 255) in {path!r}")

    pos += 1  # single whitespace byte after maxval
    body = data[pos : pos + width * height]
    if len(body) < width * height:
        raise ValueError(f"malformed image body in {path!r}")
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width)


def _read_png(path: str) -> np.ndarray:
    from PIL import Image

    with Image.open(path) as im:
        if im.mode in ("I", "I;16", "I;16B", "F"):
            raise ValueError(f"unsupported bit depth in {path!r} (8-bit only)")
        if im.mode == "L":
            return np.asarray(im, dtype=np.uint8)
        rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
        # Color input collapses to the channel average.
        return rgb.mean(axis=2)


_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def load_image(path: str) -> np.ndarray:
    """Load an 8-bit grayscale image (binary PGM or PNG), scaled to [0, 1]."""
    with open(path, "rb") as f:
        magic = f.read(8)
    if magic.startswith(_PNG_SIGNATURE):
        raw = _read_png(path)
    else:
        raw = _read_pgm(path)
    if raw.shape[0] == 0 or raw.shape[1] == 0:
        raise ValueError(f"zero-dimension image in {path!r}")
    return raw.astype(np.float64) / 255.0


def _write_pgm(gray: np.ndarray, path: str) -> None:
    height, width = gray.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (width, height))
        f.write(gray.astype(np.uint8).tobytes())


def save_image(img: np.ndarray, path: str) -> None:
    """Write a [0, 1] image as binary PGM (P5), rounding to 8 bits."""
    gray = np.rint(np.clip(img, 0.0, 1.0) * 255.0)
    _write_pgm(gray, path)


def save_label_image(labels: np.ndarray, k: int, path: str) -> None:
    """Write a label field as P5 PGM, mapping label l to round(255*l/(k-1))."""
    if labels.min() < 0 or labels.max() >= k:
        raise ValueError("labels out of range for k classes")
    if k == 1:
        gray = np.zeros(labels.shape)
    else:
        gray = np.rint(labels * (255.0 / (k - 1)))
    _write_pgm(gray, path)


def mirror_expand(img: np.ndarray) -> np.ndarray:
    """Grow an image by a one-pixel mirrored border.

    The new border pixel copies the pixel one step inside the old boundary
    (reflection that does not repeat the boundary pixel itself).
    """
    return np.pad(img, 1, mode="reflect")


def mirror_shrink(img: np.ndarray) -> np.ndarray:
    """Drop the one-pixel border, inverting mirror_expand."""
    if img.shape[0] < 3 or img.shape[1] < 3:
        raise ValueError("image too small to shrink")
    return img[1:-1, 1:-1].copy()


@dataclass(frozen=True)
class GaussianKernel:
    """Normalized 2D Gaussian mask: `size` x `size`, weights summing to 1."""

    size: int
    sigma: float
    weights: np.ndarray


def gaussian_kernel(sigma: float) -> GaussianKernel:
    """Build the Gaussian mask for `sigma`.

    Size is the smallest odd integer >= 6*sigma, so the mask covers at least
    three standard deviations on each side of the center.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    size = max(1, math.ceil(6.0 * sigma))
    if size % 2 == 0:
        size += 1
    r = size // 2
    d = np.arange(-r, r + 1, dtype=np.float64)
    dx, dy = np.meshgrid(d, d)
    w = np.exp(-(dx**2 + dy**2) / (2.0 * sigma**2))
    return GaussianKernel(size=size, sigma=sigma, weights=w / w.sum())


def gaussian_blur(img: np.ndarray, sigma: float) -> np.ndarray:
    """Convolve with gaussian_kernel(sigma) under mirrored boundary handling.

    The image is padded by repeated mirror_expand up to the kernel radius,
    convolved, and cropped back to its original shape.
    """
    kernel = gaussian_kernel(sigma)
    r = kernel.size // 2
    padded = img.astype(np.float64)
    for _ in range(r):
        padded = mirror_expand(padded)
    h, w = img.shape
    out = np.zeros((h, w), dtype=np.float64)
    for dy in range(kernel.size):
        for dx in range(kernel.size):
            out += kernel.weights[dy, dx] * padded[dy : dy + h, dx : dx + w]
    return out
