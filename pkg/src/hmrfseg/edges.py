"""Binary edge maps: a built-in Canny detector plus file ingest.

An edge map is a 2D bool array matching the image shape; True marks a
pixel that sits on an edge and is therefore excluded from the smoothness
coupling of the segmentation model.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .image import _read_pgm, _write_pgm, gaussian_blur

__all__ = ["canny_edges", "load_edge_map", "save_edge_map"]


def _nonmax_suppress(mag: np.ndarray, gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Zero out pixels that are not local maxima along the gradient direction.

    Directions are quantized to 4 bins (0, 45, 90, 135 degrees). Ties with a
    neighbor of equal magnitude are kept, so a perfectly symmetric step edge
    survives as one connected line. Out-of-bounds neighbors count as zero.
    """
    ang = np.degrees(np.arctan2(gy, gx)) % 180.0
    p = np.pad(mag, 1)

    east_west = p[1:-1, :-2], p[1:-1, 2:]
    north_south = p[:-2, 1:-1], p[2:, 1:-1]
    diag_dn = p[2:, 2:], p[:-2, :-2]  # gradient toward +x,+y
    diag_up = p[2:, :-2], p[:-2, 2:]  # gradient toward -x,+y

    bins = [
        ((ang < 22.5) | (ang >= 157.5), east_west),
        ((ang >= 22.5) & (ang < 67.5), diag_dn),
        ((ang >= 67.5) & (ang < 112.5), north_south),
        ((ang >= 112.5) & (ang < 157.5), diag_up),
    ]
    keep = np.zeros(mag.shape, dtype=bool)
    for mask, (n1, n2) in bins:
        keep |= mask & (mag >= n1) & (mag >= n2)
    return np.where(keep, mag, 0.0)


def _hysteresis(suppressed: np.ndarray, low: float, high: float) -> np.ndarray:
    """Connect weak pixels (>= low) to strong seeds (>= high), 8-connected.

    Thresholds are fractions of the maximum suppressed magnitude. Pixels of
    zero magnitude never become edges, so a flat image yields no edges even
    though its maximum is zero.
    """
    maxmag = suppressed.max()
    if maxmag <= 0.0:
        return np.zeros(suppressed.shape, dtype=bool)
    strong = (suppressed >= high * maxmag) & (suppressed > 0.0)
    weak = (suppressed >= low * maxmag) & (suppressed > 0.0)

    h, w = suppressed.shape
    visited = strong.copy()
    queue = deque(zip(*np.nonzero(strong)))
    while queue:
        y, x = queue.popleft()
        for ny in range(max(y - 1, 0), min(y + 2, h)):
            for nx in range(max(x - 1, 0), min(x + 2, w)):
                if weak[ny, nx] and not visited[ny, nx]:
                    visited[ny, nx] = True
                    queue.append((ny, nx))
    return visited


def canny_edges(img: np.ndarray, sigma: float, low: float, high: float) -> np.ndarray:
    """Classic Canny detector returning a bool edge mask.

    Stages: Gaussian smoothing with `sigma`, central-difference gradients,
    magnitude + quantized direction, non-maximum suppression, then double
    threshold hysteresis with `low`/`high` given as fractions of the maximum
    suppressed magnitude.
    """
    if not low < high:
        raise ValueError("canny thresholds must satisfy low < high")
    smoothed = gaussian_blur(img, sigma)
    gy, gx = np.gradient(smoothed)
    mag = np.hypot(gx, gy)
    if mag.max() == 0.0:
        return np.zeros(img.shape, dtype=bool)
    suppressed = _nonmax_suppress(mag, gx, gy)
    return _hysteresis(suppressed, low, high)


def load_edge_map(path: str, width: int, height: int) -> np.ndarray:
    """Load a P5 PGM edge map; pixel values >= 128 mark edges."""
    raw = _read_pgm(path)
    if raw.shape != (height, width):
        raise ValueError(
            f"edge map dimension mismatch: file is {raw.shape[1]}x{raw.shape[0]}, "
            f"expected {width}x{height}"
        )
    return raw >= 128


def save_edge_map(edges: np.ndarray, path: str) -> None:
    """Write an edge mask as P5 PGM with 0 = non-edge, 255 = edge."""
    _write_pgm(np.where(edges, 255, 0), path)
