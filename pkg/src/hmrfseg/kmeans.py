"""Intensity k-means: the initial labeling and Gaussian class parameters.

Labels are a 2D int array shaped like the image. ClassParams carries one
(mu, sigma) pair per class, ordered so mu is non-decreasing in the label.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SIGMA_FLOOR", "ClassParams", "assign_to_centers", "kmeans_init"]

# Lower bound on class standard deviations. Keeps (y-mu)^2/(2*sigma^2) and
# ln(sigma) finite for degenerate (single-intensity or empty) clusters.
SIGMA_FLOOR = 1e-4


@dataclass(frozen=True)
class ClassParams:
    """Per-class Gaussian parameters; sigma is floored at SIGMA_FLOOR."""

    mu: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=np.float64))
        object.__setattr__(self, "sigma", np.asarray(self.sigma, dtype=np.float64))
        if self.mu.shape != self.sigma.shape or self.mu.ndim != 1:
            raise ValueError("mu and sigma must be 1D arrays of equal length")
        if np.any(self.sigma < SIGMA_FLOOR):
            raise ValueError(f"sigma below floor {SIGMA_FLOOR}")

    @property
    def k(self) -> int:
        return self.mu.shape[0]


def assign_to_centers(values: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Nearest-center assignment; equidistant ties go to the lower index."""
    d = np.abs(values[:, None] - centers[None, :])
    return np.argmin(d, axis=1)


def _quantile_centers(sorted_values: np.ndarray, k: int) -> np.ndarray:
    n = sorted_values.shape[0]
    idx = np.minimum((np.arange(k) + 0.5) * n / k, n - 1).astype(np.intp)
    return sorted_values[idx].astype(np.float64)


def _recenter(values: np.ndarray, labels: np.ndarray, centers: np.ndarray) -> np.ndarray:
    k = centers.shape[0]
    new = centers.copy()
    counts = np.bincount(labels, minlength=k)
    sums = np.bincount(labels, weights=values, minlength=k)
    nonempty = counts > 0
    new[nonempty] = sums[nonempty] / counts[nonempty]
    # Empty clusters re-seed at the intensity farthest from its nearest
    # center; if every intensity already coincides with a center, the
    # cluster stays where it was and ends up empty.
    for c in np.flatnonzero(~nonempty):
        gaps = np.abs(values[:, None] - new[None, :]).min(axis=1)
        far = np.argmax(gaps)
        if gaps[far] > 0.0:
            new[c] = values[far]
    return new


def kmeans_init(
    img: np.ndarray, k: int, max_iters: int = 100, seed: int = 0
) -> tuple[np.ndarray, ClassParams]:
    """Lloyd's algorithm on pixel intensities.

    Centers start at the (i+0.5)/k quantiles of the sorted intensities, which
    makes the result deterministic; `seed` is reserved for a future
    random-restart mode. Output labels are renumbered so class means are
    non-decreasing, and per-class sigmas are population standard deviations
    floored at SIGMA_FLOOR.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    values = np.asarray(img, dtype=np.float64).ravel()
    n = values.shape[0]
    if k > n:
        raise ValueError(f"k larger than number of pixels ({k} > {n})")

    centers = _quantile_centers(np.sort(values), k)
    labels = assign_to_centers(values, centers)
    for _ in range(max_iters):
        centers = _recenter(values, labels, centers)
        new_labels = assign_to_centers(values, centers)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels

    counts = np.bincount(labels, minlength=k)
    sums = np.bincount(labels, weights=values, minlength=k)
    mu = np.where(counts > 0, sums / np.maximum(counts, 1), centers)
    sq = np.bincount(labels, weights=(values - mu[labels]) ** 2, minlength=k)
    var = np.where(counts > 0, sq / np.maximum(counts, 1), 0.0)
    sigma = np.maximum(np.sqrt(var), SIGMA_FLOOR)

    order = np.argsort(mu, kind="stable")
    remap = np.empty(k, dtype=np.intp)
    remap[order] = np.arange(k)
    labels = remap[labels].reshape(img.shape)
    return labels, ClassParams(mu=mu[order], sigma=sigma[order])
