"""Posterior energy terms and ICM-based MAP label estimation.

The model couples a per-pixel Gaussian likelihood energy with a Potts prior
over 4-neighbor pairs (0 for equal labels, 1/2 otherwise). An optional edge
map removes smoothness coupling: by default a pair is dropped when either
endpoint is an edge pixel, which keeps the per-pixel ICM update an exact
coordinate descent on the total energy. The one-sided variant that only
tests the neighbor is available via IcmConfig.edge_literal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kmeans import SIGMA_FLOOR, ClassParams

__all__ = [
    "EnergyBreakdown",
    "IcmConfig",
    "likelihood_energy_pixel",
    "clique_potential",
    "prior_energy",
    "total_posterior_energy",
    "icm_map",
]


@dataclass(frozen=True)
class EnergyBreakdown:
    likelihood_energy: float
    prior_energy: float
    total: float


@dataclass(frozen=True)
class IcmConfig:
    max_iters: int = 10
    energy_tol: float = 1e-6
    schedule: str = "sequential"  # or "synchronous"
    edge_literal: bool = False

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.energy_tol < 0:
            raise ValueError("energy_tol must be non-negative")
        if self.schedule not in ("sequential", "synchronous"):
            raise ValueError(f"unknown schedule {self.schedule!r}")


def likelihood_energy_pixel(y: float, l: int, params: ClassParams) -> float:
    """Data term for observing intensity y under class l."""
    mu = float(params.mu[l])
    sigma = float(params.sigma[l])
    if sigma < SIGMA_FLOOR:
        raise ValueError("sigma below floor")
    return (y - mu) ** 2 / (2.0 * sigma**2) + math.log(sigma)


def clique_potential(l1: int, l2: int) -> float:
    """Potts pair potential: 0 for equal labels, 1/2 otherwise."""
    return 0.0 if l1 == l2 else 0.5


def unary_energy_table(img: np.ndarray, params: ClassParams) -> np.ndarray:
    """likelihood_energy_pixel evaluated for every pixel and class, (k, h, w)."""
    y = np.asarray(img, dtype=np.float64)
    mu = params.mu[:, None, None]
    sigma = params.sigma[:, None, None]
    return (y[None] - mu) ** 2 / (2.0 * sigma**2) + np.log(sigma)


def _check_dims(img: np.ndarray, other: np.ndarray, what: str) -> None:
    if other is not None and other.shape != img.shape:
        raise ValueError(f"{what} dimension mismatch: {other.shape} vs {img.shape}")


def prior_energy(labels: np.ndarray, edges: np.ndarray | None = None) -> float:
    """Sum of pair potentials over 4-neighbor pairs, each counted once.

    A pair is skipped when either endpoint is an edge pixel.
    """
    _check_dims(labels, edges, "edge map")
    diff_h = labels[:, :-1] != labels[:, 1:]
    diff_v = labels[:-1, :] != labels[1:, :]
    if edges is not None:
        diff_h &= ~edges[:, :-1] & ~edges[:, 1:]
        diff_v &= ~edges[:-1, :] & ~edges[1:, :]
    return 0.5 * (np.count_nonzero(diff_h) + np.count_nonzero(diff_v))


def total_posterior_energy(
    img: np.ndarray,
    labels: np.ndarray,
    params: ClassParams,
    edges: np.ndarray | None = None,
) -> EnergyBreakdown:
    """Likelihood energy of the labeling plus the Potts prior energy."""
    _check_dims(img, labels, "label field")
    _check_dims(img, edges, "edge map")
    mu = params.mu[labels]
    sigma = params.sigma[labels]
    like = float(np.sum((img - mu) ** 2 / (2.0 * sigma**2) + np.log(sigma)))
    prior = prior_energy(labels, edges)
    return EnergyBreakdown(likelihood_energy=like, prior_energy=prior, total=like + prior)


# Neighbor offsets in raster-update order: up, left, right, down.
_OFFSETS = ((-1, 0), (0, -1), (0, 1), (1, 0))


def _neighbor_plan(shape, edges, literal):
    """Per-anti-diagonal gather indices and validity masks for ICM sweeps.

    Pixels on anti-diagonal d = row+col only neighbor diagonals d-1 and d+1,
    so updating diagonals in increasing order while vectorizing within each
    one reproduces the row-major raster scan exactly.
    """
    h, w = shape
    plan = []
    for d in range(h + w - 1):
        lo = max(0, d - w + 1)
        hi = min(d, h - 1)
        rows = np.arange(lo, hi + 1)
        cols = d - rows
        dirs = []
        for dr, dc in _OFFSETS:
            nr, nc = rows + dr, cols + dc
            valid = (nr >= 0) & (nr < h) & (nc >= 0) & (nc < w)
            nr = np.clip(nr, 0, h - 1)
            nc = np.clip(nc, 0, w - 1)
            if edges is not None:
                valid = valid & ~edges[nr, nc]
                if not literal:
                    valid = valid & ~edges[rows, cols]
            dirs.append((nr, nc, valid))
        plan.append((rows, cols, dirs))
    return plan


def _sequential_sweep(labels, unary, plan, k):
    for rows, cols, dirs in plan:
        energy = unary[:, rows, cols]
        for nr, nc, valid in dirs:
            nb = labels[nr, nc]
            for l in range(k):
                energy[l] += 0.5 * (valid & (nb != l))
        labels[rows, cols] = np.argmin(energy, axis=0)


def _synchronous_sweep(labels, unary, edges, literal, k):
    h, w = labels.shape
    energy = unary.copy()
    for dr, dc in _OFFSETS:
        nb = np.full((h, w), -1, dtype=labels.dtype)
        valid = np.zeros((h, w), dtype=bool)
        src = (slice(max(dr, 0), h + min(dr, 0)), slice(max(dc, 0), w + min(dc, 0)))
        dst = (slice(max(-dr, 0), h + min(-dr, 0)), slice(max(-dc, 0), w + min(-dc, 0)))
        nb[dst] = labels[src]
        valid[dst] = True
        if edges is not None:
            ev = np.zeros((h, w), dtype=bool)
            ev[dst] = edges[src]
            valid &= ~ev
            if not literal:
                valid &= ~edges
        for l in range(k):
            energy[l] += 0.5 * (valid & (nb != l))
    return np.argmin(energy, axis=0)


def icm_map(
    img: np.ndarray,
    labels_init: np.ndarray,
    params: ClassParams,
    edges: np.ndarray | None = None,
    cfg: IcmConfig | None = None,
) -> tuple[np.ndarray, list[EnergyBreakdown]]:
    """Iterated conditional modes: greedy per-pixel energy minimization.

    Each pixel takes the label minimizing its data term plus the pair
    potentials to its unmasked neighbors; argmin ties go to the smallest
    label. The sequential schedule updates in raster order against the
    evolving field (total energy is non-increasing); the synchronous
    schedule updates every pixel against the previous sweep's field.
    Returns the final labels and the per-sweep energy history, whose entry
    0 is the energy of `labels_init`. Sweeping stops once the total energy
    changes by at most cfg.energy_tol, or after cfg.max_iters sweeps.
    """
    if cfg is None:
        cfg = IcmConfig()
    _check_dims(img, labels_init, "label field")
    _check_dims(img, edges, "edge map")
    k = params.k
    if labels_init.min() < 0 or labels_init.max() >= k:
        raise ValueError("labels out of range for params")

    labels = labels_init.astype(np.intp).copy()
    unary = unary_energy_table(img, params)
    history = [total_posterior_energy(img, labels, params, edges)]

    plan = None
    if cfg.schedule == "sequential":
        plan = _neighbor_plan(img.shape, edges, cfg.edge_literal)

    for _ in range(cfg.max_iters):
        if cfg.schedule == "sequential":
            _sequential_sweep(labels, unary, plan, k)
        else:
            labels = _synchronous_sweep(labels, unary, edges, cfg.edge_literal, k)
        history.append(total_posterior_energy(img, labels, params, edges))
        if abs(history[-1].total - history[-2].total) <= cfg.energy_tol:
            break
    return labels, history
