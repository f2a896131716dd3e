"""EM fitting of the class parameters around the MAP labeling step.

Each iteration runs ICM to refresh the labels, computes per-pixel class
posteriors that blend the Gaussian likelihood with a neighborhood label
prior, and re-estimates (mu, sigma) from the posterior weights. The total
posterior energy after each iteration is recorded as a trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kmeans import SIGMA_FLOOR, ClassParams
from .mrf import (
    IcmConfig,
    _check_dims,
    clique_potential,
    icm_map,
    total_posterior_energy,
    unary_energy_table,
)

__all__ = [
    "EmConfig",
    "TraceEntry",
    "EnergyTrace",
    "gaussian_pdf",
    "neighborhood_label_prior",
    "class_posterior",
    "update_parameters",
    "hmrf_em",
]

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class EmConfig:
    em_iters: int = 10
    icm: IcmConfig = field(default_factory=IcmConfig)
    record_trace: bool = True

    def __post_init__(self):
        if self.em_iters < 1:
            raise ValueError("em_iters must be >= 1")


@dataclass(frozen=True)
class TraceEntry:
    iteration: int
    total: float
    likelihood: float
    prior: float


@dataclass(frozen=True)
class EnergyTrace:
    entries: list[TraceEntry]

    def to_csv(self, path: str) -> None:
        with open(path, "w") as f:
            f.write("iter,total,likelihood,prior\n")
            for e in self.entries:
                f.write(f"{e.iteration},{e.total:.12g},{e.likelihood:.12g},{e.prior:.12g}\n")


def gaussian_pdf(z: float, mu: float, sigma: float) -> float:
    """Gaussian density with mean mu and standard deviation sigma."""
    if sigma < SIGMA_FLOOR:
        raise ValueError("sigma below floor")
    return math.exp(-((z - mu) ** 2) / (2.0 * sigma**2)) / math.sqrt(2.0 * math.pi * sigma**2)


def neighborhood_label_prior(
    labels: np.ndarray, i: int, l: int, edges: np.ndarray | None = None
) -> float:
    """Unnormalized neighborhood weight exp(-sum of pair potentials).

    `i` is a row-major flat pixel index. The caller normalizes across
    labels; the per-pixel normalizer is exactly that sum. Pairs touching an
    edge pixel (either endpoint) are excluded.
    """
    h, w = labels.shape
    y, x = divmod(i, w)
    if edges is not None and edges[y, x]:
        return 1.0
    penalty = 0.0
    for ny, nx in ((y - 1, x), (y, x - 1), (y, x + 1), (y + 1, x)):
        if not (0 <= ny < h and 0 <= nx < w):
            continue
        if edges is not None and edges[ny, nx]:
            continue
        penalty += clique_potential(l, int(labels[ny, nx]))
    return math.exp(-penalty)


def _neighbor_penalties(
    labels: np.ndarray, k: int, edges: np.ndarray | None
) -> np.ndarray:
    """Pair-potential sums per class, (k, h, w), with edge pairs masked."""
    h, w = labels.shape
    pen = np.zeros((k, h, w), dtype=np.float64)
    for dr, dc in ((-1, 0), (0, -1), (0, 1), (1, 0)):
        nb = np.full((h, w), -1, dtype=labels.dtype)
        valid = np.zeros((h, w), dtype=bool)
        src = (slice(max(dr, 0), h + min(dr, 0)), slice(max(dc, 0), w + min(dc, 0)))
        dst = (slice(max(-dr, 0), h + min(-dr, 0)), slice(max(-dc, 0), w + min(-dc, 0)))
        nb[dst] = labels[src]
        valid[dst] = True
        if edges is not None:
            ev = np.zeros((h, w), dtype=bool)
            ev[dst] = edges[src]
            valid &= ~ev & ~edges
        for l in range(k):
            pen[l] += 0.5 * (valid & (nb != l))
    return pen


def class_posterior(
    img: np.ndarray,
    labels: np.ndarray,
    params: ClassParams,
    edges: np.ndarray | None = None,
) -> np.ndarray:
    """Per-pixel class posteriors, shape (height, width, k).

    p[y, x, l] is proportional to the Gaussian density of the intensity
    under class l times the neighborhood label prior at (y, x), normalized
    over l. Computed in log space with a per-pixel shift so extreme sigmas
    cannot underflow every class at once; should that still happen the
    pixel falls back to a uniform posterior.
    """
    _check_dims(img, labels, "label field")
    _check_dims(img, edges, "edge map")
    k = params.k
    score = -unary_energy_table(img, params) - _HALF_LOG_2PI
    score -= _neighbor_penalties(labels, k, edges)
    score -= score.max(axis=0)
    p = np.exp(score)
    norm = p.sum(axis=0)
    dead = ~(norm > 0)
    if np.any(dead):
        p[:, dead] = 1.0 / k
        norm = p.sum(axis=0)
    return np.moveaxis(p / norm, 0, -1)


def update_parameters(
    img: np.ndarray, post: np.ndarray, prev: ClassParams | None = None
) -> ClassParams:
    """Posterior-weighted mean and population std per class.

    A class whose posterior weight sums to zero keeps its previous
    parameters (`prev` must be supplied for that to be possible).
    """
    k = post.shape[-1]
    y = np.asarray(img, dtype=np.float64).ravel()
    p = post.reshape(-1, k)
    wsum = p.sum(axis=0)
    alive = wsum > 0
    if not alive.all() and prev is None:
        raise ValueError("class with zero posterior weight and no previous parameters")
    safe = np.where(alive, wsum, 1.0)
    mu = (p * y[:, None]).sum(axis=0) / safe
    var = (p * (y[:, None] - mu[None, :]) ** 2).sum(axis=0) / safe
    sigma = np.maximum(np.sqrt(var), SIGMA_FLOOR)
    if not alive.all():
        mu = np.where(alive, mu, prev.mu)
        sigma = np.where(alive, sigma, prev.sigma)
    return ClassParams(mu=mu, sigma=sigma)


def hmrf_em(
    img: np.ndarray,
    labels_init: np.ndarray,
    params_init: ClassParams,
    edges: np.ndarray | None = None,
    cfg: EmConfig | None = None,
) -> tuple[np.ndarray, ClassParams, EnergyTrace]:
    """Alternate MAP labeling and parameter re-estimation.

    Per iteration: ICM refines the labels under the current parameters, the
    class posteriors are computed from those new labels, and the parameters
    are updated from the posteriors. The trace records the total posterior
    energy of the labeling under the just-updated parameters, one entry per
    iteration.
    """
    if cfg is None:
        cfg = EmConfig()
    labels = np.asarray(labels_init, dtype=np.intp)
    params = params_init
    entries: list[TraceEntry] = []
    for t in range(1, cfg.em_iters + 1):
        labels, _ = icm_map(img, labels, params, edges, cfg.icm)
        post = class_posterior(img, labels, params, edges)
        params = update_parameters(img, post, prev=params)
        if cfg.record_trace:
            eb = total_posterior_energy(img, labels, params, edges)
            entries.append(TraceEntry(t, eb.total, eb.likelihood_energy, eb.prior_energy))
    return labels, params, EnergyTrace(entries=entries)
