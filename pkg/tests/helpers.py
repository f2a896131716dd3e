"""Independent oracles and generators shared by the test modules.

Everything here recomputes expected values from scratch with plain loops or
direct enumeration, so the tests never trust the code paths they check.
"""

from __future__ import annotations

import math

import numpy as np


def mirror_expand_oracle(a: np.ndarray) -> np.ndarray:
    """One mirrored ring, computed index-by-index from the definition."""
    h, w = a.shape

    def src(i, n):
        if i == 0:
            s = 1
        elif i == n + 1:
            s = n - 2
        else:
            s = i - 1
        return min(max(s, 0), n - 1)

    out = np.empty((h + 2, w + 2), dtype=float)
    for i in range(h + 2):
        for j in range(w + 2):
            out[i, j] = a[src(i, h), src(j, w)]
    return out


def dense_blur_oracle(img: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Nested-loop convolution after repeated mirrored padding."""
    size = weights.shape[0]
    r = size // 2
    padded = img.astype(float)
    for _ in range(r):
        padded = mirror_expand_oracle(padded)
    h, w = img.shape
    out = np.zeros((h, w))
    for y in range(h):
        for x in range(w):
            s = 0.0
            for dy in range(size):
                for dx in range(size):
                    s += weights[dy, dx] * padded[y + dy, x + dx]
            out[y, x] = s
    return out


def gradient_oracle(field: np.ndarray):
    """Central differences inside, one-sided at the borders, per pixel."""
    h, w = field.shape
    gy = np.zeros((h, w))
    gx = np.zeros((h, w))
    for y in range(h):
        for x in range(w):
            if 0 < y < h - 1:
                gy[y, x] = (field[y + 1, x] - field[y - 1, x]) / 2.0
            elif h > 1:
                gy[y, x] = field[min(y + 1, h - 1), x] - field[max(y - 1, 0), x]
            if 0 < x < w - 1:
                gx[y, x] = (field[y, x + 1] - field[y, x - 1]) / 2.0
            elif w > 1:
                gx[y, x] = field[y, min(x + 1, w - 1)] - field[y, max(x - 1, 0)]
    return gy, gx


def energy_oracle(img, labels, params, edges=None):
    """Direct summation of the data term and the pair potentials."""
    h, w = img.shape
    like = 0.0
    for y in range(h):
        for x in range(w):
            mu = float(params.mu[labels[y, x]])
            s = float(params.sigma[labels[y, x]])
            like += (img[y, x] - mu) ** 2 / (2.0 * s * s) + math.log(s)
    prior = 0.0
    for y in range(h):
        for x in range(w):
            for ny, nx in ((y, x + 1), (y + 1, x)):
                if ny >= h or nx >= w:
                    continue
                if edges is not None and (edges[y, x] or edges[ny, nx]):
                    continue
                if labels[y, x] != labels[ny, nx]:
                    prior += 0.5
    return like, prior


def enumerate_all_labelings(img, params, edges=None):
    """Energies of every k^N labeling; returns (configs, totals).

    configs has shape (k**N, N) in row-major pixel order. Intended for tiny
    instances only.
    """
    h, w = img.shape
    n = h * w
    k = params.k
    configs = np.indices((k,) * n).reshape(n, -1).T
    unary = np.empty((n, k))
    flat = img.ravel()
    for i in range(n):
        for l in range(k):
            mu = float(params.mu[l])
            s = float(params.sigma[l])
            unary[i, l] = (flat[i] - mu) ** 2 / (2.0 * s * s) + math.log(s)
    totals = unary[np.arange(n)[None, :], configs].sum(axis=1)
    for y in range(h):
        for x in range(w):
            for ny, nx in ((y, x + 1), (y + 1, x)):
                if ny >= h or nx >= w:
                    continue
                if edges is not None and (edges[y, x] or edges[ny, nx]):
                    continue
                i, j = y * w + x, ny * w + nx
                totals = totals + 0.5 * (configs[:, i] != configs[:, j])
    return configs, totals


def naive_sequential_icm(img, labels, params, edges=None, sweeps=1, literal=False):
    """Raster-order reference for the sequential ICM schedule."""
    from hmrfseg import clique_potential, likelihood_energy_pixel

    labels = labels.copy()
    h, w = img.shape
    for _ in range(sweeps):
        for y in range(h):
            for x in range(w):
                best_l, best_e = 0, None
                for l in range(params.k):
                    e = likelihood_energy_pixel(img[y, x], l, params)
                    for ny, nx in ((y - 1, x), (y, x - 1), (y, x + 1), (y + 1, x)):
                        if not (0 <= ny < h and 0 <= nx < w):
                            continue
                        if edges is not None:
                            if edges[ny, nx]:
                                continue
                            if not literal and edges[y, x]:
                                continue
                        e += clique_potential(l, int(labels[ny, nx]))
                    if best_e is None or e < best_e:
                        best_l, best_e = l, e
                labels[y, x] = best_l
    return labels


def weighted_stats_oracle(values, weights):
    """Weighted mean and population std by explicit accumulation."""
    wsum = 0.0
    vsum = 0.0
    for v, p in zip(values, weights):
        wsum += p
        vsum += p * v
    mu = vsum / wsum
    sq = 0.0
    for v, p in zip(values, weights):
        sq += p * (v - mu) ** 2
    return mu, math.sqrt(sq / wsum)


def count_components(labels: np.ndarray) -> int:
    """Number of 4-connected constant-label regions."""
    from collections import deque

    h, w = labels.shape
    seen = np.zeros((h, w), dtype=bool)
    n = 0
    for y in range(h):
        for x in range(w):
            if seen[y, x]:
                continue
            n += 1
            val = labels[y, x]
            seen[y, x] = True
            q = deque([(y, x)])
            while q:
                cy, cx = q.popleft()
                for ny, nx in ((cy - 1, cx), (cy + 1, cx), (cy, cx - 1), (cy, cx + 1)):
                    if 0 <= ny < h and 0 <= nx < w and not seen[ny, nx] and labels[ny, nx] == val:
                        seen[ny, nx] = True
                        q.append((ny, nx))
    return n


def two_class_image(rng, height=128, width=128, mu=(0.3, 0.7), noise=0.05):
    """Ground-truth labels and a noisy two-level image, clipped to [0, 1]."""
    truth = np.zeros((height, width), dtype=np.intp)
    truth[:, width // 2 :] = 1
    yy, xx = np.mgrid[0:height, 0:width]
    disk = (yy - height // 3) ** 2 + (xx - 3 * width // 4) ** 2 < (height // 8) ** 2
    truth[disk] = 0
    clean = np.where(truth == 1, mu[1], mu[0])
    noisy = np.clip(clean + rng.normal(0.0, noise, clean.shape), 0.0, 1.0)
    return truth, noisy


def scene_image(rng, height=338, width=600):
    """Photo-like rendered scene: sky gradient, disk, textured ground, noise."""
    yy, xx = np.mgrid[0:height, 0:width]
    img = 0.75 - 0.3 * yy / height
    disk = (yy - height * 0.25) ** 2 + (xx - width * 0.75) ** 2 < (height * 0.12) ** 2
    img[disk] = 0.95
    ground = yy > height * 0.65 + height * 0.05 * np.sin(xx / 40.0)
    img[ground] = 0.25 + 0.1 * np.sin(xx[ground] / 7.0) * np.sin(yy[ground] / 5.0)
    return np.clip(img + rng.normal(0.0, 0.03, img.shape), 0.0, 1.0)


def load_test_photo():
    """A real photograph if one is bundled nearby, else a rendered scene.

    Returns (image, is_real_photo).
    """
    try:
        import matplotlib.cbook as cbook
        from PIL import Image

        path = cbook.get_sample_data("grace_hopper.jpg", asfileobj=False)
        with Image.open(path) as im:
            rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
        return rgb.mean(axis=2) / 255.0, True
    except Exception:
        return scene_image(np.random.default_rng(2024)), False
