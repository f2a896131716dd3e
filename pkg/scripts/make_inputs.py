#!/usr/bin/env python3
"""Generate demo input images (binary PGM) for the segmentation pipeline.

Writes two deterministic images into the given directory:
  synthetic.pgm  -- two-level image (0.3 / 0.7) with Gaussian noise
  scene.pgm      -- photo-like rendered scene (sky, disk, textured ground)
"""

import argparse
import os

import numpy as np

from hmrfseg import save_image


def two_class(rng, height, width):
    truth = np.zeros((height, width))
    truth[:, width // 2 :] = 1
    yy, xx = np.mgrid[0:height, 0:width]
    disk = (yy - height // 3) ** 2 + (xx - 3 * width // 4) ** 2 < (height // 8) ** 2
    truth[disk] = 0
    clean = np.where(truth == 1, 0.7, 0.3)
    return np.clip(clean + rng.normal(0.0, 0.05, clean.shape), 0.0, 1.0)


def scene(rng, height, width):
    yy, xx = np.mgrid[0:height, 0:width]
    img = 0.75 - 0.3 * yy / height
    disk = (yy - height * 0.25) ** 2 + (xx - width * 0.75) ** 2 < (height * 0.12) ** 2
    img[disk] = 0.95
    ground = yy > height * 0.65 + height * 0.05 * np.sin(xx / 40.0)
    img[ground] = 0.25 + 0.1 * np.sin(xx[ground] / 7.0) * np.sin(yy[ground] / 5.0)
    return np.clip(img + rng.normal(0.0, 0.03, img.shape), 0.0, 1.0)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="data", help="where to write the images")
    ap.add_argument("--height", type=int, default=338)
    ap.add_argument("--width", type=int, default=600)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    os.makedirs(args.out_dir, exist_ok=True)
    for name, img in [
        ("synthetic.pgm", two_class(rng, args.height, args.width)),
        ("scene.pgm", scene(rng, args.height, args.width)),
    ]:
        path = os.path.join(args.out_dir, name)
        save_image(img, path)
        print(f"wrote {path} ({args.width}x{args.height})")


if __name__ == "__main__":
    main()
