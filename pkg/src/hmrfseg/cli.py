"""Command-line entry point for the segmentation pipeline."""

from __future__ import annotations

import argparse

from .pipeline import PipelineConfig, run_pipeline


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hmrfseg",
        description="Segment a grayscale image with an HMRF model: "
        "Gaussian blur, optional edge map, k-means init, then EM with ICM MAP labeling.",
    )
    p.add_argument("--input", required=True, help="input image (binary PGM or PNG)")
    p.add_argument("--k", type=int, default=2, help="number of classes (default 2)")
    p.add_argument("--em-iters", type=int, default=10, help="EM iterations (default 10)")
    p.add_argument("--map-iters", type=int, default=10, help="ICM sweeps per MAP step (default 10)")
    p.add_argument("--blur-sigma", type=float, default=3.0, help="observation blur sigma (default 3)")
    p.add_argument(
        "--edge",
        default="canny",
        metavar="canny|none|file:<path>",
        help="edge map source (default canny)",
    )
    p.add_argument("--canny-sigma", type=float, default=1.0, help="Canny smoothing sigma (default 1)")
    p.add_argument("--canny-low", type=float, default=0.1, help="Canny low threshold fraction (default 0.1)")
    p.add_argument("--canny-high", type=float, default=0.3, help="Canny high threshold fraction (default 0.3)")
    p.add_argument(
        "--icm-schedule",
        choices=["sequential", "synchronous"],
        default="sequential",
        help="ICM update schedule (default sequential)",
    )
    p.add_argument(
        "--edge-literal",
        action="store_true",
        help="mask only the neighbor side of edge pairs in ICM updates",
    )
    p.add_argument(
        "--kmeans-on-original",
        action="store_true",
        help="run k-means on the original instead of the blurred image",
    )
    p.add_argument("--out-dir", default="out", help="output directory (default ./out)")
    p.add_argument("--seed", type=int, default=0, help="reserved for randomized initialization")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = PipelineConfig(
        input_path=args.input,
        out_dir=args.out_dir,
        k=args.k,
        em_iters=args.em_iters,
        map_iters=args.map_iters,
        blur_sigma=args.blur_sigma,
        edge_mode=args.edge,
        canny_sigma=args.canny_sigma,
        canny_low=args.canny_low,
        canny_high=args.canny_high,
        icm_schedule=args.icm_schedule,
        edge_literal=args.edge_literal,
        kmeans_on_original=args.kmeans_on_original,
        seed=args.seed,
    )
    return run_pipeline(cfg)


if __name__ == "__main__":
    raise SystemExit(main())
