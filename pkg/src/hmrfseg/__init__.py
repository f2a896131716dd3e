"""Hidden Markov random field image segmentation.

EM-fitted Gaussian class parameters over a Potts label prior, with
ICM-based MAP labeling, optional edge-preserving coupling, and the
preprocessing pieces (Gaussian blur, Canny edges, k-means init) needed to
run the whole pipeline on a grayscale image.
"""

from .edges import canny_edges, load_edge_map, save_edge_map
from .em import (
    EmConfig,
    EnergyTrace,
    TraceEntry,
    class_posterior,
    gaussian_pdf,
    hmrf_em,
    neighborhood_label_prior,
    update_parameters,
)
from .image import (
    GaussianKernel,
    gaussian_blur,
    gaussian_kernel,
    load_image,
    mirror_expand,
    mirror_shrink,
    save_image,
    save_label_image,
)
from .kmeans import SIGMA_FLOOR, ClassParams, kmeans_init
from .mrf import (
    EnergyBreakdown,
    IcmConfig,
    clique_potential,
    icm_map,
    likelihood_energy_pixel,
    prior_energy,
    total_posterior_energy,
)
from .pipeline import PipelineConfig, run_pipeline

__all__ = [
    "canny_edges",
    "load_edge_map",
    "save_edge_map",
    "EmConfig",
    "EnergyTrace",
    "TraceEntry",
    "class_posterior",
    "gaussian_pdf",
    "hmrf_em",
    "neighborhood_label_prior",
    "update_parameters",
    "GaussianKernel",
    "gaussian_blur",
    "gaussian_kernel",
    "load_image",
    "mirror_expand",
    "mirror_shrink",
    "save_image",
    "save_label_image",
    "SIGMA_FLOOR",
    "ClassParams",
    "kmeans_init",
    "EnergyBreakdown",
    "IcmConfig",
    "clique_potential",
    "icm_map",
    "likelihood_energy_pixel",
    "prior_energy",
    "total_posterior_energy",
    "PipelineConfig",
    "run_pipeline",
]

__version__ = "0.1.0"
