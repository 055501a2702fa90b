"""Distance distributions for random points in and between unit hexagons."""
from .distributions import (
    HEX_ADJACENT_MIXTURE,
    HEX_INTERIOR_MIXTURE,
    RECURSION_MIXTURE,
    DistanceKind,
    Mixture,
    PiecewisePdf,
    cdf_eval,
    mixture_pdf,
    pdf_eval,
    scaled_cdf,
    scaled_pdf,
    support,
)
from .geometry import canonical_placement, make_rng, min_max_distance, sample_distances
from .moments import MomentReport, closed_mean_hi, moment_report, raw_moment, variance
from .polyfit import PolyFitReport, eval_poly, fit

__version__ = "0.1.0"

__all__ = [
    "HEX_ADJACENT_MIXTURE",
    "HEX_INTERIOR_MIXTURE",
    "RECURSION_MIXTURE",
    "DistanceKind",
    "Mixture",
    "PiecewisePdf",
    "cdf_eval",
    "mixture_pdf",
    "pdf_eval",
    "scaled_cdf",
    "scaled_pdf",
    "support",
    "canonical_placement",
    "make_rng",
    "min_max_distance",
    "sample_distances",
    "MomentReport",
    "closed_mean_hi",
    "moment_report",
    "raw_moment",
    "variance",
    "PolyFitReport",
    "eval_poly",
    "fit",
]
