"""Recursive exponential-gamma mixture lifetime distribution."""

from .corpus import Dataset, load, load_builtin, load_file
from .distribution import (
    DEFAULT_DEPTH,
    MomentSummary,
    RegParams,
    cdf,
    central_moment,
    cf,
    hazard,
    hazard_derivative,
    mgf,
    moment_summary,
    pdf,
    quantile,
    raw_moment,
    reliability,
    weight,
)
from .estimator import FitResult, fit_mle, log_likelihood, score
from .rng import RngState
from .sampler import sample_many, sample_one

__version__ = "0.1.0"
