"""Distribution of the sum of m i.i.d. draws as a binomial mixture of gammas.

Component k (k = 0..m) has weight C(m, k) p^(m-k) (1-p)^k and shape
m + k (alpha - 1), all sharing the rate theta.
"""

import math
from dataclasses import dataclass

import numpy as np

from .distribution import weight
from .errors import DomainError
from .specfun import log_gamma, reg_lower_gamma

MAX_TERMS = 10_000


@dataclass(frozen=True)
class SumDistSpec:
    m: int
    weights: np.ndarray
    shapes: np.ndarray
    rate: float

    @property
    def components(self):
        return list(zip(self.weights.tolist(), self.shapes.tolist(), [self.rate] * len(self.weights)))

    def weight_total(self):
        return float(np.sum(self.weights))


def sum_spec(params, m):
    if int(m) != m or m < 1:
        raise DomainError("m must be a positive integer")
    m = int(m)
    if m > MAX_TERMS:
        raise DomainError(f"m is capped at {MAX_TERMS}")
    p = weight(params)
    k = np.arange(m + 1, dtype=float)
    log_binom = log_gamma(m + 1.0) - log_gamma(k + 1.0) - log_gamma(m - k + 1.0)
    log_w = log_binom + (m - k) * math.log(p) + k * math.log1p(-p)
    shapes = m + k * (params.alpha - 1.0)
    return SumDistSpec(m, np.exp(log_w), shapes, params.theta)


def sum_pdf(spec, s):
    arr = np.asarray(s, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("sum density is defined for s > 0")
    flat = arr.reshape(-1, 1)
    sh = spec.shapes[None, :]
    log_dens = (sh * math.log(spec.rate) + (sh - 1.0) * np.log(flat) - spec.rate * flat
                - log_gamma(spec.shapes)[None, :])
    out = np.exp(log_dens) @ spec.weights
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def sum_cdf(spec, s):
    arr = np.asarray(s, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError("sum cdf is defined for s >= 0")
    flat = arr.reshape(-1, 1)
    p = reg_lower_gamma(spec.shapes[None, :], spec.rate * flat)
    out = p @ spec.weights
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def sum_mgf(spec, t):
    if t >= spec.rate:
        raise DomainError("mgf exists only for t < rate")
    base = 1.0 - t / spec.rate
    return float(np.sum(spec.weights * base ** (-spec.shapes)))
