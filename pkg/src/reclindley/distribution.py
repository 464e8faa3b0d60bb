"""The recursive exponential-gamma mixture.

With weight ``p = (theta / (theta + 1)) ** n`` the density is

    f(x) = p * Exp(x; theta) + (1 - p) * Gamma(x; alpha, theta)

where ``theta`` is a rate. ``n`` is a fixed recursion depth, not a fitted
parameter; ``n = 1, alpha = 2`` gives the Lindley density and ``alpha = 1``
the exponential.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HazardOverflowError, NumericError
from .specfun import log_gamma, reg_upper_gamma

DEFAULT_DEPTH = 3

# exp(-700) is about 1e-304; past this the reliability is denormal or zero
_HAZARD_LIMIT = 700.0


@dataclass(frozen=True)
class RegParams:
    alpha: float
    theta: float
    n: int = DEFAULT_DEPTH

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not (math.isfinite(self.theta) and self.theta > 0):
            raise DomainError(f"theta must be positive, got {self.theta}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def weight(self):
        return weight(self)


@dataclass(frozen=True)
class MomentSummary:
    mean: float
    variance: float
    cv: float
    skewness: float
    kurtosis: float


def weight(params):
    """Mixing weight of the exponential component."""
    return (params.theta / (params.theta + 1.0)) ** params.n


def _scalar_or_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _out(values, scalar):
    return float(values) if scalar else values


def _log_gamma_kernel(params, x):
    """log of (theta x)^(alpha-1) / Gamma(alpha); requires x > 0."""
    return (params.alpha - 1.0) * np.log(params.theta * x) - log_gamma(params.alpha)


def _gamma_ratio(params, x):
    """(theta x)^(alpha-1) / Gamma(alpha) with the x -> 0 limits filled in."""
    with np.errstate(divide="ignore"):
        g = np.exp(_log_gamma_kernel(params, np.where(x > 0, x, 1.0)))
    if params.alpha == 1.0:
        return np.ones_like(x)
    zero = x == 0
    if zero.any():
        g = np.where(zero, 0.0 if params.alpha > 1 else np.inf, g)
    return g


def pdf(params, x):
    arr, scalar = _scalar_or_array(x)
    if np.any(~(arr > 0)):
        raise DomainError("pdf is defined for x > 0 only")
    p = weight(params)
    th = params.theta
    expo = th * np.exp(-th * arr)
    gam = np.exp(params.alpha * math.log(th) + (params.alpha - 1.0) * np.log(arr)
                 - th * arr - log_gamma(params.alpha))
    return _out(p * expo + (1.0 - p) * gam, scalar)


def logpdf(params, x):
    arr, scalar = _scalar_or_array(x)
    if np.any(~(arr > 0)):
        raise DomainError("pdf is defined for x > 0 only")
    p = weight(params)
    th = params.theta
    mix = np.logaddexp(math.log(p), math.log1p(-p) + _log_gamma_kernel(params, arr))
    return _out(math.log(th) - th * arr + mix, scalar)


def reliability(params, x):
    arr, scalar = _scalar_or_array(x)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError("reliability is defined for x >= 0")
    p = weight(params)
    tx = params.theta * arr
    return _out(p * np.exp(-tx) + (1.0 - p) * reg_upper_gamma(params.alpha, tx), scalar)


def cdf(params, x):
    arr, scalar = _scalar_or_array(x)
    return _out(1.0 - np.asarray(reliability(params, arr)), scalar)


def _scaled_reliability(params, arr):
    """R(x) * exp(theta x), i.e. p + (1 - p) Q(alpha, theta x) e^(theta x)."""
    tx = params.theta * arr
    if np.any(tx > _HAZARD_LIMIT):
        bad = float(np.max(arr))
        raise HazardOverflowError(
            f"reliability underflows at x={bad:g} (theta*x={params.theta * bad:g} > {_HAZARD_LIMIT:g})")
    r = np.asarray(reliability(params, arr))
    if np.any(r <= 0):
        raise HazardOverflowError("reliability underflowed to zero")
    return r * np.exp(tx)


def hazard(params, x):
    arr, scalar = _scalar_or_array(x)
    if np.any(~(arr > 0)):
        raise DomainError("hazard is defined for x > 0 only")
    if params.alpha == 1.0:
        if np.any(params.theta * arr > _HAZARD_LIMIT):
            _scaled_reliability(params, arr)
        return _out(np.full(arr.shape, params.theta), scalar)
    p = weight(params)
    num = p + (1.0 - p) * _gamma_ratio(params, arr)
    den = _scaled_reliability(params, arr)
    return _out(params.theta * num / den, scalar)


def hazard_derivative(params, x):
    """Analytic derivative of the hazard rate.

    With g = (theta x)^(alpha-1)/Gamma(alpha) and E = Q(alpha, theta x) e^(theta x),
    h = theta (p + (1-p) g) / (p + (1-p) E), g' = (alpha-1) g / x and
    E' = theta (E - g).
    """
    arr, scalar = _scalar_or_array(x)
    if np.any(~(arr > 0)):
        raise DomainError("hazard is defined for x > 0 only")
    if params.alpha == 1.0:
        _scaled_reliability(params, arr)
        return _out(np.zeros(arr.shape), scalar)
    p = weight(params)
    th = params.theta
    g = _gamma_ratio(params, arr)
    den = _scaled_reliability(params, arr)
    e = (den - p) / (1.0 - p)
    num = p + (1.0 - p) * g
    dnum = (1.0 - p) * (params.alpha - 1.0) * g / arr
    dden = (1.0 - p) * th * (e - g)
    return _out(th * (dnum * den - num * dden) / den**2, scalar)


def _rising(alpha, r):
    out = 1.0
    for j in range(r):
        out *= alpha + j
    return out


def raw_moment(params, r):
    if int(r) != r or r < 0:
        raise DomainError("moment order must be a non-negative integer")
    r = int(r)
    if r == 0:
        return 1.0
    p = weight(params)
    return (p * math.factorial(r) + (1.0 - p) * _rising(params.alpha, r)) / params.theta**r


def central_moment(params, k):
    if int(k) != k or k < 2:
        raise DomainError("central moment order must be an integer >= 2")
    k = int(k)
    mu = raw_moment(params, 1)
    return sum(math.comb(k, r) * raw_moment(params, r) * (-mu) ** (k - r) for r in range(k + 1))


def variance(params):
    return raw_moment(params, 2) - raw_moment(params, 1) ** 2


def moment_summary(params):
    mean = raw_moment(params, 1)
    var = variance(params)
    return MomentSummary(
        mean=mean,
        variance=var,
        cv=math.sqrt(var) / mean,
        skewness=central_moment(params, 3) / var**1.5,
        kurtosis=central_moment(params, 4) / var**2,
    )


def mgf(params, t):
    arr, scalar = _scalar_or_array(t)
    if np.any(arr >= params.theta):
        raise DomainError(f"mgf exists only for t < theta = {params.theta}")
    p = weight(params)
    base = 1.0 - arr / params.theta
    return _out(base**-1.0 * (p + (1.0 - p) * base ** -(params.alpha - 1.0)), scalar)


def cf(params, t):
    """Characteristic function; returns complex values."""
    arr = np.asarray(t, dtype=float)
    p = weight(params)
    base = 1.0 - 1j * arr / params.theta
    out = base**-1.0 * (p + (1.0 - p) * base ** -(params.alpha - 1.0))
    return complex(out) if arr.ndim == 0 else out


def quantile(params, u, tol=1e-10, maxiter=500):
    arr, scalar = _scalar_or_array(u)
    if np.any(~((arr > 0) & (arr < 1))):
        raise DomainError("quantile needs 0 < u < 1")
    out = np.array([_quantile_scalar(params, float(v), tol, maxiter) for v in arr.ravel()])
    return _out(out.reshape(arr.shape), scalar)


def _quantile_scalar(params, u, tol, maxiter):
    mean = raw_moment(params, 1)
    lo, hi = 0.0, mean + 20.0 * math.sqrt(variance(params))
    for _ in range(maxiter):
        if cdf(params, hi) >= u:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise NumericError("could not bracket quantile")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if cdf(params, mid) < u:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * max(1.0, hi):
            break
    else:
        raise NumericError("quantile bisection did not converge")
    flo, fhi = cdf(params, lo) - u, cdf(params, hi) - u
    x = hi if fhi == flo else lo - flo * (hi - lo) / (fhi - flo)
    if not lo <= x <= hi:
        x = 0.5 * (lo + hi)
    best = min((lo, hi, x), key=lambda c: abs(cdf(params, c) - u) if c > 0 else math.inf)
    if abs(cdf(params, best) - u) > tol:
        raise NumericError(f"quantile residual above {tol} at u={u}")
    return best


def hazard_shape(params, x_max=None, points=2000):
    """Classify the hazard as 'constant', 'decreasing', 'increasing', 'bathtub'
    or 'upside-down bathtub' from sign changes of its derivative on a grid."""
    if params.alpha == 1.0:
        return "constant"
    if x_max is None:
        x_max = 20.0 / params.theta
    xs = np.linspace(1e-3, x_max, points)
    d = np.asarray(hazard_derivative(params, xs))
    signs = np.sign(d[np.abs(d) > 1e-14 * np.max(np.abs(d))])
    changes = np.flatnonzero(np.diff(signs))
    if len(changes) == 0:
        return "increasing" if signs[0] > 0 else "decreasing"
    if len(changes) == 1:
        return "bathtub" if signs[0] < 0 else "upside-down bathtub"
    return "other"
