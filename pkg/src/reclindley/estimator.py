"""Maximum likelihood for (alpha, theta) at a fixed recursion depth n."""

import math
from dataclasses import dataclass, field

import numpy as np

from .distribution import DEFAULT_DEPTH, RegParams, weight
from .errors import DataError, DegenerateDataError, NumericError
from .optim import jacobian_of, maximize
from .specfun import digamma, log_gamma

GRAD_TOL = 1e-6


@dataclass
class FitResult:
    family: str
    params: object
    neg_log_lik: float
    gradient_norm: float
    iterations: int
    converged: bool
    n_free: int
    messages: list = field(default_factory=list)
    std_errors: dict = field(default_factory=dict)

    @property
    def log_lik(self):
        return -self.neg_log_lik

    @property
    def estimates(self):
        if isinstance(self.params, RegParams):
            return {"alpha": self.params.alpha, "theta": self.params.theta}
        return dict(self.params.values)


def as_observations(data):
    x = np.asarray(getattr(data, "values", data), dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise DataError("dataset must be a non-empty sequence")
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise DataError("all observations must be positive and finite")
    return x


def _posterior_weight(params, x):
    """Share of the gamma component in each observation's density, and log g."""
    p = weight(params)
    log_g = (params.alpha - 1.0) * np.log(params.theta * x) - log_gamma(params.alpha)
    logit = math.log1p(-p) - math.log(p) + log_g
    return 1.0 / (1.0 + np.exp(-logit)), log_g


def log_likelihood(params, data):
    x = as_observations(data)
    p = weight(params)
    th = params.theta
    log_g = (params.alpha - 1.0) * np.log(th * x) - log_gamma(params.alpha)
    mix = np.logaddexp(math.log(p), math.log1p(-p) + log_g)
    value = x.size * math.log(th) - th * x.sum() + mix.sum()
    if not math.isfinite(value):
        raise NumericError("log-likelihood is not finite")
    return float(value)


def score(params, data):
    """Gradient ``(d/d alpha, d/d theta)`` of the log-likelihood.

    The theta component includes dp/dtheta = n p / (theta (theta + 1)).
    """
    x = as_observations(data)
    a, th, n = params.alpha, params.theta, params.n
    p = weight(params)
    w, _ = _posterior_weight(params, x)
    d_alpha = np.sum(w * (np.log(th * x) - digamma(a)))
    dp = n * p / (th * (th + 1.0))
    # (1 - g) / (p + (1-p) g) written through w to stay finite
    one_minus_g = (1.0 - w) / p - w / (1.0 - p)
    d_theta = (x.size / th - x.sum()
               + np.sum(dp * one_minus_g + w * (a - 1.0) / th))
    return float(d_alpha), float(d_theta)


def method_of_moments(x):
    mean = float(np.mean(x))
    var = float(np.var(x))
    if var <= 0 or not math.isfinite(var):
        raise DegenerateDataError("observations have zero variance")
    return mean * mean / var, mean / var


def fit_mle(data, n=DEFAULT_DEPTH, init=None, tol=GRAD_TOL, maxiter=200):
    x = as_observations(data)
    if x.size < 3:
        raise DataError("need at least 3 observations")
    if init is None:
        init = method_of_moments(x)
    elif np.ptp(x) == 0:
        raise DegenerateDataError("observations have zero variance")

    def unpack(z):
        return RegParams(math.exp(z[0]), math.exp(z[1]), n)

    def objective(z):
        return log_likelihood(unpack(z), x)

    def grad(z):
        prm = unpack(z)
        da, dt = score(prm, x)
        return np.array([da * prm.alpha, dt * prm.theta])

    def stationarity(z):
        try:
            return math.hypot(*score(unpack(z), x))
        except (ValueError, ArithmeticError):
            return math.inf

    z0 = np.log(np.asarray(init, dtype=float))
    res = maximize(objective, grad, z0, stationarity, tol=tol, maxiter=maxiter)
    params = unpack(res.z)
    fit = FitResult(
        family="REG", params=params, neg_log_lik=-res.value,
        gradient_norm=res.grad_norm, iterations=res.iterations,
        converged=res.converged, n_free=2, messages=list(res.messages),
    )
    fit.std_errors = _standard_errors(params, x)
    return fit


def _standard_errors(params, x):
    """Observed-information standard errors (diagnostic only)."""
    n = params.n

    def nat_grad(v):
        return np.array(score(RegParams(v[0], v[1], n), x))

    try:
        hess = jacobian_of(nat_grad, np.array([params.alpha, params.theta]), rel_step=1e-6)
        cov = np.linalg.inv(-hess)
    except (np.linalg.LinAlgError, ValueError, ArithmeticError):
        return {}
    diag = np.diag(cov)
    if np.any(diag <= 0):
        return {}
    return {"alpha": float(math.sqrt(diag[0])), "theta": float(math.sqrt(diag[1]))}
