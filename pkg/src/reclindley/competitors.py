"""Four generalised-Lindley baselines, identified by the structure of their density.

GL3    theta^2 (theta x)^(alpha-1) (alpha + gamma x) e^(-theta x) / ((gamma + theta) Gamma(alpha + 1))
EXPGL  exponentiated Lindley, cdf (1 - (1 + lam + lam x) e^(-lam x) / (1 + lam))^alpha
NGL    theta^alpha x^(alpha-2) (x + alpha - 1) e^(-theta x) / ((theta + 1) Gamma(alpha)), alpha >= 1
QL     theta (alpha + theta x) e^(-theta x) / (alpha + 1), alpha > -1

GL3, NGL and QL are two-component gamma mixtures, so their cdfs go through the
regularized incomplete gamma.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, DegenerateDataError, DomainError
from .estimator import GRAD_TOL, FitResult, as_observations
from .optim import maximize, numeric_gradient
from .specfun import log_gamma, reg_lower_gamma

FAMILIES = ("GL3", "EXPGL", "NGL", "QL")

FORMULAS = {
    "EXPGL": "alpha*lam^2*(1+x)*(1-(1+lam+lam*x)/(1+lam)*exp(-lam*x))^(alpha-1)*exp(-lam*x)/(1+lam)",
    "GL3": "theta^2*(theta*x)^(alpha-1)*(alpha+gamma*x)*exp(-theta*x)/((gamma+theta)*Gamma(alpha+1))",
    "NGL": "theta^alpha*x^(alpha-2)*(x+alpha-1)*exp(-theta*x)/((theta+1)*Gamma(alpha))",
    "QL": "theta*(alpha+theta*x)*exp(-theta*x)/(alpha+1)",
}

PARAM_NAMES = {
    "GL3": ("alpha", "theta", "gamma"),
    "EXPGL": ("alpha", "lam"),
    "NGL": ("alpha", "theta"),
    "QL": ("alpha", "theta"),
}


@dataclass(frozen=True)
class CompetitorModel:
    family: str
    values: tuple  # ((name, value), ...) in PARAM_NAMES order

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        names = tuple(k for k, _ in self.values)
        if names != PARAM_NAMES[self.family]:
            raise DomainError(f"{self.family} expects parameters {PARAM_NAMES[self.family]}")
        _check_domain(self.family, dict(self.values))

    @classmethod
    def make(cls, family, **kw):
        family = family.upper()
        if family not in FAMILIES:
            raise DomainError(f"unknown family {family!r}")
        missing = set(PARAM_NAMES[family]) ^ set(kw)
        if missing:
            raise DomainError(f"{family} expects parameters {PARAM_NAMES[family]}")
        return cls(family, tuple((k, float(kw[k])) for k in PARAM_NAMES[family]))

    def __getitem__(self, key):
        return dict(self.values)[key]

    @property
    def n_free(self):
        return len(self.values)

    @property
    def formula(self):
        return FORMULAS[self.family]


def _check_domain(family, p):
    if any(not math.isfinite(v) for v in p.values()):
        raise DomainError("parameters must be finite")
    ok = {
        "EXPGL": p.get("alpha", 0) > 0 and p.get("lam", 0) > 0,
        # gamma = 0 is the boundary where the density collapses to Gamma(alpha, theta)
        "GL3": p.get("alpha", 0) > 0 and p.get("theta", 0) > 0 and p.get("gamma", -1) >= 0,
        "NGL": p.get("alpha", 0) >= 1 and p.get("theta", 0) > 0,
        "QL": p.get("alpha", -2) > -1 and p.get("theta", 0) > 0,
    }[family]
    if not ok:
        raise DomainError(f"{family} parameters out of domain: {p}")


def _gamma_logpdf(x, shape, rate):
    return shape * math.log(rate) + (shape - 1.0) * np.log(x) - rate * x - log_gamma(shape)


def comp_logpdf(model, x):
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("density is defined for x > 0")
    p = dict(model.values)
    f = model.family
    if f == "EXPGL":
        a, lam = p["alpha"], p["lam"]
        base = -np.expm1(-lam * arr) - lam * arr * np.exp(-lam * arr) / (1.0 + lam)
        out = (math.log(a) + 2 * math.log(lam) + np.log1p(arr) - lam * arr - math.log1p(lam)
               + (a - 1.0) * np.log(base))
    elif f == "GL3":
        a, th, g = p["alpha"], p["theta"], p["gamma"]
        out = (2 * math.log(th) + (a - 1.0) * np.log(th * arr) + np.log(a + g * arr) - th * arr
               - math.log(g + th) - log_gamma(a + 1.0))
    elif f == "NGL":
        a, th = p["alpha"], p["theta"]
        out = (a * math.log(th) + (a - 2.0) * np.log(arr) + np.log(arr + a - 1.0) - th * arr
               - math.log1p(th) - log_gamma(a))
    else:
        a, th = p["alpha"], p["theta"]
        with np.errstate(invalid="ignore", divide="ignore"):
            out = math.log(th) + np.log(a + th * arr) - th * arr - math.log1p(a)
    return float(out) if arr.ndim == 0 else out


def comp_pdf(model, x):
    out = np.exp(comp_logpdf(model, x))
    return float(out) if np.ndim(out) == 0 else out


def comp_cdf(model, x):
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError("cdf is defined for x >= 0")
    p = dict(model.values)
    f = model.family
    if f == "EXPGL":
        a, lam = p["alpha"], p["lam"]
        base = -np.expm1(-lam * arr) - lam * arr * np.exp(-lam * arr) / (1.0 + lam)
        out = np.clip(base, 0.0, 1.0) ** a
    elif f == "GL3":
        a, th, g = p["alpha"], p["theta"], p["gamma"]
        out = (th * reg_lower_gamma(a, th * arr) + g * reg_lower_gamma(a + 1.0, th * arr)) / (g + th)
    elif f == "NGL":
        a, th = p["alpha"], p["theta"]
        # at alpha = 1 the second component is the shape -> 0 limit, a unit step at the origin
        low = reg_lower_gamma(a - 1.0, th * arr) if a > 1 else np.where(arr > 0, 1.0, 0.0)
        out = (reg_lower_gamma(a, th * arr) + th * low) / (1.0 + th)
    else:
        a, th = p["alpha"], p["theta"]
        out = -np.expm1(-th * arr) - th * arr * np.exp(-th * arr) / (a + 1.0)
    out = np.asarray(out, dtype=float)
    return float(out) if arr.ndim == 0 else out


# |log-parameter| beyond this (factor ~3e6) means the fit ran to an edge of the domain
_BOUNDARY_Z = 15.0


# Each family is optimised in an unconstrained vector z.
def _unpack(family, z):
    e = np.exp(z)
    if family == "GL3":
        return CompetitorModel.make("GL3", alpha=e[0], theta=e[1], gamma=e[2])
    if family == "EXPGL":
        return CompetitorModel.make("EXPGL", alpha=e[0], lam=e[1])
    if family == "NGL":
        return CompetitorModel.make("NGL", alpha=1.0 + e[0], theta=e[1])
    return CompetitorModel.make("QL", alpha=e[0], theta=e[1])


def _natural(model):
    return np.array([v for _, v in model.values])


def _starts(family, x):
    mean = float(np.mean(x))
    var = float(np.var(x))
    a_mom, t_mom = mean * mean / var, mean / var
    lindley = (-(mean - 1.0) + math.sqrt((mean - 1.0) ** 2 + 8.0 * mean)) / (2.0 * mean)
    if family == "GL3":
        return [np.log([a_mom, t_mom, t_mom]), np.log([max(a_mom - 1.0, 0.1), t_mom, 10.0 * t_mom]),
                np.log([a_mom, t_mom, 0.01 * t_mom])]
    if family == "EXPGL":
        return [np.log([1.0, lindley]), np.log([a_mom, t_mom]), np.log([a_mom ** 2, 2.0 * t_mom])]
    if family == "NGL":
        return [np.log([max(a_mom - 1.0, 0.05), t_mom]), np.log([1.0, 2.0 / mean])]
    return [np.log([1.0, 1.5 / mean]), np.log([0.1, 2.0 / mean]), np.log([10.0, 1.0 / mean])]


def comp_log_likelihood(model, data):
    x = as_observations(data)
    value = float(np.sum(comp_logpdf(model, x)))
    return value if math.isfinite(value) else -math.inf


def comp_fit(family, data, tol=GRAD_TOL, maxiter=200):
    """Maximum likelihood with numeric gradients; keeps the best of a few starts."""
    family = family.upper()
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    x = as_observations(data)
    if x.size < 2:
        raise DataError("need at least 2 observations")
    if np.ptp(x) == 0:
        raise DegenerateDataError("observations have zero variance")

    def objective(z):
        return comp_log_likelihood(_unpack(family, z), x)

    def grad(z):
        return numeric_gradient(objective, z)

    def stationarity(z):
        model = _unpack(family, z)
        k = len(model.values)

        def nat(v):
            try:
                return comp_log_likelihood(CompetitorModel(family, tuple(
                    (name, val) for (name, _), val in zip(model.values, v))), x)
            except DomainError:
                return -math.inf

        v0 = _natural(model)
        g = np.empty(k)
        for i in range(k):
            h = 1e-6 * max(abs(v0[i]), 1e-3)
            e = np.zeros(k)
            e[i] = h
            g[i] = (nat(v0 + e) - nat(v0 - e)) / (2 * h)
        return float(np.linalg.norm(g)) if np.all(np.isfinite(g)) else math.inf

    best = None
    for z0 in _starts(family, x):
        res = maximize(objective, grad, z0, stationarity, tol=tol, maxiter=maxiter)
        if not np.isfinite(res.value):
            continue
        if best is None or (res.converged, res.value) > (best.converged, best.value):
            best = res
    if best is None:
        return FitResult(family=family, params=None, neg_log_lik=math.inf, gradient_norm=math.inf,
                         iterations=0, converged=False, n_free=len(PARAM_NAMES[family]),
                         messages=["no start produced a finite likelihood"])
    model = _unpack(family, best.z)
    messages = list(best.messages)
    if np.any(np.abs(best.z) > _BOUNDARY_Z):
        messages.append("estimate drifted to the parameter boundary")
    return FitResult(family=family, params=model, neg_log_lik=-best.value,
                     gradient_norm=best.grad_norm, iterations=best.iterations,
                     converged=best.converged, n_free=model.n_free, messages=messages)
