"""Goodness of fit: K-S statistic, AIC and the five-model comparison report."""

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .competitors import FAMILIES, comp_cdf, comp_fit
from .distribution import DEFAULT_DEPTH, cdf
from .errors import DataError, DomainError, ReclindleyError
from .estimator import as_observations, fit_mle

PROPOSED = "REG"

# Row labels of the published comparison table, matched by parameter count.
REFERENCE_ROW = {"REG": "proposed", "EXPGL": "[3]", "GL3": "[2]", "NGL": "[4]", "QL": "[5]"}


def ks_statistic(cdf_values):
    """One-sample Kolmogorov-Smirnov distance from cdf values at the sorted sample."""
    f = np.asarray(cdf_values, dtype=float)
    if f.size == 0:
        raise DataError("K-S statistic needs at least one value")
    if np.any(np.isnan(f)) or np.any((f < 0) | (f > 1)):
        raise DomainError("cdf values must lie in [0, 1]")
    m = f.size
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - f), np.max(f - (i - 1) / m)))


def aic(k, log_lik):
    if int(k) != k or k < 1:
        raise DomainError("k must be a positive integer")
    return 2.0 * k - 2.0 * log_lik


@dataclass
class GofRow:
    family: str
    table_row: str
    k: int
    estimates: dict
    neg_log_lik: float
    aic: float
    ks: float
    converged: bool
    gradient_norm: float
    messages: list = field(default_factory=list)


@dataclass
class GofReport:
    dataset: str
    n: int
    size: int
    rows: list
    best_by_aic: str
    best_by_ks: str

    @property
    def proposed(self):
        return next(r for r in self.rows if r.family == PROPOSED)

    def row(self, family):
        return next(r for r in self.rows if r.family == family)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        rows = [GofRow(**r) for r in d["rows"]]
        return cls(d["dataset"], d["n"], d["size"], rows, d["best_by_aic"], d["best_by_ks"])

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, allow_nan=True)

    def to_table(self):
        header = ["model", "estimates", "-LogL", "AIC", "K-S"]
        lines = []
        for r in self.rows:
            est = ", ".join(f"{k}={v:.6g}" for k, v in r.estimates.items())
            flag = "" if r.converged else " (not converged)"
            lines.append([f"{r.family}{flag}", est, f"{r.neg_log_lik:.6f}", f"{r.aic:.6f}", f"{r.ks:.6f}"])
        widths = [max(len(header[j]), *(len(l[j]) for l in lines)) for j in range(5)]
        fmt = "  ".join(f"{{:<{w}}}" if j < 2 else f"{{:>{w}}}" for j, w in enumerate(widths))
        out = [f"dataset: {self.dataset} ({self.size} observations, depth n={self.n})", fmt.format(*header)]
        out += [fmt.format(*l) for l in lines]
        out.append(f"best by AIC: {self.best_by_aic}; best by K-S: {self.best_by_ks}")
        return "\n".join(out)


def _row_from_fit(fit, x):
    xs = np.sort(x)
    if fit.params is None or not math.isfinite(fit.neg_log_lik):
        return GofRow(fit.family, REFERENCE_ROW[fit.family], fit.n_free, {}, math.inf, math.inf,
                      math.inf, False, fit.gradient_norm, list(fit.messages))
    if fit.family == PROPOSED:
        f = cdf(fit.params, xs)
    else:
        f = comp_cdf(fit.params, xs)
    return GofRow(
        family=fit.family,
        table_row=REFERENCE_ROW[fit.family],
        k=fit.n_free,
        estimates=fit.estimates,
        neg_log_lik=fit.neg_log_lik,
        aic=aic(fit.n_free, -fit.neg_log_lik),
        ks=ks_statistic(f),
        converged=fit.converged,
        gradient_norm=fit.gradient_norm,
        messages=list(fit.messages),
    )


def _pick_best(rows, key):
    # only converged fits compete; ties go to the model with fewer parameters
    pool = [r for r in rows if r.converged] or rows
    return min(pool, key=lambda r: (getattr(r, key), r.k)).family


def fit_model(family, data, n=DEFAULT_DEPTH):
    if family.upper() == PROPOSED:
        return fit_mle(data, n=n)
    return comp_fit(family, data)


def build_report(data, n=DEFAULT_DEPTH, families=(PROPOSED,) + FAMILIES):
    x = as_observations(data)
    label = getattr(data, "label", "data")
    rows = []
    for fam in families:
        try:
            fit = fit_model(fam, x, n=n)
        except ReclindleyError as exc:
            rows.append(GofRow(fam, REFERENCE_ROW[fam], 3 if fam == "GL3" else 2, {}, math.inf,
                               math.inf, math.inf, False, math.inf, [str(exc)]))
            continue
        rows.append(_row_from_fit(fit, x))
    return GofReport(label, n, int(x.size), rows, _pick_best(rows, "aic"), _pick_best(rows, "ks"))
