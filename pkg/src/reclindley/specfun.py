"""Log-gamma, digamma and the regularized incomplete gamma functions.

``log_gamma`` defers to the C library ``lgamma`` (also available inside numba
kernels). The incomplete gamma uses the power series below ``x = a + 1`` and a
modified Lentz continued fraction above it; digamma lifts its argument past 6
with the recurrence and finishes with the asymptotic series.
"""

import math

import numpy as np

from ._accel import USE_NUMBA, kernel
from .errors import DomainError

_EPS = 1e-16
_FPMIN = 1e-300
_MAXIT = 100_000


@kernel
def _digamma_scalar(a):
    acc = 0.0
    while a < 6.0:
        acc -= 1.0 / a
        a += 1.0
    inv2 = 1.0 / (a * a)
    tail = inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (
        1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12.0))))))
    return acc + math.log(a) - 0.5 / a - tail


@kernel
def _gamma_pq_scalar(a, x):
    """Return ``(P(a, x), Q(a, x))``."""
    if x <= 0.0:
        return 0.0, 1.0
    if math.isinf(x):
        return 1.0, 0.0
    log_prefix = a * math.log(x) - x - math.lgamma(a)
    if x < a + 1.0:
        ap = a
        term = 1.0 / a
        total = term
        for _ in range(_MAXIT):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * _EPS:
                break
        p = total * math.exp(log_prefix)
        if p > 1.0:
            p = 1.0
        return p, 1.0 - p
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAXIT):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    q = math.exp(log_prefix) * h
    return 1.0 - q, q


@kernel
def _gamma_q_loop(a, x, out):
    for i in range(a.size):
        out[i] = _gamma_pq_scalar(a[i], x[i])[1]


@kernel
def _gamma_p_loop(a, x, out):
    for i in range(a.size):
        out[i] = _gamma_pq_scalar(a[i], x[i])[0]


@kernel
def _digamma_loop(a, out):
    for i in range(a.size):
        out[i] = _digamma_scalar(a[i])


def _digamma_numpy(a):
    a = a.copy()
    acc = np.zeros_like(a)
    low = a < 6.0
    while low.any():
        acc[low] -= 1.0 / a[low]
        a[low] += 1.0
        low = a < 6.0
    inv2 = 1.0 / (a * a)
    tail = inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (
        1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12.0))))))
    return acc + np.log(a) - 0.5 / a - tail


def _gamma_pq_numpy(a, x):
    p = np.zeros_like(x)
    q = np.ones_like(x)
    pos = (x > 0) & np.isfinite(x)
    series = pos & (x < a + 1.0)
    frac = pos & ~series

    if series.any():
        aa, xx = a[series], x[series]
        ap = aa.copy()
        term = 1.0 / aa
        total = term.copy()
        active = np.ones(aa.shape, dtype=bool)
        for _ in range(_MAXIT):
            ap = np.where(active, ap + 1.0, ap)
            term = np.where(active, term * xx / ap, term)
            total = np.where(active, total + term, total)
            active &= ~(np.abs(term) < np.abs(total) * _EPS)
            if not active.any():
                break
        ps = np.minimum(total * np.exp(aa * np.log(xx) - xx - _lgamma_np(aa)), 1.0)
        p[series] = ps
        q[series] = 1.0 - ps

    if frac.any():
        aa, xx = a[frac], x[frac]
        b = xx + 1.0 - aa
        c = np.full(aa.shape, 1.0 / _FPMIN)
        d = 1.0 / b
        h = d.copy()
        active = np.ones(aa.shape, dtype=bool)
        for i in range(1, _MAXIT):
            an = -i * (i - aa)
            b = b + 2.0
            dn = an * d + b
            dn = np.where(np.abs(dn) < _FPMIN, _FPMIN, dn)
            cn = b + an / c
            cn = np.where(np.abs(cn) < _FPMIN, _FPMIN, cn)
            dn = 1.0 / dn
            delta = dn * cn
            d = np.where(active, dn, d)
            c = np.where(active, cn, c)
            h = np.where(active, h * delta, h)
            active &= ~(np.abs(delta - 1.0) < _EPS)
            if not active.any():
                break
        qs = np.exp(aa * np.log(xx) - xx - _lgamma_np(aa)) * h
        q[frac] = qs
        p[frac] = 1.0 - qs
    return p, q


_lgamma_np = np.vectorize(math.lgamma, otypes=[float])


def _check_positive(name, a):
    if not np.all(np.isfinite(a)) or np.any(a <= 0):
        raise DomainError(f"{name} must be positive and finite")


def _finish(out, scalar):
    return float(out) if scalar else out


def log_gamma(a):
    """Natural log of the gamma function for ``a > 0``."""
    arr = np.asarray(a, dtype=float)
    _check_positive("a", arr)
    if arr.ndim == 0:
        return math.lgamma(float(arr))
    return _lgamma_np(arr)


def digamma(a):
    """Logarithmic derivative of the gamma function for ``a > 0``."""
    arr = np.asarray(a, dtype=float)
    _check_positive("a", arr)
    flat = np.ascontiguousarray(arr.ravel())
    if USE_NUMBA:
        out = np.empty_like(flat)
        _digamma_loop(flat, out)
    else:
        out = _digamma_numpy(flat)
    return _finish(out.reshape(arr.shape), arr.ndim == 0)


def _incomplete(a, x, which):
    aa = np.asarray(a, dtype=float)
    xx = np.asarray(x, dtype=float)
    _check_positive("a", aa)
    if np.any(np.isnan(xx)) or np.any(xx < 0):
        raise DomainError("x must be non-negative")
    aa, xx = np.broadcast_arrays(aa, xx)
    shape = aa.shape
    fa = np.ascontiguousarray(aa.ravel())
    fx = np.ascontiguousarray(xx.ravel())
    if USE_NUMBA:
        out = np.empty_like(fx)
        (_gamma_q_loop if which == "q" else _gamma_p_loop)(fa, fx, out)
    else:
        p, q = _gamma_pq_numpy(fa, fx)
        out = q if which == "q" else p
    if not USE_NUMBA:
        out[np.isinf(fx)] = 0.0 if which == "q" else 1.0
    return _finish(out.reshape(shape), len(shape) == 0)


def reg_upper_gamma(a, x):
    """Regularized upper incomplete gamma ``Q(a, x) = Gamma(a, x) / Gamma(a)``."""
    return _incomplete(a, x, "q")


def reg_lower_gamma(a, x):
    """Regularized lower incomplete gamma ``P(a, x) = 1 - Q(a, x)``."""
    return _incomplete(a, x, "p")
