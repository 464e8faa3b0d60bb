"""Random variates from the exponential-gamma mixture.

Each draw takes one uniform ``u``; ``u <= p`` selects the exponential branch.
The gamma branch sums ``alpha`` exponential logs when ``alpha`` is a small
integer and otherwise uses the Marsaglia-Tsang squeeze (with the
``U ** (1/alpha)`` boost for ``alpha < 1``).
"""

import math

import numpy as np

from ._accel import kernel
from .distribution import weight
from .errors import DomainError
from .rng import next_double, next_normal, next_open_closed

# integer shapes up to this size use the sum of logs
_MAX_LOG_SUM_SHAPE = 16


@kernel
def _marsaglia_tsang(st, shape):
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        z = next_normal(st)
        v = 1.0 + c * z
        if v <= 0.0:
            continue
        v = v * v * v
        u = next_double(st)
        z2 = z * z
        if u < 1.0 - 0.0331 * z2 * z2:
            return d * v
        if u > 0.0 and math.log(u) < 0.5 * z2 + d * (1.0 - v + math.log(v)):
            return d * v


@kernel
def _standard_gamma(st, shape, int_shape):
    if int_shape > 0:
        s = 0.0
        for _ in range(int_shape):
            s -= math.log(next_open_closed(st))
        return s
    if shape < 1.0:
        g = _marsaglia_tsang(st, shape + 1.0)
        return g * next_open_closed(st) ** (1.0 / shape)
    return _marsaglia_tsang(st, shape)


@kernel
def _mixture_kernel(st, shape, rate, p, int_shape, out, branch):
    for i in range(out.size):
        u = next_double(st)
        if u <= p:
            branch[i] = 1
            out[i] = -math.log(next_open_closed(st)) / rate
        else:
            branch[i] = 0
            out[i] = _standard_gamma(st, shape, int_shape) / rate


@kernel
def _gamma_kernel(st, shape, rate, int_shape, out):
    for i in range(out.size):
        out[i] = _standard_gamma(st, shape, int_shape) / rate


def _int_shape(alpha):
    if float(alpha).is_integer() and 1 <= alpha <= _MAX_LOG_SUM_SHAPE:
        return int(alpha)
    return 0


def _check_count(count):
    if int(count) != count or count < 1:
        raise DomainError(f"count must be a positive integer, got {count}")
    return int(count)


def sample_with_branches(params, count, rng):
    """Draws plus a 0/1 array marking which came from the exponential branch."""
    count = _check_count(count)
    out = np.empty(count)
    branch = np.empty(count, dtype=np.uint8)
    with np.errstate(over="ignore"):
        _mixture_kernel(rng.words, float(params.alpha), float(params.theta),
                        weight(params), _int_shape(params.alpha), out, branch)
    return out, branch


def sample_many(params, count, rng):
    return sample_with_branches(params, count, rng)[0]


def sample_one(params, rng):
    return float(sample_many(params, 1, rng)[0])


def sample_gamma(shape, rate, count, rng):
    """Gamma(shape, rate) draws through the same branch code as the mixture."""
    count = _check_count(count)
    if shape <= 0 or rate <= 0:
        raise DomainError("shape and rate must be positive")
    out = np.empty(count)
    with np.errstate(over="ignore"):
        _gamma_kernel(rng.words, float(shape), float(rate), _int_shape(shape), out)
    return out
