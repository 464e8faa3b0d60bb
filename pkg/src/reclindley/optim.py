"""Safeguarded Newton ascent in an unconstrained parametrisation.

The Hessian is a central finite difference of the supplied gradient. When it
is not negative definite the step comes from a BFGS secant approximation
instead. Every accepted step must not decrease the objective (step halving).
"""

from dataclasses import dataclass, field

import numpy as np

MAX_STEP = 2.0


@dataclass
class AscentResult:
    z: np.ndarray
    value: float
    grad_norm: float
    iterations: int
    converged: bool
    messages: list = field(default_factory=list)


def numeric_gradient(fun, z, rel_step=1e-6):
    z = np.asarray(z, dtype=float)
    g = np.empty_like(z)
    for i in range(z.size):
        h = rel_step * max(1.0, abs(z[i]))
        e = np.zeros_like(z)
        e[i] = h
        g[i] = (fun(z + e) - fun(z - e)) / (2 * h)
    return g


def jacobian_of(grad, z, rel_step=1e-5):
    z = np.asarray(z, dtype=float)
    n = z.size
    out = np.empty((n, n))
    for i in range(n):
        h = rel_step * max(1.0, abs(z[i]))
        e = np.zeros(n)
        e[i] = h
        out[:, i] = (np.asarray(grad(z + e)) - np.asarray(grad(z - e))) / (2 * h)
    return 0.5 * (out + out.T)


def _safe(fun, z):
    try:
        v = float(fun(z))
    except (ValueError, ArithmeticError):
        return -np.inf
    return v if np.isfinite(v) else -np.inf


def maximize(fun, grad, z0, stationarity, tol=1e-6, maxiter=200):
    """Maximise ``fun`` starting at ``z0``.

    ``stationarity(z)`` returns the gradient norm used for the convergence
    test, which callers usually measure in the natural parameters.
    """
    z = np.asarray(z0, dtype=float).copy()
    f = _safe(fun, z)
    messages = []
    if not np.isfinite(f):
        return AscentResult(z, f, np.inf, 0, False, ["objective not finite at start"])
    g = np.asarray(grad(z), dtype=float)
    inv_b = np.eye(z.size)
    gn = stationarity(z)
    it = 0
    for it in range(1, maxiter + 1):
        if gn <= tol:
            return AscentResult(z, f, gn, it - 1, True, messages)
        step = None
        try:
            hess = jacobian_of(grad, z)
            if np.all(np.isfinite(hess)):
                np.linalg.cholesky(-hess)
                step = np.linalg.solve(-hess, g)
        except np.linalg.LinAlgError:
            step = None
        if step is None:
            if "quasi-Newton fallback used" not in messages:
                messages.append("quasi-Newton fallback used")
            step = inv_b @ g
        norm = np.linalg.norm(step)
        if norm > MAX_STEP:
            step *= MAX_STEP / norm

        accepted = False
        slack = 8 * np.finfo(float).eps * max(1.0, abs(f))
        for direction in (step, g / max(1.0, np.linalg.norm(g))):
            scale = 1.0
            for _ in range(60):
                trial = z + scale * direction
                ft = _safe(fun, trial)
                if ft >= f - slack:
                    accepted = True
                    break
                scale *= 0.5
            if accepted:
                break
        if not accepted:
            messages.append("line search failed")
            return AscentResult(z, f, gn, it, gn <= tol, messages)

        g_new = np.asarray(grad(trial), dtype=float)
        s = trial - z
        y = g - g_new
        sy = float(s @ y)
        if sy > 1e-12 * np.linalg.norm(s) * np.linalg.norm(y):
            rho = 1.0 / sy
            eye = np.eye(z.size)
            inv_b = (eye - rho * np.outer(s, y)) @ inv_b @ (eye - rho * np.outer(y, s)) + rho * np.outer(s, s)
        stalled = np.all(s == 0)
        z, f, g = trial, ft, g_new
        gn = stationarity(z)
        if stalled:
            messages.append("step underflow")
            return AscentResult(z, f, gn, it, gn <= tol, messages)
    converged = gn <= tol
    if not converged:
        messages.append(f"iteration cap {maxiter} reached")
    return AscentResult(z, f, gn, it, converged, messages)
