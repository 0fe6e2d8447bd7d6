"""Guarded Newton iteration for increasing scalar maps, vectorized over targets."""

from __future__ import annotations

import numpy as np

INVERSION_TOL = 1e-12


class InversionError(RuntimeError):
    """The monotone root finder did not converge."""


def solve_increasing(fun, dfun, y, lo, hi, *, tol: float = INVERSION_TOL, max_iter: int = 200) -> np.ndarray:
    """Solve ``fun(x) = y`` for an increasing ``fun`` with ``fun(lo) <= y <= fun(hi)``.

    Newton steps are taken from the bracket midpoint; a step that leaves the
    current bracket is replaced by bisection.  A point is done once its last
    step is below ``tol``; after quadratic convergence that last iterate is
    accurate to a few ulps.
    """
    y = np.asarray(y, dtype=float)
    shape = y.shape
    y = y.ravel()
    a = np.broadcast_to(np.asarray(lo, dtype=float), shape).ravel().copy()
    b = np.broadcast_to(np.asarray(hi, dtype=float), shape).ravel().copy()
    x = 0.5 * (a + b)
    # roots sitting on a bracket end are settled up front
    at_lo = np.asarray(fun(a), dtype=float) >= y
    at_hi = ~at_lo & (np.asarray(fun(b), dtype=float) <= y)
    x[at_lo], x[at_hi] = a[at_lo], b[at_hi]
    pending = np.nonzero(~(at_lo | at_hi))[0]
    for _ in range(max_iter):
        if pending.size == 0:
            return x.reshape(shape)
        xt = x[pending]
        r = np.asarray(fun(xt), dtype=float) - y[pending]
        d = np.asarray(dfun(xt), dtype=float)
        a[pending] = np.where(r < 0.0, xt, a[pending])
        b[pending] = np.where(r > 0.0, xt, b[pending])
        with np.errstate(divide="ignore", invalid="ignore"):
            new = xt - r / d
        bad = ~np.isfinite(new) | (new < a[pending]) | (new > b[pending])
        new = np.where(bad, 0.5 * (a[pending] + b[pending]), new)
        x[pending] = np.where(r == 0.0, xt, new)
        done = (r == 0.0) | (~bad & (np.abs(new - xt) <= tol))
        done |= b[pending] - a[pending] <= 2 * np.spacing(np.abs(xt) + 1.0)
        pending = pending[~done]
    raise InversionError(f"monotone inversion did not converge for {pending.size} target(s) after {max_iter} steps")
