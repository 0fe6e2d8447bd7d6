"""Named diffeomorphisms used by the experiments."""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq

from ..realfn import BVFunc, PiecewisePolynomial, gauss_legendre
from .core import ExpIntegralDiffeo, from_log_derivative
from .manifold import Manifold

_NODES, _WEIGHTS = gauss_legendre(32)
# 16 t^2 (1 - t)^2 in ascending powers of t: a C^1 bump with peak 1 at t = 1/2
_BUMP = np.array([0.0, 0.0, 16.0, -32.0, 16.0])


def _bump_local(width: float, amplitude: float) -> np.ndarray:
    """Bump coefficients in the local variable ``s = t * width``."""
    return amplitude * _BUMP / width ** np.arange(_BUMP.size)


def _bump_mean(amplitude: float) -> float:
    phi = np.polynomial.polynomial.polyval(_NODES, _BUMP)
    return float(np.exp(amplitude * phi) @ _WEIGHTS)


def _amplitude_for(mean: float) -> float:
    """Amplitude ``a`` with ``int_0^1 exp(a * bump) = mean``."""
    if mean == 1.0:
        return 0.0
    return brentq(lambda a: _bump_mean(a) - mean, -200.0, 200.0, xtol=1e-15, rtol=1e-15)


def interval_shift_map(h: float, p: float = 1.0 / 6.0, q: float = 5.0 / 6.0, k: int = 1) -> ExpIntegralDiffeo:
    """Interval diffeomorphism equal to ``x -> x + h`` on ``[p, q]``.

    The log-derivative is ``0`` on ``[p, q]`` and a ``C^1`` polynomial bump on
    each end piece, with amplitudes chosen so the end pieces have masses
    ``p + h`` and ``1 - q - h``.  The normalizer is then ``1`` and
    ``||log f'||_BV = O(|h|)``.
    """
    if not (-p < h < 1.0 - q):
        raise ValueError(f"shift {h} does not fit in [0, {p}] and [{q}, 1]")
    a_left = _amplitude_for((p + h) / p)
    a_right = _amplitude_for((1.0 - q - h) / (1.0 - q))
    G = PiecewisePolynomial(
        [0.0, p, q, 1.0],
        [_bump_local(p, a_left), [0.0], _bump_local(1.0 - q, a_right)],
    )
    return from_log_derivative(BVFunc(G), Manifold.INTERVAL, 0.0, k)
