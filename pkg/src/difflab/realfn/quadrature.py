"""Adaptive Gauss-Kronrod integration and fixed Gauss-Legendre rules.

All integrands are vectorized callables: they receive a 1-D float array of
abscissae and return an array of the same shape.  The adaptive driver works
on whole batches of subintervals at once so that each refinement sweep costs
a single integrand call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

DEFAULT_TOL = 1e-9

# Kronrod 15-point abscissae (non-negative half) and weights, with the
# embedded 7-point Gauss weights on the even-indexed nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[[1, 3, 5]] = _WG[:3]
_GAUSS_W[7] = _WG[3]
_GAUSS_W[[9, 11, 13]] = _WG[2::-1]


class QuadratureError(RuntimeError):
    """Raised when adaptive refinement cannot reach the requested tolerance."""


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    intervals: int


def _gk15(f: Callable, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    with np.errstate(invalid="ignore", over="ignore"):  # non-finite sums are rejected by the caller
        kronrod = half * (fx @ _KRONROD_W)
        gauss = half * (fx @ _GAUSS_W)
    return kronrod, np.abs(kronrod - gauss)


def integrate(
    f: Callable,
    lo: float,
    hi: float,
    *,
    points=None,
    tol: float = DEFAULT_TOL,
    max_sweeps: int = 60,
    max_intervals: int = 200_000,
) -> QuadResult:
    """Integrate ``f`` over ``[lo, hi]`` to absolute tolerance ``tol``.

    ``points`` are known trouble spots (kinks, jumps) and become initial
    subdivision points.  A subinterval is accepted once its Kronrod/Gauss
    discrepancy is below its length-proportional share of ``tol``, so the
    reported error bound never exceeds ``tol``.
    """
    if hi < lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if hi == lo:
        return QuadResult(0.0, 0.0, 0)
    edges = [lo, hi]
    if points is not None:
        pts = np.asarray(points, dtype=float).ravel()
        edges.extend(pts[(pts > lo) & (pts < hi)].tolist())
    edges = np.unique(np.asarray(edges, dtype=float))
    a, b = edges[:-1], edges[1:]
    length = hi - lo
    values: list[float] = []
    errors: list[float] = []
    accepted = 0
    for _ in range(max_sweeps):
        val, err = _gk15(f, a, b)
        if not np.all(np.isfinite(val)):
            raise QuadratureError("integrand returned non-finite values")
        width = b - a
        ok = (err <= tol * width / length) | (width <= 4 * np.spacing(np.maximum(abs(a), abs(b))))
        values.extend(val[ok].tolist())
        errors.extend(err[ok].tolist())
        accepted += int(ok.sum())
        if ok.all():
            return QuadResult(math.fsum(values), math.fsum(errors), accepted)
        a, b = a[~ok], b[~ok]
        m = 0.5 * (a + b)
        a, b = np.concatenate([a, m]), np.concatenate([m, b])
        if accepted + a.size > max_intervals:
            break
    raise QuadratureError(
        f"adaptive quadrature did not reach tol={tol:g} on [{lo}, {hi}] "
        f"({a.size} unresolved subintervals)"
    )


def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``n``-point rule on ``[0, 1]``."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w
