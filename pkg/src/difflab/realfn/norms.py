"""Uniform and L1 norms of evaluable functions on subintervals of ``I``."""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .functions import BVFunc, Density, Difference, as_bounds, structural_points
from .polynomial import PiecewisePolynomial
from .quadrature import DEFAULT_TOL, integrate

_POLISH_CANDIDATES = 4


def _sample_grid(F, lo: float, hi: float, level: int, base: np.ndarray):
    n = 2**level
    grid = lo + (hi - lo) * (np.arange(n + 1) / n)
    x = np.union1d(base, grid)
    return x, np.abs(np.asarray(F(x), dtype=float))


def uniform_norm(F, interval=None, *, tol: float = DEFAULT_TOL, min_level: int = 6, max_level: int = 16) -> float:
    """``sup |F|`` over ``[lo, hi]``.

    Exact for piecewise polynomials and structurally AC :class:`BVFunc`
    values.  Anything else is sampled on a dyadic grid seeded with its
    structural points, refined until the running maximum moves by less than
    ``tol``, and the best cells are polished with a bounded scalar search.
    The result is always a value actually attained, so it never exceeds the
    true supremum.
    """
    lo, hi = as_bounds(interval)
    if isinstance(F, PiecewisePolynomial):
        return F.sup_abs(lo, hi)
    if isinstance(F, BVFunc) and not F.singular:
        return F.ac.sup_abs(lo, hi)
    base = np.unique(np.concatenate([structural_points(F, lo, hi), [lo, hi]]))
    best = -math.inf
    for level in range(min_level, max_level + 1):
        x, v = _sample_grid(F, lo, hi, level, base)
        if np.any(np.isnan(v)):
            raise ValueError("uniform_norm needs a function defined everywhere; got nan samples")
        top = float(np.max(v))
        if abs(top - best) < tol:
            best = max(best, top)
            break
        best = max(best, top)
    return max(best, _polish(F, x, v))


def _polish(F, x: np.ndarray, v: np.ndarray) -> float:
    best = float(np.max(v))
    order = np.argsort(v, kind="stable")[::-1][:_POLISH_CANDIDATES]
    for i in order:
        a, b = x[max(i - 1, 0)], x[min(i + 1, x.size - 1)]
        if b <= a:
            continue
        res = minimize_scalar(
            lambda t: -abs(float(np.asarray(F(np.array([t])), dtype=float)[0])),
            bounds=(a, b),
            method="bounded",
            options={"xatol": 1e-13},
        )
        best = max(best, -float(res.fun))
    return best


def sign_changes(F, lo: float, hi: float, *, samples: int = 512) -> np.ndarray:
    """Roots of ``F`` located by sign changes on a grid seeded with structural points."""
    base = np.unique(np.concatenate([structural_points(F, lo, hi), [lo, hi]]))
    grid = np.union1d(base, np.linspace(lo, hi, samples + 1))
    v = np.asarray(F(grid), dtype=float)
    roots = [grid[v == 0.0]]
    flips = np.nonzero(v[:-1] * v[1:] < 0.0)[0]
    scalar = lambda t: float(np.asarray(F(np.array([t])), dtype=float)[0])
    roots.append(np.array([brentq(scalar, grid[i], grid[i + 1], xtol=1e-14) for i in flips]))
    return np.unique(np.concatenate(roots))


def l1_norm(F, interval=None, *, tol: float = DEFAULT_TOL) -> float:
    """``int |F|`` over ``[lo, hi]`` by adaptive quadrature.

    Structural points and located sign changes of ``F`` are used as initial
    subdivision points, so ``|F|`` is smooth on every starting cell.  For a
    :class:`Density` the singular staircases contribute their a.e.
    derivative, zero, and only the regular part is integrated.
    """
    lo, hi = as_bounds(interval)
    if isinstance(F, Density):
        F = F.regular
    if hi == lo:
        return 0.0
    points = np.concatenate([structural_points(F, lo, hi), sign_changes(F, lo, hi)])
    return integrate(lambda x: np.abs(np.asarray(F(x), dtype=float)), lo, hi, points=points, tol=tol).value


def l1_distance(F, G, interval=None, *, tol: float = DEFAULT_TOL) -> float:
    """``int |F - G|``, with ``F - G`` formed as one subtraction per point."""
    return l1_norm(Difference(F, G), interval, tol=tol)
