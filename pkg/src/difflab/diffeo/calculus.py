"""Integral identities for diffeomorphisms: pushforward, substitution, regularity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..realfn import integrate, structural_points, total_variation
from ..realfn.norms import sign_changes
from ..realfn.quadrature import DEFAULT_TOL
from .core import Diffeo, derivative_tower, invert
from .manifold import IntervalUnion, RegularityClass


def pushforward_measure(f: Diffeo, E: IntervalUnion, *, tol: float = DEFAULT_TOL) -> float:
    """``lambda(f(E)) = sum over components [a, b] of int_a^b f'``."""
    d1 = derivative_tower(f, 1)
    pts = f.structural_points
    return float(sum(integrate(d1, p.lo, p.hi, points=pts, tol=tol).value for p in E))


@dataclass(frozen=True)
class Substitution:
    """Both sides of a change of variables and their absolute difference."""

    direct: float
    substituted: float

    @property
    def residual(self) -> float:
        return abs(self.direct - self.substituted)


def _pulled_back_points(g, u: Diffeo) -> np.ndarray:
    pts = structural_points(g, 0.0, 1.0)
    return np.concatenate([u.structural_points, u.preimage(pts) if pts.size else np.empty(0)])


def change_of_variables(g, u: Diffeo, interval=(0.0, 1.0), *, tol: float = DEFAULT_TOL) -> Substitution:
    """``int_{u(a)}^{u(b)} g`` against ``int_a^b (g o u) u'``.

    On the circle the identity is taken over the whole of ``I``: with
    ``p = u~(0)`` and ``q = u~^{-1}(1)`` the right side splits as
    ``int_0^q g(u~) u' + int_q^1 g(u~ - 1) u'``, which covers ``[p, 1]`` and
    then ``[0, p]``.
    """
    a, b = (float(v) for v in interval)
    d1 = derivative_tower(u, 1)
    pts = _pulled_back_points(g, u)
    g_pts = structural_points(g, 0.0, 1.0)
    if not u.manifold.is_circle:
        ua, ub = (float(v) for v in u.lift(np.array([a, b])))
        direct = integrate(g, ua, ub, points=g_pts, tol=tol).value
        subst = integrate(lambda x: g(u.lift(x)) * d1(x), a, b, points=pts, tol=tol).value
        return Substitution(direct, subst)
    if (a, b) != (0.0, 1.0):
        raise ValueError("the circle identity is stated over the whole circle")
    q = u.wrap_point()
    direct = integrate(g, 0.0, 1.0, points=g_pts, tol=tol).value
    upper = integrate(lambda x: g(np.clip(u.lift(x), 0.0, 1.0)) * d1(x), 0.0, q, points=pts, tol=tol / 2).value
    lower = integrate(lambda x: g(np.clip(u.lift(x) - 1.0, 0.0, 1.0)) * d1(x), q, 1.0, points=pts, tol=tol / 2).value
    return Substitution(direct, upper + lower)


def substitution_isometry(rho, f: Diffeo, *, tol: float = DEFAULT_TOL) -> Substitution:
    """``int_I |rho|`` against ``int_I (|rho| o f^{-1}) / (f' o f^{-1})``."""
    finv = invert(f)
    d1 = derivative_tower(f, 1)
    rho_pts = np.concatenate([structural_points(rho, 0.0, 1.0), sign_changes(rho, 0.0, 1.0)])
    direct = integrate(lambda x: np.abs(rho(x)), 0.0, 1.0, points=rho_pts, tol=tol).value

    def pushed(y):
        x = finv(y)
        return np.abs(rho(x)) / d1(x)

    pts = np.concatenate([f(rho_pts), f(f.structural_points), finv.structural_points])
    return Substitution(direct, integrate(pushed, 0.0, 1.0, points=pts, tol=tol).value)


@dataclass(frozen=True)
class RegularityReport:
    regularity: RegularityClass
    log_derivative_variation: float
    singular_empty: bool


def regularity_check(f: Diffeo) -> RegularityReport:
    """Structural class of ``f`` and the total variation of ``log f'``."""
    return RegularityReport(
        f.regularity,
        total_variation(f.log_derivative()),
        f.regularity is not RegularityClass.CK_BV,
    )
