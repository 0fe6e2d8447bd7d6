"""Distances on diffeomorphism groups and variation-ball membership.

Every distance is returned as a :class:`MetricValue` whose named summands
add up to the total.  Differences of handles are always formed as one
subtraction per point, so ``d(f, g)`` and ``d(g, f)`` see bit-identical
integrands and agree exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .diffeo import Diffeo, Manifold, RegularityClass, derivative_tower
from .realfn import (
    BVFunc,
    Difference,
    l1_norm,
    structural_variation,
    total_variation,
    uniform_norm,
    variation_oracle,
)
from .realfn.quadrature import DEFAULT_TOL


@dataclass(frozen=True)
class MetricValue:
    """A distance and its nonnegative named summands, in order."""

    summands: tuple[tuple[str, float], ...]

    def __post_init__(self):
        for name, value in self.summands:
            if not value >= 0.0:
                raise ValueError(f"summand {name!r} is negative or nan: {value!r}")

    @property
    def total(self) -> float:
        return math.fsum(v for _, v in self.summands)

    def __getitem__(self, name: str) -> float:
        for key, value in self.summands:
            if key == name:
                return value
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {"total": self.total, "summands": dict(self.summands)}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def manifold_distance(M, x, y) -> np.ndarray:
    """``|x - y|`` on ``I``; chordal ``|e^{2 pi i x} - e^{2 pi i y}| = 2 |sin(pi (x - y))|`` on ``S^1``."""
    M = Manifold.parse(M)
    diff = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    if M.is_circle:
        return 2.0 * np.abs(np.sin(np.pi * diff))
    return np.abs(diff)


@dataclass(frozen=True, eq=False)
class _PointGap:
    f: Diffeo
    g: Diffeo

    def __call__(self, x):
        return manifold_distance(self.f.manifold, self.f.lift(x), self.g.lift(x))

    def breakpoints(self, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        pts = np.union1d(self.f.structural_points, self.g.structural_points)
        return pts[(pts >= lo) & (pts <= hi)]


def _check_pair(f: Diffeo, g: Diffeo) -> None:
    if f.manifold is not g.manifold:
        raise ValueError("distance between maps of different manifolds")


def _ck_summands(f: Diffeo, g: Diffeo, k: int, tol: float) -> list[tuple[str, float]]:
    _check_pair(f, g)
    if k > min(f.k, g.k):
        raise ValueError(f"order {k} exceeds the available towers (k={f.k}, k={g.k})")
    out = [("sup", uniform_norm(_PointGap(f, g), tol=tol))]
    for i in range(1, k + 1):
        diff = Difference(derivative_tower(f, i), derivative_tower(g, i))
        out.append((f"C{i}", uniform_norm(diff, tol=tol)))
    return out


def dist_ck(f: Diffeo, g: Diffeo, k: int, *, tol: float = DEFAULT_TOL) -> MetricValue:
    """``sup d_M(f, g) + sum_{i <= k} sup |f^(i) - g^(i)|``."""
    return MetricValue(tuple(_ck_summands(f, g, k, tol)))


def dist_k_ac(f: Diffeo, g: Diffeo, k: int, *, tol: float = DEFAULT_TOL) -> MetricValue:
    """``d_{C^k}(f, g) + int |f^(k+1) - g^(k+1)|``; both maps must be ``C^{k+AC}``."""
    for h in (f, g):
        if h.regularity is RegularityClass.CK_BV:
            raise ValueError("d_{k+AC} is only defined on C^{k+AC} maps; got a map with singular log-derivative")
    summands = _ck_summands(f, g, k, tol)
    top = Difference(derivative_tower(f, k + 1), derivative_tower(g, k + 1))
    summands.append((f"L1_{k + 1}", l1_norm(top, tol=tol)))
    return MetricValue(tuple(summands))


def log_derivative_gap(f: Diffeo, g: Diffeo, *, tol: float = DEFAULT_TOL) -> float:
    """``||log f' - log g'||_BV = |D(0)| + V(D)`` with ``D = log f' - log g'``.

    Structural when both log-derivatives are in normal form and the merged
    staircases certify it; otherwise the partition oracle runs on ``D``.
    """
    F, G = f.log_derivative(), g.log_derivative()
    D = Difference(F, G)
    v = None
    if isinstance(F, BVFunc) and isinstance(G, BVFunc):
        v = structural_variation(F - G)
    if v is None:
        v = variation_oracle(D, (0.0, 1.0), tol).estimate
    return abs(float(D(np.array([0.0]))[0])) + v


def dist_1_bv(f: Diffeo, g: Diffeo, *, tol: float = DEFAULT_TOL) -> MetricValue:
    """``sup d_M(f, g) + ||log f' - log g'||_BV``."""
    _check_pair(f, g)
    return MetricValue((("sup", uniform_norm(_PointGap(f, g), tol=tol)), ("BV", log_derivative_gap(f, g, tol=tol))))


@dataclass(frozen=True)
class BallMembership:
    member: bool
    margin: float
    variation: float

    def __bool__(self) -> bool:
        return self.member


def log_derivative_variation(f: Diffeo, *, tol: float = DEFAULT_TOL) -> float:
    return total_variation(f.log_derivative(), tol=tol)


def variation_ball_membership(f: Diffeo, n: float, *, tol: float = DEFAULT_TOL) -> BallMembership:
    """Is ``V(log f') <= n``?  ``margin = n - V(log f')``."""
    v = log_derivative_variation(f, tol=tol)
    return BallMembership(v <= n, n - v, v)
