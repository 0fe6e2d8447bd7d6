"""Orientation-preserving diffeomorphisms of ``I`` and ``S^1``.

Every map is handled through its lift.  On the interval the lift is the map
itself, with ``f(0) = 0`` and ``f(1) = 1``.  On the circle it is the unique
lift ``F`` with ``F(0)`` in ``[0, 1)`` and ``F(x + 1) = F(x) + 1``; the
point map is ``F(x) mod 1`` and every derivative is a function on ``I``
with equal values at both ends.

Derivatives come as jets, lists whose entry ``i`` holds ``f^(i+1)`` at each
point.  Orders ``1..k`` are continuous; order ``k + 1`` is only defined
almost everywhere and is the top density of the regularity class.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..realfn import BVFunc, ComposedFunction, Density, LinearCombination, PiecewisePolynomial
from ..realfn.quadrature import QuadratureError, gauss_legendre
from .bell import BellTable, chain_jet, inverse_jet
from .manifold import Manifold, RegularityClass
from .roots import solve_increasing

# fixed Gauss-Legendre rules (main, cross-check) for the cumulative exp-integral;
# segments no wider than _FINE_WIDTH get the short pair.  Staircase breakpoints
# are segment ends, so on a segment G is a polynomial plus a linear term
_RULES = {False: gauss_legendre(16), True: gauss_legendre(24)}
_FINE_RULES = {False: gauss_legendre(6), True: gauss_legendre(10)}
_FINE_WIDTH = 2.0**-10
_MAX_SEGMENT = 1.0 / 64.0
_CHUNK = 1 << 15
_NORMALIZER_RTOL = 1e-12
_SMOOTHNESS_TOL = 1e-9


class Diffeo(ABC):
    """Common interface; concrete subclasses supply the lift, jets and log-derivative."""

    manifold: Manifold
    k: int

    # -- to implement --------------------------------------------------------

    @abstractmethod
    def lift(self, x) -> np.ndarray:
        """Lift evaluated at real points (the map itself on the interval)."""

    @abstractmethod
    def jet(self, x, n: int) -> list[np.ndarray]:
        """``[f', ..., f^(n)]`` at points of ``I``."""

    @abstractmethod
    def log_derivative(self):
        """Handle for ``log f'`` on ``I``."""

    @property
    @abstractmethod
    def regularity(self) -> RegularityClass: ...

    @abstractmethod
    def _own_points(self) -> np.ndarray: ...

    # -- shared behaviour ------------------------------------------------------

    def __call__(self, x) -> np.ndarray:
        """Point map ``I -> I``; on the circle values lie in ``[0, 1)``."""
        y = self.lift(np.asarray(x, dtype=float))
        return np.mod(y, 1.0) if self.manifold.is_circle else y

    def derivative(self, x, j: int = 1) -> np.ndarray:
        return self.jet(x, j)[j - 1]

    def _reduce(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.mod(x, 1.0) if self.manifold.is_circle else x

    def _solve_lift(self, y) -> np.ndarray:
        """Real ``x`` with ``lift(x) = y``."""
        y = np.asarray(y, dtype=float)
        d1 = lambda x: self.jet(x, 1)[0]
        if self.manifold.is_circle:
            # lift(x) - x stays within (-1, 2), so the root lies in (y - 2, y + 1)
            return solve_increasing(self.lift, d1, y, y - 2.0, y + 1.0)
        if y.size and (np.min(y) < 0.0 or np.max(y) > 1.0):
            raise ValueError("interval preimage requested outside [0, 1]")
        return solve_increasing(self.lift, d1, y, 0.0, 1.0)

    def preimage(self, y) -> np.ndarray:
        """Points ``x`` of ``I`` mapped to ``y`` (circle: ``x`` in ``[0, 1)``)."""
        y = np.asarray(y, dtype=float)
        if not self.manifold.is_circle:
            return self._solve_lift(y)
        p = float(self.lift(np.array(0.0)))
        t = np.mod(y, 1.0)
        target = np.where(t >= p, t, t + 1.0)
        return np.clip(solve_increasing(self.lift, lambda x: self.jet(x, 1)[0], target, 0.0, 1.0), 0.0, 1.0)

    def wrap_point(self) -> float | None:
        """``q`` with ``lift(q) = 1`` (circle only): where the point map wraps to ``0``."""
        if not self.manifold.is_circle:
            return None
        if float(self.lift(np.array(0.0))) == 0.0:
            return 1.0
        return float(solve_increasing(self.lift, lambda x: self.jet(x, 1)[0], np.array(1.0), 0.0, 1.0))

    @cached_property
    def structural_points(self) -> np.ndarray:
        """Points of ``I`` where a derivative of the map may fail to be smooth."""
        extra = [0.0, 1.0]
        q = self.wrap_point()
        if q is not None:
            extra.append(q)
        pts = np.concatenate([self._own_points(), extra])
        return np.unique(np.clip(pts, 0.0, 1.0))


# -- concrete maps -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RigidMap(Diffeo):
    """``x -> x + shift``: the identity, or a rotation of the circle."""

    manifold: Manifold
    k: int = 1
    shift: float = 0.0

    def __post_init__(self):
        _check_order(self.k)
        if not self.manifold.is_circle and self.shift != 0.0:
            raise ValueError("only the identity is rigid on the interval")
        if not 0.0 <= self.shift < 1.0:
            raise ValueError(f"shift must be reduced to [0, 1), got {self.shift}")

    @property
    def regularity(self) -> RegularityClass:
        return RegularityClass.CK_AC

    def lift(self, x):
        return np.asarray(x, dtype=float) + self.shift

    def jet(self, x, n: int):
        x = np.asarray(x, dtype=float)
        return [np.ones(x.shape)] + [np.zeros(x.shape) for _ in range(n - 1)]

    def log_derivative(self):
        return BVFunc.zero()

    def preimage(self, y):
        y = np.asarray(y, dtype=float)
        return np.mod(y - self.shift, 1.0) if self.manifold.is_circle else y

    def wrap_point(self):
        return None if not self.manifold.is_circle else 1.0 - self.shift

    def _own_points(self):
        return np.empty(0)


@dataclass(frozen=True, eq=False)
class ExpIntegralDiffeo(Diffeo):
    """``f(x) = offset + int_0^x e^G / int_0^1 e^G`` for a log-derivative ``G``.

    ``log f' = G - log Z`` with ``Z = int_0^1 e^G``.  For order ``k`` the ac
    part of ``G`` must be ``C^(k-1)``; a singular part forces ``k = 1``.
    """

    G: BVFunc
    manifold: Manifold = Manifold.INTERVAL
    k: int = 1
    offset: float = 0.0

    def __post_init__(self):
        _check_order(self.k)
        if self.G.singular and self.k > 1:
            raise ValueError("a log-derivative with a singular part only supports k = 1")
        for i in range(1, self.k):
            defect = self.G.ac.derivative(i).continuity_defect()
            if defect > _SMOOTHNESS_TOL * (1.0 + float(np.max(np.abs(self.G.ac.coeffs)))):
                raise ValueError(f"G^({i}) jumps by {defect:.3g}; order k={self.k} needs G in C^{self.k - 1}")
        if self.manifold.is_circle:
            if not 0.0 <= self.offset < 1.0:
                raise ValueError(f"rotation offset must be reduced to [0, 1), got {self.offset}")
            ends = [float(v) for v in self.G(np.array([0.0, 1.0]))]
            if abs(ends[1] - ends[0]) > _SMOOTHNESS_TOL * (1.0 + abs(ends[0])):
                raise ValueError("circle compatibility: G(0) != G(1)")
            for i in range(1, self.k):
                d = self.G.ac.derivative(i)
                d0, d1 = float(d(np.array(0.0))), float(d(np.array(1.0)))
                if abs(d1 - d0) > _SMOOTHNESS_TOL * (1.0 + abs(d0)):
                    raise ValueError(f"circle compatibility: G^({i})(0) != G^({i})(1)")
        elif self.offset != 0.0:
            raise ValueError("a rotation offset only makes sense on the circle")

    # -- cumulative integral ---------------------------------------------------

    @cached_property
    def _segments(self) -> np.ndarray:
        pts = [self.G.ac.breakpoints, np.linspace(0.0, 1.0, int(round(1.0 / _MAX_SEGMENT)) + 1)]
        pts.extend(s.breakpoints(0.0, 1.0) for s in self.G.singular)
        seg = np.unique(np.clip(np.concatenate(pts), 0.0, 1.0))
        seg.setflags(write=False)
        return seg

    def _exp_g(self, x):
        return np.exp(self.G(x))

    @cached_property
    def _stairs_at_segments(self) -> np.ndarray:
        """Sum of the staircases at every segment end; each is linear in between."""
        seg = self._segments
        out = np.zeros(seg.shape)
        for st in self.G.singular:
            out = out + st(seg)
        out.setflags(write=False)
        return out

    def _integrals(self, i: np.ndarray, w: np.ndarray, check: bool = False) -> np.ndarray:
        """``int_{s_i}^{s_i + w} e^G`` for segment indices ``i``, in bounded-memory chunks."""
        seg, stairs = self._segments, self._stairs_at_segments
        full = seg[i + 1] - seg[i]
        fine = full <= _FINE_WIDTH
        out = np.empty(i.shape)
        for mask, rules in ((fine, _FINE_RULES), (~fine, _RULES)):
            nodes, weights = rules[check]
            idx = np.flatnonzero(mask)
            for start in range(0, idx.size, _CHUNK):
                j = idx[start : start + _CHUNK]
                k, wj = i.flat[j], w.flat[j]
                step = wj[:, None] * nodes
                g = self.G.ac(seg[k][:, None] + step)
                g = g + stairs[k][:, None] + (stairs[k + 1] - stairs[k])[:, None] * (step / full.flat[j][:, None])
                out.flat[j] = (np.exp(g) @ weights) * wj
        return out

    @cached_property
    def _cumulative(self) -> tuple[np.ndarray, float]:
        seg = self._segments
        i = np.arange(seg.size - 1)
        w = np.diff(seg)
        pieces = self._integrals(i, w)
        cum = np.concatenate([[0.0], np.cumsum(pieces)])
        Z = float(cum[-1])
        check = math.fsum(self._integrals(i, w, check=True).tolist())
        if not np.isfinite(Z) or abs(check - Z) > _NORMALIZER_RTOL * Z:
            raise QuadratureError(f"normalizer quadrature unstable: {Z!r} vs {check!r}")
        cum.setflags(write=False)
        return cum, Z

    @property
    def normalizer(self) -> float:
        """``Z = int_0^1 e^G``."""
        return self._cumulative[1]

    def _lift_unit(self, t: np.ndarray) -> np.ndarray:
        cum, Z = self._cumulative
        seg = self._segments
        i = np.clip(np.searchsorted(seg, t, side="right") - 1, 0, seg.size - 2)
        return (cum[i] + self._integrals(i, t - seg[i])) / Z

    def lift(self, x):
        x = np.asarray(x, dtype=float)
        if not self.manifold.is_circle:
            return self._lift_unit(x)
        n = np.floor(x)
        return self.offset + n + self._lift_unit(x - n)

    # -- derivatives -------------------------------------------------------------

    @cached_property
    def _g_derivatives(self) -> tuple[PiecewisePolynomial, ...]:
        return tuple(self.G.ac.derivative(i) for i in range(1, self.k + 1))

    def jet(self, x, n: int):
        t = self._reduce(x)
        first = self._exp_g(t) / self.normalizer
        if n == 1:
            return [first]
        polys = self._g_derivatives
        if n - 1 > len(polys):
            polys = polys + tuple(self.G.ac.derivative(i) for i in range(len(polys) + 1, n))
        defined = Density(self.G).defined(t) if self.G.singular else None
        table = BellTable(t.shape)
        out = [first]
        for i in range(1, n):
            gi = polys[i - 1](t)
            if defined is not None:
                gi = np.where(defined, gi, np.nan)
            table.append(gi)
            row = table.row(i)
            out.append(first * sum(row[1:], row[0]))
        return out

    def log_derivative(self) -> BVFunc:
        return BVFunc(self.G.ac.shift(-math.log(self.normalizer)), self.G.singular)

    @property
    def regularity(self) -> RegularityClass:
        return RegularityClass.CK_BV if self.G.singular else RegularityClass.CK_AC

    def _own_points(self):
        return self.G.breakpoints(0.0, 1.0)


@dataclass(frozen=True, eq=False)
class _LogOf:
    """``log p`` for a positive polynomial handle ``p``."""

    p: PiecewisePolynomial

    def __call__(self, x):
        return np.log(self.p(np.asarray(x, dtype=float)))

    def breakpoints(self, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        return self.p.monotone_partition(lo, hi)


@dataclass(frozen=True, eq=False)
class PolynomialDiffeo(Diffeo):
    """Interval diffeomorphism given by a polynomial lift with ``p(0) = 0``, ``p(1) = 1``, ``p' > 0``."""

    p: PiecewisePolynomial
    k: int = 1

    def __post_init__(self):
        _check_order(self.k)
        ends = self.p(np.array([0.0, 1.0]))
        if ends[0] != 0.0 or ends[1] != 1.0:
            raise ValueError(f"an interval diffeomorphism must fix 0 and 1, got p(0)={ends[0]}, p(1)={ends[1]}")
        d = self.p.derivative()
        pts = d.monotone_partition()
        if np.min(d(pts)) <= 0.0:
            raise ValueError("lift polynomial is not strictly increasing on [0, 1]")

    manifold = Manifold.INTERVAL

    @property
    def regularity(self) -> RegularityClass:
        return RegularityClass.CK_AC

    def lift(self, x):
        return self.p(np.asarray(x, dtype=float))

    @cached_property
    def _derivatives(self) -> tuple[PiecewisePolynomial, ...]:
        return tuple(self.p.derivative(i) for i in range(1, self.k + 2))

    def jet(self, x, n: int):
        x = np.asarray(x, dtype=float)
        polys = self._derivatives
        if n > len(polys):
            polys = tuple(self.p.derivative(i) for i in range(1, n + 1))
        return [polys[i](x) for i in range(n)]

    def log_derivative(self):
        return _LogOf(self._derivatives[0])

    def _own_points(self):
        return self.p.breakpoints


@dataclass(frozen=True, eq=False)
class Composition(Diffeo):
    """``outer o inner``."""

    outer: Diffeo
    inner: Diffeo

    def __post_init__(self):
        if self.outer.manifold is not self.inner.manifold:
            raise ValueError("cannot compose maps of different manifolds")
        if self.outer.k != self.inner.k:
            raise ValueError(f"order mismatch: k={self.outer.k} vs k={self.inner.k}")

    @property
    def manifold(self) -> Manifold:
        return self.inner.manifold

    @property
    def k(self) -> int:
        return self.inner.k

    @property
    def regularity(self) -> RegularityClass:
        return RegularityClass.join(self.outer.regularity, self.inner.regularity)

    @cached_property
    def _integer_part(self) -> float:
        if not self.manifold.is_circle:
            return 0.0
        return math.floor(float(self.outer.lift(self.inner.lift(np.array(0.0)))))

    def lift(self, x):
        return self.outer.lift(self.inner.lift(x)) - self._integer_part

    def jet(self, x, n: int):
        x = np.asarray(x, dtype=float)
        return chain_jet(self.outer.jet(self.inner(x), n), self.inner.jet(x, n))

    def log_derivative(self):
        return LinearCombination((1.0, 1.0), (ComposedFunction(self.outer.log_derivative(), self.inner), self.inner.log_derivative()))

    def preimage(self, y):
        return self.inner.preimage(self.outer.preimage(y))

    def _own_points(self):
        pts = self.outer.structural_points
        return np.concatenate([self.inner.structural_points, self.inner.preimage(pts)])


@dataclass(frozen=True, eq=False)
class Inverse(Diffeo):
    """``f^{-1}``, evaluated by guarded Newton iteration on the lift of ``f``."""

    f: Diffeo

    @property
    def manifold(self) -> Manifold:
        return self.f.manifold

    @property
    def k(self) -> int:
        return self.f.k

    @property
    def regularity(self) -> RegularityClass:
        return self.f.regularity

    @cached_property
    def _integer_part(self) -> float:
        if not self.manifold.is_circle:
            return 0.0
        return -math.floor(float(self.f._solve_lift(np.array(0.0))))

    def lift(self, y):
        return self.f._solve_lift(y) + self._integer_part

    def jet(self, y, n: int):
        return inverse_jet(self.f.jet(self(y), n))

    def log_derivative(self):
        return LinearCombination((-1.0,), (ComposedFunction(self.f.log_derivative(), self),))

    def preimage(self, y):
        return self.f(np.asarray(y, dtype=float))

    def _own_points(self):
        return self.f(self.f.structural_points)


# -- public constructors -----------------------------------------------------


def _unit_shift(h: float) -> float:
    """``h mod 1`` in ``[0, 1)``; Python's ``%`` can round tiny negatives up to ``1.0``."""
    r = float(h) % 1.0
    return 0.0 if r >= 1.0 else r


def _check_order(k) -> None:
    if int(k) != k or k < 1:
        raise ValueError(f"regularity order must be a positive integer, got {k!r}")


def from_log_derivative(G, manifold=Manifold.INTERVAL, rotation_offset: float = 0.0, k: int = 1) -> ExpIntegralDiffeo:
    """Diffeomorphism whose derivative is proportional to ``e^G``.

    Interval: ``f(x) = int_0^x e^G / int_0^1 e^G``.  Circle: the same plus
    ``rotation_offset`` (taken mod 1) on the lift.  Constants in ``G`` cancel
    in the normalization.
    """
    if isinstance(G, PiecewisePolynomial):
        G = BVFunc(G)
    manifold = Manifold.parse(manifold)
    offset = _unit_shift(rotation_offset) if manifold.is_circle else float(rotation_offset)
    return ExpIntegralDiffeo(G, manifold, int(k), offset)


def from_lift_polynomial(coeffs, k: int = 1) -> PolynomialDiffeo:
    """Interval map ``x -> sum c_i x^i`` (ascending coefficients)."""
    return PolynomialDiffeo(PiecewisePolynomial.from_global(coeffs), int(k))


def identity(manifold=Manifold.INTERVAL, k: int = 1) -> RigidMap:
    return RigidMap(Manifold.parse(manifold), int(k), 0.0)


def rotation(h: float, k: int = 1) -> RigidMap:
    """Circle rotation with lift ``x -> x + (h mod 1)``."""
    return RigidMap(Manifold.CIRCLE, int(k), _unit_shift(h))


def compose(f: Diffeo, g: Diffeo) -> Diffeo:
    """``f o g``."""
    return Composition(f, g)


def invert(f: Diffeo) -> Diffeo:
    if isinstance(f, Inverse):
        return f.f
    if isinstance(f, RigidMap):
        return RigidMap(f.manifold, f.k, _unit_shift(-f.shift))
    return Inverse(f)


@dataclass(frozen=True, eq=False)
class Tower:
    """Evaluable handle for ``f^(j)`` on ``I``."""

    f: Diffeo
    j: int

    def __call__(self, x):
        return self.f.jet(np.asarray(x, dtype=float), self.j)[self.j - 1]

    def breakpoints(self, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        pts = self.f.structural_points
        return pts[(pts >= lo) & (pts <= hi)]


def derivative_tower(f: Diffeo, j: int) -> Tower:
    """``f^(j)`` for ``1 <= j <= k``; ``j = k + 1`` gives the a.e. top density."""
    if not 1 <= j <= f.k + 1:
        raise ValueError(f"derivative order {j} outside 1..{f.k + 1} for a map of order k={f.k}")
    return Tower(f, int(j))
