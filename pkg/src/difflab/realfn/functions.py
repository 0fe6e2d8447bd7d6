"""Functions of bounded variation on ``I = [0, 1]`` and evaluable handles.

A :class:`BVFunc` is stored in Lebesgue normal form: an absolutely
continuous piecewise polynomial plus a list of singular staircases.  Other
operations (composition with a homeomorphism, a.e. derivatives, sums of
handles) return lightweight handles that can be evaluated and that report
the structural points a variation or quadrature routine should respect.

Every handle exposes ``__call__(x)`` and ``breakpoints(lo, hi)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .polynomial import PiecewisePolynomial, linear_combination
from .staircase import SingularStaircase

DOMAIN_SLACK = 1e-12


class DomainError(ValueError):
    """Raised when a function on ``I`` is evaluated outside ``[0, 1]``."""


@dataclass(frozen=True)
class Interval:
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ValueError(f"need 0 <= lo <= hi <= 1, got [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def split(self, e: float) -> tuple["Interval", "Interval"]:
        if not self.lo <= e <= self.hi:
            raise ValueError(f"split point {e} outside [{self.lo}, {self.hi}]")
        return Interval(self.lo, e), Interval(e, self.hi)


def as_bounds(interval) -> tuple[float, float]:
    if interval is None:
        return 0.0, 1.0
    if isinstance(interval, Interval):
        return interval.lo, interval.hi
    lo, hi = interval
    iv = Interval(float(lo), float(hi))
    return iv.lo, iv.hi


def structural_points(F, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    """Structural points of any evaluable in ``[lo, hi]`` (empty if it has none)."""
    bp = getattr(F, "breakpoints", None)
    if bp is None or isinstance(bp, np.ndarray):
        # PiecewisePolynomial stores its breakpoints as an array attribute
        if isinstance(F, PiecewisePolynomial):
            return F.monotone_partition(lo, hi)
        return np.empty(0)
    pts = np.asarray(bp(lo, hi), dtype=float)
    return pts[(pts >= lo) & (pts <= hi)]


def _check_domain(x: np.ndarray) -> np.ndarray:
    if x.size and (np.min(x) < -DOMAIN_SLACK or np.max(x) > 1.0 + DOMAIN_SLACK):
        raise DomainError("function on [0, 1] evaluated outside its domain")
    return np.clip(x, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class BVFunc:
    """Continuous BV function ``ac + sum(singular)`` on ``[0, 1]``."""

    ac: PiecewisePolynomial = field(default_factory=PiecewisePolynomial.zero)
    singular: tuple[SingularStaircase, ...] = ()

    def __post_init__(self):
        if self.ac.lo != 0.0 or self.ac.hi != 1.0:
            raise ValueError("the absolutely continuous part must live on [0, 1]")
        object.__setattr__(self, "singular", tuple(self.singular))

    @classmethod
    def constant(cls, c: float) -> "BVFunc":
        return cls(PiecewisePolynomial.constant(c))

    @classmethod
    def zero(cls) -> "BVFunc":
        return cls()

    @classmethod
    def polynomial(cls, coeffs) -> "BVFunc":
        """Single global polynomial, ascending coefficients in ``x``."""
        return cls(PiecewisePolynomial.from_global(coeffs))

    @classmethod
    def staircase(cls, s: SingularStaircase) -> "BVFunc":
        return cls(PiecewisePolynomial.zero(), (s,))

    def __call__(self, x):
        x = _check_domain(np.asarray(x, dtype=float))
        out = self.ac(x)
        for s in self.singular:
            out = out + s(x)
        return out

    def breakpoints(self, lo: float = 0.0, hi: float = 1.0, *, singular: bool = True) -> np.ndarray:
        """Monotonicity-change candidates: ac breakpoints and critical points,
        plus every rise-interval endpoint of the staircases."""
        parts = [self.ac.monotone_partition(lo, hi)]
        if singular:
            parts.extend(s.breakpoints(lo, hi) for s in self.singular)
        return np.unique(np.concatenate(parts))

    @property
    def is_absolutely_continuous(self) -> bool:
        """Structurally AC: no singular summands."""
        return not self.singular

    def __eq__(self, other) -> bool:
        if not isinstance(other, BVFunc):
            return NotImplemented
        return self.ac == other.ac and self.singular == other.singular

    __hash__ = None

    def __neg__(self) -> "BVFunc":
        return linear_combine([-1.0], [self])

    def __add__(self, other) -> "BVFunc":
        if isinstance(other, (int, float)):
            return BVFunc(self.ac.shift(other), self.singular)
        return linear_combine([1.0, 1.0], [self, other])

    __radd__ = __add__

    def __sub__(self, other) -> "BVFunc":
        if isinstance(other, (int, float)):
            return BVFunc(self.ac.shift(-other), self.singular)
        return linear_combine([1.0, -1.0], [self, other])

    def __mul__(self, k) -> "BVFunc":
        return linear_combine([k], [self])

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"BVFunc(ac={self.ac!r}, singular={len(self.singular)} staircase(s))"


def linear_combine(coeffs, funcs) -> BVFunc:
    """Pointwise ``sum(c * F)``; ac parts merged, staircases concatenated and rescaled."""
    coeffs = [float(c) for c in coeffs]
    funcs = list(funcs)
    if not funcs or len(coeffs) != len(funcs):
        raise ValueError(f"length mismatch: {len(coeffs)} coefficients, {len(funcs)} functions")
    ac = linear_combination(coeffs, [F.ac for F in funcs])
    singular = tuple(s.scaled(c) for c, F in zip(coeffs, funcs) for s in F.singular if c != 0.0)
    return BVFunc(ac, singular)


def translate(F: BVFunc, h: float) -> BVFunc:
    """``x -> F(x + h)`` for a function whose ac part is constant.

    Used for the separated family, where only staircases move.
    """
    if not F.ac.is_constant():
        raise ValueError("translate() only shifts staircase parts; the ac part must be constant")
    return BVFunc(F.ac, tuple(s.translated(h) for s in F.singular))


def lebesgue_parts(F: BVFunc) -> tuple[BVFunc, BVFunc]:
    """Split into the absolutely continuous and the singular part."""
    return BVFunc(F.ac), BVFunc(PiecewisePolynomial.zero(), F.singular)


# -- handles ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Density:
    """Almost-everywhere derivative of a :class:`BVFunc`.

    Equals the polynomial derivative of the ac part; staircases contribute
    ``0`` off their active sets and ``nan`` on them (undefined in the
    singular limit).
    """

    source: BVFunc

    @property
    def regular(self) -> PiecewisePolynomial:
        return self.source.ac.derivative()

    def defined(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        ok = np.ones(x.shape, dtype=bool)
        for s in self.source.singular:
            ok &= ~s.on_active_set(x)
        return ok

    def __call__(self, x):
        x = _check_domain(np.asarray(x, dtype=float))
        out = self.regular(x)
        if self.source.singular:
            out = np.where(self.defined(x), out, np.nan)
        return out

    def breakpoints(self, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        bp = self.source.ac.breakpoints
        return bp[(bp >= lo) & (bp <= hi)]


def derivative_ae(F: BVFunc) -> Density:
    return Density(F)


@dataclass(frozen=True, eq=False)
class ComposedFunction:
    """``x -> F(u(x))`` for an orientation-preserving homeomorphism ``u`` of ``I`` or ``S^1``.

    ``u`` must provide ``manifold``, a point map ``u(x)`` into ``[0, 1]``,
    ``preimage(y)`` and ``wrap_point()`` (``None`` on the interval).
    """

    inner: object
    u: object

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        y = np.clip(self.u(x), 0.0, 1.0)
        return self.inner(y)

    def breakpoints(self, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        pts = structural_points(self.inner, 0.0, 1.0)
        pre = self.u.preimage(pts) if pts.size else np.empty(0)
        extra = [0.0, 1.0]
        q = self.u.wrap_point()
        if q is not None:
            extra.append(q)
        out = np.unique(np.concatenate([pre, extra]))
        return out[(out >= lo) & (out <= hi)]

    def structural_variation(self):
        """``V(F o u) = V(F)`` over all of ``I`` (for circle maps when ``F(0) = F(1)``)."""
        from .variation import total_variation

        return total_variation(self.inner, (0.0, 1.0))


def compose_with(F, u) -> ComposedFunction:
    """Handle for ``F o u``.

    For a circle map, ``F`` must take equal values at ``0`` and ``1`` so that
    it is a function on the circle; otherwise the manifolds do not match.
    """
    manifold = getattr(u, "manifold", None)
    if manifold is None:
        raise TypeError("u must be a homeomorphism with a manifold attribute")
    if getattr(manifold, "is_circle", False):
        ends = np.asarray(F(np.array([0.0, 1.0])), dtype=float)
        if abs(ends[0] - ends[1]) > 1e-9 * (1.0 + abs(ends[0])):
            raise ValueError("manifold mismatch: F(0) != F(1), so F is not a function on the circle")
    return ComposedFunction(F, u)


@dataclass(frozen=True, eq=False)
class LinearCombination:
    """Pointwise ``sum(c_i * f_i)`` of arbitrary handles."""

    coeffs: tuple[float, ...]
    terms: tuple

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for c, f in zip(self.coeffs, self.terms):
            out = out + c * np.asarray(f(x), dtype=float)
        return out

    def breakpoints(self, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        parts = [structural_points(f, lo, hi) for f in self.terms]
        parts.append(np.array([lo, hi]))
        return np.unique(np.concatenate(parts))


def combine(coeffs, terms):
    """Linear combination that stays a :class:`BVFunc` whenever it can."""
    coeffs = tuple(float(c) for c in coeffs)
    terms = tuple(terms)
    if len(coeffs) != len(terms) or not terms:
        raise ValueError("length mismatch")
    if all(isinstance(t, BVFunc) for t in terms):
        return linear_combine(coeffs, terms)
    return LinearCombination(coeffs, terms)


@dataclass(frozen=True, eq=False)
class Difference:
    """``f - g`` evaluated as a single subtraction, so ``g - f`` is its exact negation."""

    f: object
    g: object

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.asarray(self.f(x), dtype=float) - np.asarray(self.g(x), dtype=float)

    def breakpoints(self, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        parts = [structural_points(self.f, lo, hi), structural_points(self.g, lo, hi), np.array([lo, hi])]
        return np.unique(np.concatenate(parts))
