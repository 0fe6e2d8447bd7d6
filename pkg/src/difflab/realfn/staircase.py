"""Depth-truncated Cantor staircases.

A staircase of depth ``D`` is the classical Cantor function with the
construction stopped after ``D`` steps: it is constant on every removed
middle third and linear across each of the ``2**D`` surviving intervals of
length ``3**-D``.  It is placed on the real line by an affine domain map
``[a, b]``, an output scale and a translate offset::

    S(x) = scale * C_D((x + offset - a) / (b - a))

so its rise happens on the hull ``[a - offset, b - offset]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_DEPTH = 20


def cantor_eval(t, depth: int) -> np.ndarray:
    """Truncated Cantor function ``C_D`` at ``t`` (clipped to ``[0, 1]``).

    Reads ternary digits of ``t`` one at a time: a ``1`` means ``t`` sits on a
    plateau, a ``2`` adds the current binary weight.  After ``depth`` digits the
    remaining fraction is interpolated linearly across the surviving interval.
    """
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    top = t >= 1.0
    frac = np.where(top, 0.0, t)
    value = np.zeros_like(frac)
    live = ~top
    weight = 0.5
    for _ in range(depth):
        frac = frac * 3.0
        digit = np.floor(frac)
        frac = frac - digit
        plateau = live & (digit == 1.0)
        value[plateau] += weight
        live &= ~plateau
        value[live & (digit >= 2.0)] += weight
        weight *= 0.5
    # weight == 2**-(depth+1); each surviving interval rises by 2**-depth
    value[live] += 2.0 * weight * np.minimum(frac[live], 1.0)
    value[top] = 1.0
    return value


@lru_cache(maxsize=8)
def _rise_indices(depth: int) -> np.ndarray:
    """Sorted integers whose ``depth`` ternary digits are all 0 or 2."""
    k = np.zeros(1, dtype=np.int64)
    for i in range(depth):
        k = np.concatenate([k, k + 2 * 3**i])
    k.setflags(write=False)
    return k


def rise_intervals_unit(depth: int) -> tuple[np.ndarray, np.ndarray]:
    """Left and right ends of the ``2**depth`` rising intervals of ``C_D`` in ``[0, 1]``."""
    k = _rise_indices(depth)
    n = float(3**depth)
    return k / n, (k + 1) / n


@dataclass(frozen=True)
class SingularStaircase:
    """A scaled, translated, depth-truncated Cantor function.

    Monotone, with total variation exactly ``abs(scale)`` over any interval
    containing its hull.  Outside the hull it is constant: ``0`` on the left
    and ``scale`` on the right.
    """

    depth: int = DEFAULT_DEPTH
    a: float = 0.0
    b: float = 1.0
    scale: float = 1.0
    offset: float = 0.0
    base: str = "cantor"

    def __post_init__(self):
        if self.base != "cantor":
            raise ValueError(f"unsupported staircase base {self.base!r}")
        if int(self.depth) != self.depth or self.depth < 1:
            raise ValueError(f"depth must be a positive integer, got {self.depth!r}")
        if not self.a < self.b:
            raise ValueError(f"need a < b, got a={self.a}, b={self.b}")

    # -- geometry --------------------------------------------------------------

    @property
    def hull(self) -> tuple[float, float]:
        return (self.a - self.offset, self.b - self.offset)

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def slope(self) -> float:
        """Slope on every rising interval, ``scale * (3/2)**depth / (b - a)``."""
        return self.scale * 1.5**self.depth / self.width

    @property
    def active_length(self) -> float:
        return (2.0 / 3.0) ** self.depth * self.width

    def rise_intervals(self) -> tuple[np.ndarray, np.ndarray]:
        left, right = rise_intervals_unit(self.depth)
        lo = self.a - self.offset
        return lo + self.width * left, lo + self.width * right

    def breakpoints(self, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        """Every rise-interval endpoint inside ``[lo, hi]``."""
        h0, h1 = self.hull
        if h1 < lo or h0 > hi:
            return np.empty(0)
        left, right = self.rise_intervals()
        pts = np.concatenate([left, right])
        return pts[(pts >= lo) & (pts <= hi)]

    def on_active_set(self, x) -> np.ndarray:
        """True where ``x`` lies inside a rising interval (closed)."""
        x = np.asarray(x, dtype=float)
        left, right = self.rise_intervals()
        i = np.searchsorted(left, x, side="right") - 1
        ok = i >= 0
        inside = np.zeros(x.shape, dtype=bool)
        inside[ok] = x[ok] <= right[i[ok]]
        return inside

    # -- values ----------------------------------------------------------------

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self.scale * cantor_eval((x + self.offset - self.a) / self.width, self.depth)

    def variation(self, lo: float = 0.0, hi: float = 1.0) -> float:
        """Exact variation over ``[lo, hi]``: the staircase is monotone."""
        return float(abs(self(hi) - self(lo)))

    def scaled(self, k: float) -> "SingularStaircase":
        return SingularStaircase(self.depth, self.a, self.b, self.scale * float(k), self.offset, self.base)

    def translated(self, h: float) -> "SingularStaircase":
        """``x -> S(x + h)``."""
        return SingularStaircase(self.depth, self.a, self.b, self.scale, self.offset + float(h), self.base)


def cantor(depth: int = DEFAULT_DEPTH) -> SingularStaircase:
    """The truncated classical Cantor function on ``[0, 1]``."""
    return SingularStaircase(depth=depth)


def rise_overlap(s1: SingularStaircase, s2: SingularStaircase) -> float:
    """Total length on which both staircases are rising.

    Zero means the two staircases have interior-disjoint active sets, which
    is the finite-depth counterpart of mutual singularity.
    """
    l1, r1 = s1.rise_intervals()
    l2, r2 = s2.rise_intervals()
    # for each interval of s1, overlap with the (sorted, disjoint) intervals of s2
    lo = np.searchsorted(r2, l1, side="right")
    hi = np.searchsorted(l2, r1, side="left")
    total = 0.0
    span = hi - lo
    if not np.any(span > 0):
        return 0.0
    for shift in range(int(span.max())):
        j = lo + shift
        m = (j < hi) & (j < l2.size)
        jj = j[m]
        seg = np.minimum(r1[m], r2[jj]) - np.maximum(l1[m], l2[jj])
        total += float(np.sum(np.clip(seg, 0.0, None)))
    return total
