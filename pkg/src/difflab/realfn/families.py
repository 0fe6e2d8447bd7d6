"""Concrete staircase constructions used by the experiments."""

from __future__ import annotations

from .functions import BVFunc, translate
from .polynomial import PiecewisePolynomial
from .staircase import DEFAULT_DEPTH, SingularStaircase

FAMILY_HALF_WIDTH = 1.0 / 6.0


def separated_family_member(r: float, h: float = 0.0, depth: int = DEFAULT_DEPTH) -> BVFunc:
    """Tent of two staircases, translated by ``h``.

    The base function rises from ``0`` to ``r/2`` along a staircase on
    ``[1/6, 1/3]``, stays at ``r/2`` on ``[1/3, 2/3]`` and falls back to
    ``0`` along the mirrored staircase on ``[2/3, 5/6]``.  The member is
    ``x -> F(x + h)``; since ``|h| <= 1/6`` keeps both hulls inside ``I``,
    it vanishes at both ends and has variation exactly ``r``.

    The descending half is written as ``r/2 - (r/2) C(6x - 4)``, using the
    symmetry ``C(1 - t) = 1 - C(t)`` of the truncated Cantor function, so
    the sum of the two staircases is exactly ``0`` to the right of ``5/6``.
    """
    if not r > 0.0:
        raise ValueError(f"r must be positive, got {r}")
    if abs(h) > FAMILY_HALF_WIDTH:
        raise ValueError(f"h must lie in [-1/6, 1/6], got {h}")
    up = SingularStaircase(depth, 1.0 / 6.0, 1.0 / 3.0, 0.5 * r)
    down = SingularStaircase(depth, 2.0 / 3.0, 5.0 / 6.0, -0.5 * r)
    return translate(BVFunc(PiecewisePolynomial.zero(), (up, down)), h)
