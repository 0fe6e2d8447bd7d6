"""Total variation: structural fast paths and a brute-force partition oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import BVFunc, ComposedFunction, as_bounds, structural_points
from .polynomial import PiecewisePolynomial
from .staircase import SingularStaircase

DEFAULT_TOL = 1e-9
_LOG3_2 = math.log(2.0) / math.log(3.0)


class VariationNotConverged(RuntimeError):
    def __init__(self, result: "OracleResult"):
        self.result = result
        super().__init__(
            f"variation oracle stopped at level {result.levels[-1]} with increment "
            f"{result.increment:.3g} (estimate {result.estimate!r})"
        )


@dataclass(frozen=True)
class OracleResult:
    estimate: float
    lower_bounds: tuple[float, ...]
    levels: tuple[int, ...]
    converged: bool

    @property
    def increment(self) -> float:
        if len(self.lower_bounds) < 2:
            return math.inf
        return self.lower_bounds[-1] - self.lower_bounds[-2]


def _partition_sum(values: np.ndarray) -> float:
    return math.fsum(np.abs(np.diff(values)).tolist())


def variation_oracle(
    F,
    interval=None,
    tol: float = DEFAULT_TOL,
    *,
    min_level: int = 4,
    max_level: int = 20,
    strict: bool = True,
) -> OracleResult:
    """Partition sums of ``F`` over nested refining partitions of ``[lo, hi]``.

    The level-``L`` partition is the union of the structural points of ``F``,
    the dyadic grid with ``2**L`` cells and the ternary grid of matching
    resolution.  Partitions are nested, so the sums form a nondecreasing
    sequence of lower bounds for ``V(F)``.  Refinement stops once an
    increment drops below ``tol``.

    Raises :class:`VariationNotConverged` at ``max_level`` unless
    ``strict=False``, in which case the unconverged result is returned.
    """
    lo, hi = as_bounds(interval)
    if hi == lo:
        return OracleResult(0.0, (0.0,), (min_level,), True)
    base_x = np.unique(np.concatenate([structural_points(F, lo, hi), [lo, hi]]))
    base_v = np.asarray(F(base_x), dtype=float)
    sums: list[float] = []
    levels: list[int] = []
    for level in range(min_level, max_level + 1):
        n2 = 2**level
        n3 = 3 ** math.ceil(level * _LOG3_2)
        grid = np.concatenate([
            lo + (hi - lo) * (np.arange(1, n2) / n2),
            lo + (hi - lo) * (np.arange(1, n3) / n3),
        ])
        grid = np.unique(grid)
        grid = grid[~np.isin(grid, base_x)]
        x = np.concatenate([base_x, grid])
        v = np.concatenate([base_v, np.asarray(F(grid), dtype=float)])
        order = np.argsort(x, kind="stable")
        sums.append(_partition_sum(v[order]))
        levels.append(level)
        if len(sums) >= 2 and sums[-1] - sums[-2] < tol:
            return OracleResult(sums[-1], tuple(sums), tuple(levels), True)
    result = OracleResult(sums[-1], tuple(sums), tuple(levels), False)
    if strict:
        raise VariationNotConverged(result)
    return result


def _staircases_disjoint(stairs, lo: float, hi: float) -> bool:
    hulls = sorted((max(s.hull[0], lo), min(s.hull[1], hi)) for s in stairs)
    hulls = [h for h in hulls if h[1] > h[0]]
    return all(hulls[i][1] <= hulls[i + 1][0] for i in range(len(hulls) - 1))


def _ac_flat_on(ac: PiecewisePolynomial, a: float, b: float) -> bool:
    if b <= a:
        return True
    i0 = int(ac.piece_index(np.array(a)))
    i1 = int(np.searchsorted(ac.breakpoints, b, side="left")) - 1
    return not np.any(ac.coeffs[i0 : max(i1, i0) + 1, 1:] != 0.0)


def structural_variation(F: BVFunc, interval=None) -> float | None:
    """Exact ``V_lo^hi(F)`` from the normal form, or ``None`` if not certifiable.

    Certified cases: no singular part (exact polynomial variation), or
    staircases with pairwise-disjoint hulls on which the ac part is constant,
    where ``V = V(ac) + sum V(staircase)``.
    """
    lo, hi = as_bounds(interval)
    if not F.singular:
        return F.ac.variation(lo, hi)
    if not _staircases_disjoint(F.singular, lo, hi):
        return None
    for s in F.singular:
        if not _ac_flat_on(F.ac, max(s.hull[0], lo), min(s.hull[1], hi)):
            return None
    parts = [F.ac.variation(lo, hi)] + sorted(s.variation(lo, hi) for s in F.singular)
    return math.fsum(parts)


def total_variation(F, interval=None, *, tol: float = DEFAULT_TOL) -> float:
    """``V_lo^hi(F)``: structural when the representation allows it, oracle otherwise."""
    lo, hi = as_bounds(interval)
    if isinstance(F, (PiecewisePolynomial, SingularStaircase)):
        return F.variation(lo, hi)
    if isinstance(F, BVFunc):
        v = structural_variation(F, (lo, hi))
        if v is not None:
            return v
    if isinstance(F, ComposedFunction) and (lo, hi) == (0.0, 1.0):
        return F.structural_variation()
    return variation_oracle(F, (lo, hi), tol).estimate


def bv_norm(F, *, tol: float = DEFAULT_TOL) -> float:
    """``|F(0)| + V(F)`` over ``[0, 1]``."""
    f0 = float(np.asarray(F(np.array([0.0])), dtype=float)[0])
    return abs(f0) + total_variation(F, (0.0, 1.0), tol=tol)
