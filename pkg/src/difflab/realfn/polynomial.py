"""Continuous piecewise polynomials on the unit interval.

Each piece ``i`` is stored in ascending powers of the local variable
``t = x - breakpoints[i]``.  The coefficient table is padded to a common
degree, so evaluation is one vectorized Horner sweep.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import polynomial as npoly

CONTINUITY_TOL = 1e-9


def _taylor_shift(c: np.ndarray, shift: float) -> np.ndarray:
    """Coefficients of ``p(t + shift)`` given ascending coefficients of ``p``."""
    n = c.size
    out = np.zeros(n)
    # out_j = sum_{i>=j} c_i * C(i, j) * shift^(i-j)
    for i in range(n):
        if c[i] == 0.0:
            continue
        for j in range(i + 1):
            out[j] += c[i] * math.comb(i, j) * shift ** (i - j)
    return out


class PiecewisePolynomial:
    """A continuous piecewise polynomial on ``[breakpoints[0], breakpoints[-1]]``.

    Parameters
    ----------
    breakpoints : array_like
        Strictly increasing, at least two entries.
    coeffs : sequence of array_like
        One ascending coefficient list per piece, in the local variable
        ``x - breakpoints[i]``.  Ragged lists are zero-padded.
    check : bool
        Verify value continuity at interior breakpoints.
    """

    def __init__(self, breakpoints, coeffs, *, check: bool = True):
        bp = np.array(breakpoints, dtype=float)
        if bp.ndim != 1 or bp.size < 2:
            raise ValueError("need at least two breakpoints")
        if not np.all(np.diff(bp) > 0):
            raise ValueError("breakpoints must be strictly increasing")
        rows = [np.atleast_1d(np.array(c, dtype=float)) for c in coeffs]
        if len(rows) != bp.size - 1:
            raise ValueError(f"{bp.size - 1} pieces need {bp.size - 1} coefficient lists, got {len(rows)}")
        width = max(r.size for r in rows)
        table = np.zeros((len(rows), width))
        for i, r in enumerate(rows):
            table[i, : r.size] = r
        bp.setflags(write=False)
        table.setflags(write=False)
        self.breakpoints = bp
        self.coeffs = table
        if check:
            jump = self.continuity_defect()
            scale = 1.0 + float(np.max(np.abs(table[:, 0])))
            if jump > CONTINUITY_TOL * scale:
                raise ValueError(f"piecewise polynomial is discontinuous (jump {jump:.3g})")

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: float, lo: float = 0.0, hi: float = 1.0) -> "PiecewisePolynomial":
        return cls([lo, hi], [[float(c)]])

    @classmethod
    def zero(cls) -> "PiecewisePolynomial":
        return cls.constant(0.0)

    @classmethod
    def from_global(cls, coeffs, lo: float = 0.0, hi: float = 1.0) -> "PiecewisePolynomial":
        """Single piece given ascending coefficients in the global variable ``x``."""
        return cls([lo, hi], [_taylor_shift(np.asarray(coeffs, dtype=float), lo)])

    @classmethod
    def from_pieces_global(cls, breakpoints, global_coeffs, *, check: bool = True) -> "PiecewisePolynomial":
        bp = np.asarray(breakpoints, dtype=float)
        local = [_taylor_shift(np.asarray(c, dtype=float), bp[i]) for i, c in enumerate(global_coeffs)]
        return cls(bp, local, check=check)

    # -- basic properties -------------------------------------------------

    @property
    def lo(self) -> float:
        return float(self.breakpoints[0])

    @property
    def hi(self) -> float:
        return float(self.breakpoints[-1])

    @property
    def npieces(self) -> int:
        return self.coeffs.shape[0]

    @property
    def degree(self) -> int:
        nz = np.nonzero(np.any(self.coeffs != 0.0, axis=0))[0]
        return int(nz[-1]) if nz.size else 0

    def is_constant(self) -> bool:
        if np.any(self.coeffs[:, 1:] != 0.0):
            return False
        return bool(np.all(self.coeffs[:, 0] == self.coeffs[0, 0]))

    def continuity_defect(self) -> float:
        if self.npieces == 1:
            return 0.0
        h = np.diff(self.breakpoints)[:-1]
        left = self._eval_pieces(np.arange(self.npieces - 1), h)
        right = self.coeffs[1:, 0]
        return float(np.max(np.abs(left - right)))

    def __repr__(self) -> str:
        return f"PiecewisePolynomial(pieces={self.npieces}, degree={self.degree})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        return (
            np.array_equal(self.breakpoints, other.breakpoints)
            and self.coeffs.shape == other.coeffs.shape
            and np.array_equal(self.coeffs, other.coeffs)
        )

    __hash__ = None

    # -- evaluation ---------------------------------------------------------

    def _eval_pieces(self, idx: np.ndarray, t: np.ndarray) -> np.ndarray:
        c = self.coeffs[idx]
        out = c[..., -1].copy()
        for j in range(self.coeffs.shape[1] - 2, -1, -1):
            out = out * t + c[..., j]
        return out

    def piece_index(self, x: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.breakpoints, x, side="right") - 1
        return np.clip(idx, 0, self.npieces - 1)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        idx = self.piece_index(x)
        return self._eval_pieces(idx, x - self.breakpoints[idx])

    # -- calculus -------------------------------------------------------------

    def derivative(self, n: int = 1) -> "PiecewisePolynomial":
        """The ``n``-th derivative, taken piece by piece.

        The result is a valid (possibly discontinuous) piecewise polynomial;
        at a breakpoint the right-hand piece wins.
        """
        c = np.array(self.coeffs)
        for _ in range(n):
            if c.shape[1] == 1:
                c = np.zeros_like(c)
                break
            c = c[:, 1:] * np.arange(1, c.shape[1])[None, :]
        return PiecewisePolynomial(self.breakpoints, list(c), check=False)

    def antiderivative(self, value_at_lo: float = 0.0) -> "PiecewisePolynomial":
        """Continuous antiderivative vanishing (or equal to ``value_at_lo``) at ``lo``."""
        n = self.coeffs.shape[1]
        c = np.zeros((self.npieces, n + 1))
        c[:, 1:] = self.coeffs / np.arange(1, n + 1)[None, :]
        widths = np.diff(self.breakpoints)
        acc = float(value_at_lo)
        for i in range(self.npieces):
            c[i, 0] = acc
            acc = float(npoly.polyval(widths[i], c[i]))
        return PiecewisePolynomial(self.breakpoints, list(c), check=False)

    def integral(self, lo: float | None = None, hi: float | None = None) -> float:
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        anti = self.antiderivative()
        return float(anti(hi) - anti(lo))

    # -- structure -----------------------------------------------------------

    def refine(self, breakpoints) -> "PiecewisePolynomial":
        """Same function on a finer partition containing ``breakpoints``."""
        new = np.union1d(self.breakpoints, np.asarray(breakpoints, dtype=float))
        new = new[(new >= self.lo) & (new <= self.hi)]
        if new.size == self.breakpoints.size:
            return self
        idx = self.piece_index(new[:-1])
        rows = [_taylor_shift(self.coeffs[i], new[j] - self.breakpoints[i]) for j, i in enumerate(idx)]
        return PiecewisePolynomial(new, rows, check=False)

    def critical_points(self, lo: float | None = None, hi: float | None = None) -> np.ndarray:
        """Interior real roots of the derivative, per piece, clipped to ``(lo, hi)``."""
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        d = self.derivative()
        out = []
        for i in range(self.npieces):
            a, b = self.breakpoints[i], self.breakpoints[i + 1]
            if b <= lo or a >= hi:
                continue
            c = np.trim_zeros(d.coeffs[i], "b")
            if c.size < 2:
                continue
            roots = npoly.polyroots(c)
            real = roots[np.abs(roots.imag) <= 1e-12 * (1 + np.abs(roots.real))].real + a
            out.append(real[(real > max(a, lo)) & (real < min(b, hi))])
        if not out:
            return np.empty(0)
        return np.unique(np.concatenate(out))

    def monotone_partition(self, lo: float | None = None, hi: float | None = None) -> np.ndarray:
        """Sorted points of ``[lo, hi]`` between which the function is monotone."""
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        inner = self.breakpoints[(self.breakpoints > lo) & (self.breakpoints < hi)]
        return np.unique(np.concatenate([[lo, hi], inner, self.critical_points(lo, hi)]))

    def variation(self, lo: float | None = None, hi: float | None = None) -> float:
        """Exact total variation: partition sum over monotone pieces."""
        pts = self.monotone_partition(lo, hi)
        return math.fsum(np.abs(np.diff(self(pts))))

    def sup_abs(self, lo: float | None = None, hi: float | None = None) -> float:
        """Exact ``max |p|`` on ``[lo, hi]``, taken at ends, breakpoints and critical points."""
        pts = self.monotone_partition(lo, hi)
        # one-sided values at breakpoints cover derivative pieces with jumps
        vals = np.abs(self(pts))
        idx = np.searchsorted(self.breakpoints, pts, side="left")
        inner = (idx > 0) & (idx < self.breakpoints.size) & np.isin(pts, self.breakpoints)
        if np.any(inner):
            pi = idx[inner] - 1
            left = np.abs(self._eval_pieces(pi, pts[inner] - self.breakpoints[pi]))
            vals = np.concatenate([vals, left])
        return float(np.max(vals))

    # -- algebra ----------------------------------------------------------------

    def scale(self, k: float) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.breakpoints, list(self.coeffs * float(k)), check=False)

    def shift(self, k: float) -> "PiecewisePolynomial":
        c = np.array(self.coeffs)
        c[:, 0] += float(k)
        return PiecewisePolynomial(self.breakpoints, list(c), check=False)

    def __neg__(self) -> "PiecewisePolynomial":
        return self.scale(-1.0)

    def __add__(self, other) -> "PiecewisePolynomial":
        if isinstance(other, (int, float)):
            return self.shift(other)
        return linear_combination([1.0, 1.0], [self, other])

    def __sub__(self, other) -> "PiecewisePolynomial":
        if isinstance(other, (int, float)):
            return self.shift(-other)
        return linear_combination([1.0, -1.0], [self, other])

    def __mul__(self, k) -> "PiecewisePolynomial":
        return self.scale(k)

    __rmul__ = __mul__


def linear_combination(weights, polys) -> PiecewisePolynomial:
    """``sum(w * p)`` on the union of all breakpoints."""
    polys = list(polys)
    weights = [float(w) for w in weights]
    if len(weights) != len(polys) or not polys:
        raise ValueError("weights and polynomials must be non-empty and of equal length")
    lo, hi = polys[0].lo, polys[0].hi
    if any(p.lo != lo or p.hi != hi for p in polys):
        raise ValueError("piecewise polynomials live on different domains")
    bp = polys[0].breakpoints
    for p in polys[1:]:
        bp = np.union1d(bp, p.breakpoints)
    refined = [p.refine(bp) for p in polys]
    width = max(p.coeffs.shape[1] for p in refined)
    table = np.zeros((bp.size - 1, width))
    for w, p in zip(weights, refined):
        table[:, : p.coeffs.shape[1]] += w * p.coeffs
    return PiecewisePolynomial(bp, list(table), check=False)
