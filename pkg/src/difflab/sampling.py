"""Random functions and diffeomorphisms for property tests and experiments.

All samplers take a :class:`numpy.random.Generator`, so a seed fixes every
draw.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import bernoulli

from .diffeo import Manifold, from_log_derivative
from .realfn import BVFunc, PiecewisePolynomial, SingularStaircase, linear_combination, separated_family_member

MIN_GAP = 0.05


def random_breakpoints(rng: np.random.Generator, pieces: int) -> np.ndarray:
    """``0 = b_0 < ... < b_pieces = 1`` with every gap at least ``MIN_GAP``."""
    slack = 1.0 - MIN_GAP * pieces
    if slack < 0:
        raise ValueError(f"cannot fit {pieces} pieces with gap {MIN_GAP}")
    gaps = MIN_GAP + slack * rng.dirichlet(np.ones(pieces))
    bp = np.concatenate([[0.0], np.cumsum(gaps)])
    bp[-1] = 1.0
    return bp


def random_piecewise_polynomial(
    rng: np.random.Generator,
    *,
    pieces: int = 3,
    degree: int = 3,
    smoothness: int = 0,
    scale: float = 1.0,
) -> PiecewisePolynomial:
    """Random ``C^smoothness`` piecewise polynomial with ``sup |p| = scale``.

    A discontinuous piecewise polynomial of degree ``degree - smoothness - 1``
    is integrated ``smoothness + 1`` times with random constants, which makes
    every derivative up to ``smoothness`` continuous by construction.
    """
    if degree <= smoothness:
        raise ValueError("degree must exceed smoothness")
    bp = random_breakpoints(rng, pieces)
    top = degree - smoothness - 1
    p = PiecewisePolynomial(bp, list(rng.standard_normal((pieces, top + 1))), check=False)
    for _ in range(smoothness + 1):
        p = p.antiderivative(rng.standard_normal())
    size = p.sup_abs()
    return p.scale(scale / size) if size > 0 else p


def _scaled_bernoulli(n: int) -> np.ndarray:
    """Ascending coefficients of ``B_n(x) / n!``."""
    B = bernoulli(n)
    return np.array([math.comb(n, j) * B[n - j] for j in range(n + 1)]) / math.factorial(n)


def periodize(p: PiecewisePolynomial, order: int) -> PiecewisePolynomial:
    """Subtract Bernoulli polynomials so that ``p^(m)(0) = p^(m)(1)`` for ``m < order``.

    ``b_n = B_n / n!`` satisfies ``b_n' = b_{n-1}``, ``b_1(1) - b_1(0) = 1``
    and ``b_n(1) = b_n(0)`` for ``n >= 2``, so ``sum_m J_m b_{m+1}`` has
    exactly the endpoint jumps ``J_m`` of ``p``.
    """
    correction = np.zeros(order + 1)
    for m in range(order):
        d = p.derivative(m) if m else p
        jump = float(d(np.array(1.0))) - float(d(np.array(0.0)))
        correction[: m + 2] += jump * _scaled_bernoulli(m + 1)
    return linear_combination([1.0, -1.0], [p, PiecewisePolynomial.from_global(correction)])


def random_staircase(rng: np.random.Generator, depth: int) -> SingularStaircase:
    a, b = np.sort(rng.uniform(0.0, 1.0, 2))
    if b - a < MIN_GAP:
        b = min(1.0, a + MIN_GAP)
        a = b - MIN_GAP
    scale = rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 1.0)
    return SingularStaircase(depth, float(a), float(b), float(scale))


def random_bvfunc(
    rng: np.random.Generator,
    *,
    staircases: int = 1,
    depth: int = 8,
    pieces: int = 3,
    degree: int = 3,
) -> BVFunc:
    """Continuous piecewise polynomial plus ``staircases`` random staircases."""
    ac = random_piecewise_polynomial(rng, pieces=pieces, degree=degree)
    return BVFunc(ac, tuple(random_staircase(rng, depth) for _ in range(staircases)))


def random_log_derivative(
    rng: np.random.Generator,
    manifold: Manifold,
    k: int,
    *,
    amplitude: float = 0.5,
    pieces: int = 3,
    singular: bool = False,
    depth: int = 8,
) -> BVFunc:
    """A log-derivative admissible for order ``k`` on ``manifold``.

    The ac part is ``C^(k-1)`` of degree ``k + 2``; on the circle it is made
    periodic up to order ``k - 1``.  With ``singular=True`` (``k = 1`` only) a
    translated copy of the separated-family tent is added, which vanishes at
    both ends and so keeps the circle condition.
    """
    manifold = Manifold.parse(manifold)
    ac = random_piecewise_polynomial(rng, pieces=pieces, degree=k + 2, smoothness=k - 1, scale=amplitude)
    if manifold.is_circle:
        ac = periodize(ac, k)
    stairs: tuple = ()
    if singular:
        if k != 1:
            raise ValueError("singular log-derivatives need k = 1")
        tent = separated_family_member(rng.uniform(0.2, amplitude + 0.2), rng.uniform(-1 / 6, 1 / 6), depth)
        stairs = tent.singular
    return BVFunc(ac, stairs)


def random_diffeo(
    rng: np.random.Generator,
    manifold=Manifold.INTERVAL,
    k: int = 1,
    *,
    amplitude: float = 0.5,
    pieces: int = 3,
    singular: bool = False,
    depth: int = 8,
):
    manifold = Manifold.parse(manifold)
    G = random_log_derivative(rng, manifold, k, amplitude=amplitude, pieces=pieces, singular=singular, depth=depth)
    offset = rng.uniform(0.0, 1.0) if manifold.is_circle else 0.0
    return from_log_derivative(G, manifold, offset, k)
