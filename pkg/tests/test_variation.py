import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from difflab.realfn import (
    BVFunc,
    PiecewisePolynomial,
    SingularStaircase,
    VariationNotConverged,
    bv_norm,
    cantor,
    structural_variation,
    total_variation,
    variation_oracle,
)
from difflab.realfn.variation import OracleResult
from difflab.sampling import random_bvfunc, random_piecewise_polynomial


def test_oracle_on_sine():
    res = variation_oracle(lambda x: np.sin(2 * np.pi * x), (0.0, 1.0), 1e-10)
    assert res.converged
    assert res.estimate == pytest.approx(4.0, abs=1e-9)
    assert all(a <= b for a, b in zip(res.lower_bounds, res.lower_bounds[1:]))


def test_oracle_subinterval_and_empty():
    res = variation_oracle(lambda x: x**2, (0.5, 1.0))
    assert res.estimate == pytest.approx(0.75, abs=1e-12)
    assert variation_oracle(np.sin, (0.3, 0.3)).estimate == 0.0


def test_oracle_raises_when_unconverged():
    wild = lambda x: np.sin(1.0 / np.maximum(np.asarray(x, dtype=float), 1e-300))
    with pytest.raises(VariationNotConverged) as info:
        variation_oracle(wild, (0.0, 1.0), max_level=8)
    assert not info.value.result.converged
    lax = variation_oracle(wild, (0.0, 1.0), max_level=8, strict=False)
    assert lax.levels[-1] == 8


def test_increment_needs_two_levels():
    assert OracleResult(1.0, (1.0,), (4,), False).increment == np.inf


def test_cantor_variation_is_one():
    assert total_variation(cantor(12)) == 1.0
    assert total_variation(cantor(12), (0.0, 1 / 3)) == 0.5


def test_structural_declines_overlapping_staircases():
    F = BVFunc(PiecewisePolynomial.zero(), (cantor(6), SingularStaircase(6, 0.2, 0.9, -0.5)))
    assert structural_variation(F) is None
    assert total_variation(F) == pytest.approx(variation_oracle(F, None, 1e-11).estimate, abs=1e-9)


def test_structural_declines_sloped_ac_under_hull():
    F = BVFunc(PiecewisePolynomial.from_global([0.0, -1.0]), (cantor(6),))
    assert structural_variation(F) is None


def test_bv_norm():
    F = BVFunc.polynomial([-2.0, 1.0])
    assert bv_norm(F) == pytest.approx(3.0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_structural_agrees_with_oracle(seed):
    rng = np.random.default_rng(seed)
    F = random_bvfunc(rng, staircases=0, pieces=3, degree=4)
    assert total_variation(F) == pytest.approx(variation_oracle(F, None, 1e-11).estimate, abs=1e-8)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.05, 0.95))
def test_additivity_on_random_bv(seed, e):
    F = random_bvfunc(np.random.default_rng(seed), staircases=1, depth=6)
    whole = total_variation(F)
    split = total_variation(F, (0.0, e)) + total_variation(F, (e, 1.0))
    assert split == pytest.approx(whole, abs=1e-7)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-3, 3))
def test_scaling_and_constant_shift(seed, c):
    p = random_piecewise_polynomial(np.random.default_rng(seed), pieces=3, degree=3)
    F = BVFunc(p, (cantor(5),))
    v = total_variation(F)
    assert total_variation(c * F) == pytest.approx(abs(c) * v, abs=1e-7)
    assert total_variation(F + c) == pytest.approx(v, abs=1e-7)
