import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from difflab.diffeo import (
    IntervalUnion,
    change_of_variables,
    compose,
    from_lift_polynomial,
    from_log_derivative,
    invert,
    pushforward_measure,
    regularity_check,
    rotation,
    substitution_isometry,
)
from difflab.realfn import BVFunc, separated_family_member
from difflab.sampling import random_bvfunc, random_diffeo, random_piecewise_polynomial, periodize


def test_pushforward_polynomial_map():
    f = from_lift_polynomial([0.0, 0.5, 0.5])
    assert pushforward_measure(f, IntervalUnion.of((0.0, 0.5))) == pytest.approx(0.375, abs=1e-14)
    E = IntervalUnion.of((0.0, 0.25), (0.5, 1.0))
    assert pushforward_measure(f, E) == pytest.approx((0.25 + 0.0625) / 2 + 1 - 0.375, abs=1e-14)


def test_substitution_polynomial_map():
    f = from_lift_polynomial([0.0, 0.5, 0.5])
    s = change_of_variables(lambda y: np.cos(y), f, (0.0, 0.5))
    assert s.direct == pytest.approx(np.sin(0.375), abs=1e-14)
    assert s.residual < 1e-13


def test_circle_substitution_requires_whole_circle():
    with pytest.raises(ValueError):
        change_of_variables(np.cos, rotation(0.2), (0.0, 0.5))
    g = lambda y: np.cos(2 * np.pi * np.asarray(y)) ** 2
    assert change_of_variables(g, rotation(0.2)).residual < 1e-13


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["interval", "circle"]))
def test_random_substitution(seed, manifold):
    rng = np.random.default_rng(seed)
    u = random_diffeo(rng, manifold, 1, singular=bool(seed % 2))
    g = random_piecewise_polynomial(rng, pieces=3, degree=3)
    if manifold == "circle":
        g = periodize(g, 1)
    assert change_of_variables(g, u).residual < 1e-9


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_isometry_on_random_density(seed):
    rng = np.random.default_rng(seed)
    f = random_diffeo(rng, "interval", 1)
    rho = random_piecewise_polynomial(rng, pieces=2, degree=3)
    assert substitution_isometry(rho, f).residual < 1e-9


def test_regularity_reports():
    ac = regularity_check(from_log_derivative(BVFunc.polynomial([0.0, 1.0, -1.0])))
    assert ac.singular_empty and ac.log_derivative_variation == pytest.approx(0.5)
    bv = regularity_check(from_log_derivative(separated_family_member(1.0, 0.0, 6)))
    assert not bv.singular_empty
    assert bv.log_derivative_variation == pytest.approx(1.0)
    composite = regularity_check(compose(rotation(0.1), rotation(0.2)))
    assert composite.log_derivative_variation == 0.0
