import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from difflab.realfn import QuadratureError, gauss_legendre, integrate


def test_sqrt_endpoint_singularity():
    res = integrate(np.sqrt, 0.0, 1.0, tol=1e-11)
    assert res.value == pytest.approx(2.0 / 3.0, abs=1e-11)
    assert res.error <= 1e-11


def test_kink_given_as_point():
    res = integrate(lambda x: np.abs(x - 0.3), 0.0, 1.0, points=[0.3])
    assert res.value == pytest.approx(0.29, abs=1e-14)
    assert res.intervals == 2


def test_jump_without_hint_still_converges():
    res = integrate(lambda x: np.where(x < 1 / 3, 1.0, 2.0), 0.0, 1.0, tol=1e-9)
    assert res.value == pytest.approx(5.0 / 3.0, abs=1e-9)


def test_degenerate_and_reversed_intervals():
    assert integrate(np.exp, 0.5, 0.5).value == 0.0
    with pytest.raises(ValueError):
        integrate(np.exp, 1.0, 0.0)


def test_nonfinite_integrand_raises():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.where(x > 0.25, np.inf, 0.0), 0.0, 1.0)


@pytest.mark.parametrize("n", [1, 4, 16, 24])
def test_gauss_legendre_exact_to_degree(n):
    x, w = gauss_legendre(n)
    assert w.sum() == pytest.approx(1.0, abs=1e-15)
    deg = 2 * n - 1
    assert np.dot(w, x**deg) == pytest.approx(1.0 / (deg + 1), rel=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(0.1, 5.0))
def test_exponential_matches_closed_form(c, length):
    res = integrate(lambda x: np.exp(c * x), 0.0, length, tol=1e-10)
    exact = length if c == 0 else math.expm1(c * length) / c
    assert abs(res.value - exact) <= 1e-10 * max(1.0, abs(exact))
