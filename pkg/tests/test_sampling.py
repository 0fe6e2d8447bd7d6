import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from difflab.diffeo import RegularityClass
from difflab.sampling import (
    MIN_GAP,
    periodize,
    random_breakpoints,
    random_diffeo,
    random_log_derivative,
    random_piecewise_polynomial,
)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 19))
def test_breakpoints(seed, pieces):
    bp = random_breakpoints(np.random.default_rng(seed), pieces)
    assert bp[0] == 0.0 and bp[-1] == 1.0
    assert np.all(np.diff(bp) >= MIN_GAP - 1e-15)


def test_too_many_pieces():
    with pytest.raises(ValueError):
        random_breakpoints(np.random.default_rng(0), 21)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_periodize(seed, order):
    p = random_piecewise_polynomial(np.random.default_rng(seed), degree=order + 2, smoothness=order - 1)
    q = periodize(p, order)
    for m in range(order):
        d = q.derivative(m) if m else q
        assert float(d(np.array(1.0))) == pytest.approx(float(d(np.array(0.0))), abs=1e-10)


def test_same_seed_same_draw():
    a = random_diffeo(np.random.default_rng(11), "circle", 2)
    b = random_diffeo(np.random.default_rng(11), "circle", 2)
    x = np.linspace(0, 1, 9)
    assert np.array_equal(a.lift(x), b.lift(x))


def test_singular_only_for_k1():
    G = random_log_derivative(np.random.default_rng(0), "circle", 1, singular=True)
    assert G.singular
    with pytest.raises(ValueError):
        random_log_derivative(np.random.default_rng(0), "interval", 2, singular=True)
    f = random_diffeo(np.random.default_rng(0), "interval", 1, singular=True)
    assert f.regularity is RegularityClass.CK_BV
