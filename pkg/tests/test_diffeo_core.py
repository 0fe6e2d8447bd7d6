import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from difflab.diffeo import (
    Composition,
    ExpIntegralDiffeo,
    Inverse,
    Manifold,
    RegularityClass,
    compose,
    derivative_tower,
    from_lift_polynomial,
    from_log_derivative,
    identity,
    invert,
    rotation,
)
from difflab.realfn import BVFunc, PiecewisePolynomial, integrate, separated_family_member
from difflab.sampling import random_diffeo

X = np.linspace(0.0, 1.0, 41)


def _expo(c):
    return from_log_derivative(BVFunc.polynomial([0.0, c]))


def test_exponential_map_closed_form():
    c = 1.7
    f = _expo(c)
    np.testing.assert_allclose(f(X), np.expm1(c * X) / np.expm1(c), atol=1e-15)
    jet = f.jet(X, 3)
    for j, d in enumerate(jet, start=1):
        np.testing.assert_allclose(d, c**j * np.exp(c * X) / np.expm1(c), rtol=1e-13)
    assert f.normalizer == pytest.approx(np.expm1(c) / c, rel=1e-15)
    assert f.regularity is RegularityClass.CK_AC


def test_inverse_closed_form():
    c = 1.7
    g = invert(_expo(c))
    assert isinstance(g, Inverse)
    np.testing.assert_allclose(g(X), np.log1p(X * np.expm1(c)) / c, atol=1e-15)
    np.testing.assert_allclose(g.derivative(X), np.expm1(c) / (c * (1 + X * np.expm1(c))), rtol=1e-13)
    assert invert(g) is g.f


def test_polynomial_map_oracles():
    f = from_lift_polynomial([0.0, 0.5, 0.5], k=2)
    ff = compose(f, f)
    assert float(ff.derivative(np.array(0.0), 2)) == pytest.approx(0.75, abs=1e-15)
    inv = invert(f).jet(np.array(0.0), 2)
    assert [float(v) for v in inv] == pytest.approx([2.0, -8.0], abs=1e-9)
    with pytest.raises(ValueError):
        from_lift_polynomial([0.0, 2.0, -1.5])


def test_rotation_and_identity():
    r = rotation(0.3)
    assert r.lift(np.array([0.0, 0.9])).tolist() == pytest.approx([0.3, 1.2])
    assert r(np.array([0.9]))[0] == pytest.approx(0.2)
    assert invert(r).shift == pytest.approx(0.7)
    assert rotation(-1e-20).shift == 0.0
    assert identity().regularity is RegularityClass.CK_AC
    assert r.wrap_point() == pytest.approx(0.7)


def test_circle_lift_contract():
    rng = np.random.default_rng(3)
    f = random_diffeo(rng, "circle", 2)
    p = float(f.lift(np.array(0.0)))
    assert 0.0 <= p < 1.0
    x = np.linspace(-2.0, 2.0, 81)
    np.testing.assert_allclose(f.lift(x + 1.0), f.lift(x) + 1.0, atol=1e-14)
    q = f.wrap_point()
    assert float(f.lift(np.array(q))) == pytest.approx(1.0, abs=1e-14)
    y = np.linspace(0, 1, 50, endpoint=False)
    np.testing.assert_allclose(f(f.preimage(y)), y, atol=1e-13)


def test_circle_compatibility_is_checked():
    with pytest.raises(ValueError, match="circle compatibility"):
        from_log_derivative(BVFunc.polynomial([0.0, 1.0]), "circle")
    wobble = BVFunc.polynomial([0.0, 1.0, -1.0])
    with pytest.raises(ValueError, match=r"G\^\(1\)"):
        from_log_derivative(wobble, "circle", k=2)


def test_smoothness_and_singular_checks():
    kinked = BVFunc(PiecewisePolynomial([0.0, 0.5, 1.0], [[0.0, 1.0], [0.5, -1.0]]))
    from_log_derivative(kinked, k=1)
    with pytest.raises(ValueError, match="jumps"):
        from_log_derivative(kinked, k=2)
    with pytest.raises(ValueError, match="singular"):
        from_log_derivative(separated_family_member(1.0, 0.0, 6), k=2)
    with pytest.raises(ValueError):
        from_log_derivative(BVFunc.zero(), rotation_offset=0.5)


def test_singular_map_derivative_nan_on_rises_only():
    f = from_log_derivative(separated_family_member(1.0, 0.0, 6))
    assert f.regularity is RegularityClass.CK_BV
    d1 = f.jet(np.array([0.5]), 1)[0]
    assert np.isfinite(d1[0])
    d2 = f.jet(np.array([1 / 6]), 2)[1]
    assert np.isnan(d2[0])


def test_towers():
    f = _expo(1.0)
    assert isinstance(f, ExpIntegralDiffeo)
    with pytest.raises(ValueError):
        derivative_tower(f, 3)
    t = derivative_tower(f, 2)
    assert t(np.array([0.0]))[0] == pytest.approx(1 / math.expm1(1.0))


def test_composition_of_rotations_on_circle():
    h = compose(rotation(0.75), rotation(0.5))
    assert isinstance(h, Composition)
    assert float(h(np.array(0.0))) == pytest.approx(0.25)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["interval", "circle"]), st.integers(1, 3))
def test_group_laws(seed, manifold, k):
    rng = np.random.default_rng(seed)
    f, g, h = (random_diffeo(rng, manifold, k) for _ in range(3))
    left = compose(compose(f, g), h)
    right = compose(f, compose(g, h))
    np.testing.assert_allclose(left(X[:-1]), right(X[:-1]), atol=1e-12)
    back = compose(invert(f), f)
    gap = np.abs(back.lift(X) - X)
    if Manifold.parse(manifold).is_circle:
        gap = np.abs(gap - np.round(gap))
    assert gap.max() < 1e-12
    assert compose(f, g).regularity is RegularityClass.CK_AC


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["interval", "circle"]))
def test_log_derivative_handles(seed, manifold):
    rng = np.random.default_rng(seed)
    f, g = random_diffeo(rng, manifold, 1), random_diffeo(rng, manifold, 1)
    x = np.linspace(0.01, 0.99, 23)
    for h in (f, compose(f, g), invert(f)):
        np.testing.assert_allclose(h.log_derivative()(x), np.log(h.derivative(x)), atol=1e-12)


def test_singular_lift_matches_adaptive_quadrature():
    G = separated_family_member(1.0, 0.03, 9)
    f = from_log_derivative(G)
    exp_g = lambda x: np.exp(G(x))
    pts = G.breakpoints()
    Z = integrate(exp_g, 0.0, 1.0, points=pts, tol=1e-13).value
    assert f.normalizer == pytest.approx(Z, rel=1e-13)
    for x in (0.2, 0.31, 0.5, 0.77):
        direct = integrate(exp_g, 0.0, x, points=pts, tol=1e-13).value / Z
        assert float(f(np.array(x))) == pytest.approx(direct, abs=1e-13)
