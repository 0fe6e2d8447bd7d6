import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from difflab.diffeo import IntervalUnion, InversionError, Manifold, RegularityClass, solve_increasing


def test_cube_root_to_ulps():
    y = np.linspace(-8.0, 8.0, 33)
    x = solve_increasing(lambda t: t**3 + t, lambda t: 3 * t**2 + 1, y, -3.0, 3.0)
    np.testing.assert_allclose(x**3 + x, y, atol=1e-14)


def test_endpoint_roots_are_exact():
    x = solve_increasing(np.exp, np.exp, np.array([1.0, np.e]), 0.0, 1.0)
    assert x.tolist() == [0.0, 1.0]


def test_flat_derivative_falls_back_to_bisection():
    x = solve_increasing(lambda t: t**3, lambda t: 0.0 * t, np.array([0.125]), 0.0, 1.0)
    assert float(x[0]) == pytest.approx(0.5, abs=1e-12)


def test_iteration_cap():
    with pytest.raises(InversionError):
        solve_increasing(lambda t: t**3, lambda t: 0.0 * t, np.array([0.2]), 0.0, 1.0, max_iter=3)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.5, 20.0))
def test_scalar_round_trip(y, c):
    f = lambda t: np.expm1(c * t) / np.expm1(c)
    x = solve_increasing(f, lambda t: c * np.exp(c * t) / np.expm1(c), np.array(y), 0.0, 1.0)
    assert float(f(x)) == pytest.approx(y, abs=1e-13)


def test_manifold_parse():
    assert Manifold.parse("circle") is Manifold.CIRCLE
    assert Manifold.parse(Manifold.INTERVAL) is Manifold.INTERVAL
    with pytest.raises(ValueError):
        Manifold.parse("torus")


def test_regularity_join():
    join = RegularityClass.join
    assert join(RegularityClass.CK_AC, RegularityClass.CK_BV) is RegularityClass.CK_BV
    assert join(RegularityClass.CK, RegularityClass.CK_AC) is RegularityClass.CK
    assert join(RegularityClass.CK_AC, RegularityClass.CK_AC) is RegularityClass.CK_AC


def test_interval_union():
    E = IntervalUnion.of((0.5, 0.75), (0.0, 0.25))
    assert [(p.lo, p.hi) for p in E] == [(0.0, 0.25), (0.5, 0.75)]
    assert E.measure == 0.5
    assert len(E.union(IntervalUnion.of((0.8, 0.9)))) == 3
    with pytest.raises(ValueError, match="overlap"):
        IntervalUnion.of((0.0, 0.5), (0.4, 0.6))
