import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from difflab.realfn import dumps, from_descriptor, loads, separated_family_member, to_descriptor
from difflab.sampling import random_bvfunc


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 3))
def test_round_trip_is_exact(seed, stairs):
    F = random_bvfunc(np.random.default_rng(seed), staircases=stairs)
    G = loads(dumps(F))
    assert G == F
    x = np.linspace(0, 1, 65)
    assert np.array_equal(G(x), F(x))


def test_schema():
    d = to_descriptor(separated_family_member(1.0, 0.05, depth=7))
    assert set(d) == {"ac", "singular"}
    assert set(d["singular"][0]) == {"base", "depth", "a", "b", "scale", "offset"}
    assert json.loads(json.dumps(d)) == d


def test_unknown_fields_rejected():
    d = to_descriptor(separated_family_member(1.0))
    d["singular"][0]["colour"] = "red"
    with pytest.raises(ValueError, match="unknown"):
        from_descriptor(d)


def test_missing_ac_means_zero():
    F = from_descriptor({"singular": []})
    assert F(np.array([0.3]))[0] == 0.0
