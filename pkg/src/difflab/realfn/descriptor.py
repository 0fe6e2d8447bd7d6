"""JSON descriptors for :class:`BVFunc` values.

Floats are written with ``repr`` precision by :mod:`json`, so a round trip
reproduces every breakpoint, coefficient and staircase parameter bit for bit.
"""

from __future__ import annotations

import json

from .functions import BVFunc
from .polynomial import PiecewisePolynomial
from .staircase import SingularStaircase

_STAIRCASE_KEYS = ("base", "depth", "a", "b", "scale", "offset")


def to_descriptor(F: BVFunc) -> dict:
    return {
        "ac": {
            "breakpoints": F.ac.breakpoints.tolist(),
            "coeffs": F.ac.coeffs.tolist(),
        },
        "singular": [
            {"base": s.base, "depth": int(s.depth), "a": s.a, "b": s.b, "scale": s.scale, "offset": s.offset}
            for s in F.singular
        ],
    }


def from_descriptor(d: dict) -> BVFunc:
    ac = d.get("ac")
    poly = (
        PiecewisePolynomial.zero()
        if ac is None
        else PiecewisePolynomial(ac["breakpoints"], ac["coeffs"], check=False)
    )
    singular = []
    for entry in d.get("singular", []):
        unknown = set(entry) - set(_STAIRCASE_KEYS)
        if unknown:
            raise ValueError(f"unknown staircase fields: {sorted(unknown)}")
        singular.append(SingularStaircase(**entry))
    return BVFunc(poly, tuple(singular))


def dumps(F: BVFunc, **kwargs) -> str:
    return json.dumps(to_descriptor(F), **kwargs)


def loads(text: str) -> BVFunc:
    return from_descriptor(json.loads(text))
