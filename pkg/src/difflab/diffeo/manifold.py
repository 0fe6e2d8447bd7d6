"""Manifolds, regularity tags and finite unions of intervals."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..realfn import Interval


class Manifold(enum.Enum):
    INTERVAL = "interval"
    CIRCLE = "circle"

    @property
    def is_circle(self) -> bool:
        return self is Manifold.CIRCLE

    @classmethod
    def parse(cls, value) -> "Manifold":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class RegularityClass(enum.Enum):
    """``CK``: ``C^k`` only; ``CK_AC``: ``f^(k)`` absolutely continuous;
    ``CK_BV``: ``f^(k)`` continuous of bounded variation with a singular part."""

    CK = "Ck"
    CK_AC = "CkAC"
    CK_BV = "CkBV"

    @staticmethod
    def join(a: "RegularityClass", b: "RegularityClass") -> "RegularityClass":
        """Class of a composition: the weaker of the two factors."""
        order = [RegularityClass.CK_AC, RegularityClass.CK, RegularityClass.CK_BV]
        return max(a, b, key=order.index)


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise disjoint closed subintervals of ``I``."""

    parts: tuple[Interval, ...] = ()

    def __post_init__(self):
        parts = tuple(p if isinstance(p, Interval) else Interval(*p) for p in self.parts)
        parts = tuple(sorted(parts, key=lambda p: (p.lo, p.hi)))
        for left, right in zip(parts, parts[1:]):
            if right.lo < left.hi:
                raise ValueError(f"intervals [{left.lo}, {left.hi}] and [{right.lo}, {right.hi}] overlap")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *pairs) -> "IntervalUnion":
        return cls(tuple(Interval(float(a), float(b)) for a, b in pairs))

    @property
    def measure(self) -> float:
        return float(np.sum([p.length for p in self.parts]))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        """Disjoint union; raises if the two unions overlap."""
        return IntervalUnion(self.parts + other.parts)
