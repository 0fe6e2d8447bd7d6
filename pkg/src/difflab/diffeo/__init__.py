"""Orientation-preserving diffeomorphisms of the interval and the circle."""

from .bell import chain_jet, complete_bell, inverse_jet, partial_bell
from .calculus import (
    RegularityReport,
    Substitution,
    change_of_variables,
    pushforward_measure,
    regularity_check,
    substitution_isometry,
)
from .core import (
    Composition,
    Diffeo,
    ExpIntegralDiffeo,
    Inverse,
    RigidMap,
    Tower,
    compose,
    derivative_tower,
    PolynomialDiffeo,
    from_lift_polynomial,
    from_log_derivative,
    identity,
    invert,
    rotation,
)
from .families import interval_shift_map
from .descriptor import diffeo_from_descriptor, diffeo_to_descriptor
from .manifold import IntervalUnion, Manifold, RegularityClass
from .roots import InversionError, solve_increasing

__all__ = [
    "Composition",
    "Diffeo",
    "ExpIntegralDiffeo",
    "IntervalUnion",
    "Inverse",
    "InversionError",
    "Manifold",
    "RegularityClass",
    "RegularityReport",
    "PolynomialDiffeo",
    "RigidMap",
    "Substitution",
    "Tower",
    "chain_jet",
    "change_of_variables",
    "complete_bell",
    "compose",
    "derivative_tower",
    "diffeo_from_descriptor",
    "diffeo_to_descriptor",
    "from_lift_polynomial",
    "from_log_derivative",
    "identity",
    "inverse_jet",
    "interval_shift_map",
    "invert",
    "partial_bell",
    "pushforward_measure",
    "regularity_check",
    "rotation",
    "solve_increasing",
    "substitution_isometry",
]
