"""Real functions on the unit interval: representation, calculus and variation."""

from .descriptor import dumps, from_descriptor, loads, to_descriptor
from .families import separated_family_member
from .functions import (
    BVFunc,
    ComposedFunction,
    Density,
    Difference,
    DomainError,
    Interval,
    LinearCombination,
    combine,
    compose_with,
    derivative_ae,
    lebesgue_parts,
    linear_combine,
    structural_points,
    translate,
)
from .norms import l1_distance, l1_norm, uniform_norm
from .polynomial import PiecewisePolynomial, linear_combination
from .quadrature import QuadratureError, QuadResult, gauss_legendre, integrate
from .staircase import SingularStaircase, cantor, cantor_eval, rise_overlap
from .variation import (
    OracleResult,
    VariationNotConverged,
    bv_norm,
    structural_variation,
    total_variation,
    variation_oracle,
)


def evaluate(F, x):
    """Evaluate ``F`` at ``x`` in ``I``; raises :class:`DomainError` outside it."""
    return F(x)


__all__ = [
    "BVFunc",
    "ComposedFunction",
    "Density",
    "Difference",
    "DomainError",
    "Interval",
    "LinearCombination",
    "OracleResult",
    "PiecewisePolynomial",
    "QuadResult",
    "QuadratureError",
    "SingularStaircase",
    "VariationNotConverged",
    "bv_norm",
    "cantor",
    "cantor_eval",
    "combine",
    "compose_with",
    "derivative_ae",
    "dumps",
    "evaluate",
    "from_descriptor",
    "gauss_legendre",
    "integrate",
    "l1_distance",
    "l1_norm",
    "lebesgue_parts",
    "linear_combination",
    "linear_combine",
    "loads",
    "rise_overlap",
    "separated_family_member",
    "structural_points",
    "structural_variation",
    "to_descriptor",
    "total_variation",
    "translate",
    "uniform_norm",
    "variation_oracle",
]
