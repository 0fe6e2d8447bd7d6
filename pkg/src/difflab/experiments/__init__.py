"""Seeded experiments and their report format."""

from .report import ExperimentReport, resolve_tol
from .runs import (
    recompute_verdicts,
    run_ac_continuity,
    run_bv_discontinuity,
    run_change_of_variables,
    run_separated_family,
    run_variation_invariance,
    run_wiener_young,
)

__all__ = [
    "ExperimentReport",
    "recompute_verdicts",
    "resolve_tol",
    "run_ac_continuity",
    "run_bv_discontinuity",
    "run_change_of_variables",
    "run_separated_family",
    "run_variation_invariance",
    "run_wiener_young",
]
