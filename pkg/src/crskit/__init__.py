"""crskit: decide whether a CR-solvmanifold triple is locally Kaehler."""

__version__ = "0.1.0"

from .crsmodel import CRSTriple, adjoint_on_m, build_crs, compute_m, nilpotent_subtriple
from .kahlerdecide import (
    Verdict,
    classify_low_codim,
    decide_kahler_totally_real,
    decide_locally_kahler,
    decide_nilpotent_locally_kahler,
    necessary_conditions_report,
)
from .truth import Truth

__all__ = [
    "CRSTriple",
    "Truth",
    "Verdict",
    "adjoint_on_m",
    "build_crs",
    "classify_low_codim",
    "compute_m",
    "decide_kahler_totally_real",
    "decide_locally_kahler",
    "decide_nilpotent_locally_kahler",
    "necessary_conditions_report",
    "nilpotent_subtriple",
]
