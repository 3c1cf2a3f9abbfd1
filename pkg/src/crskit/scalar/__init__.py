"""Scalars: exact Q(i, sqrt d) numbers, complex intervals and polynomials."""

from .exact import Exact, exact, format_exact, is_exact, parse_exact
from .interval import DEFAULT_PRECISION, CInterval, interval
from .poly import Polynomial, all_roots_purely_imaginary, interval_roots_imaginary, sturm_real_root_count

__all__ = [
    "CInterval",
    "DEFAULT_PRECISION",
    "Exact",
    "Polynomial",
    "all_roots_purely_imaginary",
    "exact",
    "format_exact",
    "interval",
    "interval_roots_imaginary",
    "is_exact",
    "parse_exact",
    "sturm_real_root_count",
]
