"""Exact arithmetic: rationals, Q(a), phased scalars and truncated series."""

from .laurent import (
    INF,
    LaurentSeries,
    PrecisionError,
    even_part,
    odd_part,
    polynomial,
    principal_part,
    series_exp,
    series_log,
    series_mul,
    series_reversion,
)
from .multiseries import PER_VARIABLE, TOTAL, MultiSeries
from .phased import PhasedScalar
from .ratfn import (
    PolyA,
    RatFnA,
    Rational,
    coefficient_array,
    format_rational,
    parse_rational,
    ratfn_normalize,
    to_json_value,
)

__all__ = [
    "INF",
    "LaurentSeries",
    "MultiSeries",
    "PER_VARIABLE",
    "PhasedScalar",
    "PolyA",
    "PrecisionError",
    "RatFnA",
    "Rational",
    "TOTAL",
    "coefficient_array",
    "even_part",
    "format_rational",
    "odd_part",
    "parse_rational",
    "polynomial",
    "principal_part",
    "ratfn_normalize",
    "series_exp",
    "series_log",
    "series_mul",
    "series_reversion",
    "to_json_value",
]
