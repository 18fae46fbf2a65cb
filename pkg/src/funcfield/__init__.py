"""Exact computations over function fields F_p(t): Laurent series, automatic
sequences, t-adic Littlewood scores, ultrametric lattice reduction, the
quadratic extension F(beta) with beta^2 = 1 + 1/t, and restriction of scalars
SL_2(K x K) -> SL_4(K)."""

from .arith import (
    NEG_INF,
    FieldElem,
    LaurentSeries,
    PairElem,
    Poly,
)
from .errors import DomainError, PrecisionError
from .quadext import BetaSeries, QuadElem, RatFunc

__all__ = [
    "NEG_INF",
    "FieldElem",
    "LaurentSeries",
    "PairElem",
    "Poly",
    "BetaSeries",
    "QuadElem",
    "RatFunc",
    "DomainError",
    "PrecisionError",
]
