"""Triangulation and G2 invariant counting: exact sequences, certified constants, asymptotics."""

from fractions import Fraction

from ._core import (
    CertificationError,
    ExactLimitError,
    InvariantViolation,
    RefinementError,
    SpecParseError,
    an_sequence,
    analyze_spec,
    asym_an,
    asym_bn,
    bn_exact,
    bn_scaled,
    bn_sequence,
    constants,
    expansion,
    saddle,
)
from ._core import kappa as _kappa


def kappa(i_max: int = 15) -> list[Fraction]:
    """kappa_7 .. kappa_{i_max} as exact fractions."""
    return [Fraction(num, den) for num, den in _kappa(i_max)]


__all__ = [
    "CertificationError",
    "ExactLimitError",
    "InvariantViolation",
    "RefinementError",
    "SpecParseError",
    "an_sequence",
    "analyze_spec",
    "asym_an",
    "asym_bn",
    "bn_exact",
    "bn_scaled",
    "bn_sequence",
    "constants",
    "expansion",
    "kappa",
    "saddle",
]
