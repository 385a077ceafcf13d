"""divimat: exact arithmetic for matrix divisibility sequences."""

from .poly import SPoly, InexactDivisionError, reduce_mod_curve, ring
from .intmat import (
    Cokernel,
    EnumerationBoundError,
    IMat,
    cokernel,
    divisor_classes,
    hnf,
    hnf_with_transform,
    right_divides,
    snf,
)

__all__ = [
    "SPoly",
    "InexactDivisionError",
    "reduce_mod_curve",
    "ring",
    "IMat",
    "Cokernel",
    "EnumerationBoundError",
    "cokernel",
    "divisor_classes",
    "hnf",
    "hnf_with_transform",
    "right_divides",
    "snf",
]
