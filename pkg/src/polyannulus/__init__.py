"""Annulus bounds on polynomial roots from norms of (balanced) companion-matrix powers."""

from .balance import DiagonalScaling, balance, balance_scaled, balance_sweep
from .bounds import (
    Annulus,
    BoundTable,
    DeflationRecord,
    SpreadBounds,
    annulus,
    bk,
    bound_table,
    deflate_zero_roots,
    lower_bound,
    spread_bounds,
    upper_bound,
)
from .companion import (
    CompanionMatrix,
    Form,
    char_poly,
    custom_companion,
    frobenius,
    frobenius_transpose,
    verify_companion,
)
from .errors import (
    AllZero,
    DidNotConverge,
    NonSquare,
    NotMonic,
    PolyAnnulusError,
    TooLarge,
    ZeroConstantTerm,
)
from .oracle import AberthConfig, aberth_roots, spectral_radius_reference
from .poly import Polynomial, RootSet, derivative, evaluate, make_poly, monicize, reversal
from .powers import LogMagnitude, Norm, ScaledMatrix, companion_power, norm, root_norm

__version__ = "0.1.0"

__all__ = [
    "DiagonalScaling",
    "balance",
    "balance_scaled",
    "balance_sweep",
    "Annulus",
    "BoundTable",
    "DeflationRecord",
    "SpreadBounds",
    "annulus",
    "bk",
    "bound_table",
    "deflate_zero_roots",
    "lower_bound",
    "spread_bounds",
    "upper_bound",
    "CompanionMatrix",
    "Form",
    "char_poly",
    "custom_companion",
    "frobenius",
    "frobenius_transpose",
    "verify_companion",
    "AllZero",
    "DidNotConverge",
    "NonSquare",
    "NotMonic",
    "PolyAnnulusError",
    "TooLarge",
    "ZeroConstantTerm",
    "AberthConfig",
    "aberth_roots",
    "spectral_radius_reference",
    "Polynomial",
    "RootSet",
    "derivative",
    "evaluate",
    "make_poly",
    "monicize",
    "reversal",
    "LogMagnitude",
    "Norm",
    "ScaledMatrix",
    "companion_power",
    "norm",
    "root_norm",
]
