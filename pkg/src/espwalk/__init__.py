"""Quantum walks on normal Cayley graphs of extraspecial 2-groups."""

from .cayley import ConnectionSet, SpectrumSummary, adjacency_matrix, complement, e_y_table, spectrum, validate
from .chartable import Character, EigenProjection, characters, char_value, idempotent, projections_for
from .criteria import (
    DyadicTime,
    FrReport,
    MixingReport,
    PstReport,
    complement_pst,
    fr_classify,
    gcd_power2_check,
    hadamard_bound,
    mixing_check,
    phi_sets,
    pst_decision,
    spread_connection,
    spread_predict,
    strongly_cospectral_decision,
)
from .extraspecial import ExtraspecialGroup, GroupElement, IsoType, class_structure_p, construct
from .gf2core import INFINITY, GF2Vector, PartialSpread, dot, nu2, rank, regular_spread, spread_points, validate_spread
from .walk import WalkOracle, detect_fr, detect_pst, transition

__version__ = "0.1.0"

__all__ = [
    "Character",
    "ConnectionSet",
    "DyadicTime",
    "EigenProjection",
    "ExtraspecialGroup",
    "FrReport",
    "GF2Vector",
    "GroupElement",
    "INFINITY",
    "IsoType",
    "MixingReport",
    "PartialSpread",
    "PstReport",
    "SpectrumSummary",
    "WalkOracle",
    "adjacency_matrix",
    "char_value",
    "characters",
    "class_structure_p",
    "complement",
    "complement_pst",
    "construct",
    "detect_fr",
    "detect_pst",
    "dot",
    "e_y_table",
    "fr_classify",
    "gcd_power2_check",
    "hadamard_bound",
    "idempotent",
    "mixing_check",
    "nu2",
    "phi_sets",
    "projections_for",
    "pst_decision",
    "rank",
    "regular_spread",
    "spectrum",
    "spread_connection",
    "spread_points",
    "spread_predict",
    "strongly_cospectral_decision",
    "transition",
    "validate",
    "validate_spread",
]
