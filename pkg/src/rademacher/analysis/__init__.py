"""Empirical analyses of coefficient sequences."""
from .encounters import EncounterRow, Table24Row, close_encounter, table_24l
from .extrema import ExtremaReport, WindowResidues, congruence_scan, extrema_of, extrema_ratios, find_extrema
from .topdown import (
    BUILTIN_PREFACTORS,
    PREFACTOR_01,
    PREFACTOR_12,
    CoeffInRFit,
    Conjecture2Entry,
    Prefactor,
    TopDownFormula,
    coeff_in_r_scan,
    conjecture2_check,
    fit_topdown,
)

__all__ = [
    "BUILTIN_PREFACTORS",
    "CoeffInRFit",
    "Conjecture2Entry",
    "EncounterRow",
    "ExtremaReport",
    "PREFACTOR_01",
    "PREFACTOR_12",
    "Prefactor",
    "Table24Row",
    "TopDownFormula",
    "WindowResidues",
    "close_encounter",
    "coeff_in_r_scan",
    "congruence_scan",
    "conjecture2_check",
    "extrema_of",
    "extrema_ratios",
    "find_extrema",
    "fit_topdown",
    "table_24l",
]
