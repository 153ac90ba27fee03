"""Oracles, generators, fuzzing and the worked examples."""

from .builtins import builtin_comparison, builtin_ellsberg, builtin_lottery, lottery_world
from .families import enumerate_families, majority_family
from .fuzz import SUITES, FuzzReport, fuzz
from .generators import (
    FormulaSpec,
    ModelSpec,
    random_cn_model,
    random_formula,
    random_formulas,
    random_partition,
    random_weight_model,
)
from .schemas import CN_AXIOMS, STP, TOTALITY, Schema
from .search import find_countermodel, weight_representable

__all__ = [
    "builtin_comparison", "builtin_ellsberg", "builtin_lottery", "lottery_world",
    "enumerate_families", "majority_family", "SUITES", "FuzzReport", "fuzz",
    "FormulaSpec", "ModelSpec", "random_cn_model", "random_formula", "random_formulas",
    "random_partition", "random_weight_model", "CN_AXIOMS", "STP", "TOTALITY", "Schema",
    "find_countermodel", "weight_representable",
]
