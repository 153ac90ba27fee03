"""Workbench for conditional neighbourhood logic.

Models of three kinds (conditional neighbourhood, weight, comparison),
a formula language with belief, comparison and announcement operators,
truth evaluation, updates, translations and checking tools.
"""

from ._kernels import BACKEND
from .cn_model import CnModel, NeighbourhoodFamily, ValidationReport, Violation, derive_cells, derived_check, expand_table, validate
from .comparison import ComparisonModel, comparison_principle_holds, eval1, eval2, expressivity_separation
from .dynamics import announce_cut, announce_delete, check_reduction, compile_announcements, eval_pc, eval_pcpm
from .errors import CnLogicError
from .semantics import extension, holds
from .syntax import Language, desugar, language_of, parse, to_text, tr1, tr2
from .weight_model import WeightModel, check_a4, e_holds, eval_weight, induce_cn, sure_thing

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CnModel", "NeighbourhoodFamily", "ValidationReport", "Violation", "derive_cells",
    "derived_check", "expand_table", "validate", "ComparisonModel", "comparison_principle_holds",
    "eval1", "eval2", "expressivity_separation", "announce_cut", "announce_delete", "check_reduction",
    "compile_announcements", "eval_pc", "eval_pcpm", "CnLogicError", "extension", "holds", "Language",
    "desugar", "language_of", "parse", "to_text", "tr1", "tr2", "WeightModel", "check_a4", "e_holds",
    "eval_weight", "induce_cn", "sure_thing",
]
