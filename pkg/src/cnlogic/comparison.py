"""Comparison models: worlds plus a bare relation between propositions.

Two readings share one structure.  ``eval2`` interprets comparison
formulas directly: ``x >= y`` holds iff ``([x], [y])`` is in the relation.
``eval1`` interprets belief formulas: ``B(x, y)`` holds iff
``([x & y], [x & ~y])`` is in the relation.  Truth never depends on the
world, so extensions are always empty or full.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import SizeCapError, UnknownAtomError, UnknownWorldError, UnsupportedLanguageError
from .semantics import _ext
from .syntax import (
    DEFAULT_AGENT,
    TOP,
    And,
    AnnFact,
    AnnValue,
    Atom,
    Bel,
    Formula,
    Geq,
    Not,
    desugar,
    size,
    subformulas,
    to_text,
)
from .worldset import full_mask

PRINCIPLE_CAP = 4


class ComparisonModel:
    kind = "comparison"

    def __init__(self, worlds: Sequence[str], geq: Iterable[tuple[int, int]], valuation: dict[str, int]):
        self.worlds = tuple(worlds)
        self.index = {w: i for i, w in enumerate(self.worlds)}
        self.full = full_mask(len(self.worlds))
        self.geq = frozenset((int(x), int(y)) for x, y in geq)
        self.valuation = dict(valuation)

    def __repr__(self) -> str:
        return f"ComparisonModel(worlds={list(self.worlds)}, pairs={len(self.geq)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComparisonModel):
            return NotImplemented
        return (self.worlds, self.geq, self.valuation) == (other.worlds, other.geq, other.valuation)

    __hash__ = None

    def atom_mask(self, name: str) -> int:
        try:
            return self.valuation[name]
        except KeyError:
            raise UnknownAtomError(f"atom {name!r} has no valuation") from None

    def bel_mask(self, agent: str, cond: int, body: int) -> int:
        return self.full if (cond & body, cond & ~body & self.full) in self.geq else 0

    def geq_mask(self, agent: str, left: int, right: int) -> int:
        return self.full if (left, right) in self.geq else 0

    def restrict(self, mask: int):
        raise UnsupportedLanguageError("comparison models have no announcement semantics")

    cut = restrict


def _check(f: Formula, banned: tuple, what: str) -> None:
    for g in subformulas(f):
        if isinstance(g, banned):
            raise UnsupportedLanguageError(f"{type(g).__name__} is not part of {what}")


def extension1(n: ComparisonModel, f: Formula) -> int:
    f = desugar(f, "cn")
    _check(f, (Geq, AnnFact, AnnValue), "the belief language")
    return _ext(n, f, {})


def extension2(n: ComparisonModel, f: Formula) -> int:
    f = desugar(f, "qp")
    _check(f, (Bel, AnnFact, AnnValue), "the comparison language")
    return _ext(n, f, {})


def _at(n: ComparisonModel, world: str, mask: int) -> bool:
    try:
        return bool(mask >> n.index[world] & 1)
    except KeyError:
        raise UnknownWorldError(f"no world named {world!r}") from None


def eval1(n: ComparisonModel, world: str, f: Formula) -> bool:
    return _at(n, world, extension1(n, f))


def eval2(n: ComparisonModel, world: str, f: Formula) -> bool:
    return _at(n, world, extension2(n, f))


# ---------------------------------------------------------------------------
# the comparison principle


def principle_violations(n: ComparisonModel, pairs: Iterable[tuple[int, int]] | None = None) -> list:
    """Pairs ``(A, B)`` where ``(A-B, B-A) in geq`` and ``(A, B) in geq`` differ."""
    if pairs is None:
        if len(n.worlds) > PRINCIPLE_CAP:
            raise SizeCapError(f"comparison principle check is capped at {PRINCIPLE_CAP} worlds")
        pairs = ((a, b) for a in range(n.full + 1) for b in range(n.full + 1))
    out = []
    for a, b in pairs:
        if ((a & ~b, b & ~a) in n.geq) != ((a, b) in n.geq):
            out.append((a, b))
    return out


def comparison_principle_holds(n: ComparisonModel, pairs: Iterable[tuple[int, int]] | None = None) -> bool:
    """Whether ``(A-B, B-A) in geq`` iff ``(A, B) in geq`` for all pairs.

    All pairs of propositions are checked unless ``pairs`` narrows the set.
    """
    return not principle_violations(n, pairs)


# ---------------------------------------------------------------------------
# formula enumeration and the separation report


def enumerate_formulas(max_depth: int, atoms: Sequence[str] = ("p", "q"), language: str = "cn",
                       agent: str = DEFAULT_AGENT) -> list[Formula]:
    """All formulas up to ``max_depth`` over ``atoms``, one per ``&``-commutation class.

    ``language`` picks the modality: ``"cn"`` for belief, ``"qp"`` for
    comparison.  Output is sorted by node count, then printed text.
    """
    if language not in ("cn", "qp"):
        raise ValueError("language must be 'cn' or 'qp'")
    layer = [TOP] + [Atom(p) for p in atoms]
    for _ in range(max_depth):
        prev = sorted(set(layer), key=_order)
        nxt = set(prev)
        for x in prev:
            nxt.add(Not(x))
        for i, x in enumerate(prev):
            for y in prev[i:]:
                nxt.add(And(x, y))
            for y in prev:
                nxt.add(Bel(agent, x, y) if language == "cn" else Geq(agent, x, y))
        layer = list(nxt)
    return sorted(set(layer), key=_order)


def _order(f: Formula):
    return size(f), to_text(f)


def distinguishing_formula(agent: str = DEFAULT_AGENT) -> Formula:
    p, q = Atom("p"), Atom("q")
    return And(Not(Geq(agent, p, q)), Geq(agent, And(p, Not(q)), And(Not(p), q)))


@dataclass
class SeparationReport:
    max_depth: int
    formula: str
    valid_on_n1: bool
    valid_on_n2: bool
    formulas_checked: int
    disagreements: list = field(default_factory=list)
    principle_n1: bool = False
    principle_n2: bool = False

    @property
    def separated(self) -> bool:
        return self.valid_on_n2 and not self.valid_on_n1 and not self.disagreements

    def to_dict(self) -> dict:
        return {
            "max_depth": self.max_depth,
            "qp_formula": self.formula,
            "qp_valid_on_n1": self.valid_on_n1,
            "qp_valid_on_n2": self.valid_on_n2,
            "cn_formulas_checked": self.formulas_checked,
            "cn_disagreements": list(self.disagreements),
            "principle_n1": self.principle_n1,
            "principle_n2": self.principle_n2,
            "separated": self.separated,
        }


def expressivity_separation(max_depth: int = 2, models: tuple | None = None) -> SeparationReport:
    if models is None:
        from .lab.builtins import builtin_comparison

        models = builtin_comparison()
    n1, n2 = models
    f = distinguishing_formula()
    cn = enumerate_formulas(max_depth, ("p", "q"), "cn")
    bad = [to_text(g) for g in cn if extension1(n1, g) != extension1(n2, g)]
    return SeparationReport(
        max_depth=max_depth,
        formula=to_text(f),
        valid_on_n1=extension2(n1, f) == n1.full,
        valid_on_n2=extension2(n2, f) == n2.full,
        formulas_checked=len(cn),
        disagreements=bad,
        principle_n1=comparison_principle_holds(n1),
        principle_n2=comparison_principle_holds(n2),
    )
