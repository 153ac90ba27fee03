"""Public announcements: deleting points and cutting links.

``announce_delete`` keeps only the worlds where the announced formula holds;
cells shrink and every remaining key keeps its old family.  ``announce_cut``
keeps all worlds and splits each cell into its inside and outside parts.
Both work on conditional neighbourhood and weight models alike.

The reduction axioms are available as formula builders and as a compiler
that rewrites announcements away, innermost first.
"""

from __future__ import annotations

from typing import Sequence

from .errors import EmptyAnnouncementError, UnsupportedLanguageError
from .semantics import extension, holds
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
    Iff,
    Implies,
    Not,
    Top,
    children,
    desugar,
    rebuild,
    subformulas,
)

SCHEMAS = ("pc-main", "pc-conj", "pcpm-atom", "pcpm-neg", "pcpm-and", "pcpm-B")


def announce_delete(m, phi: Formula):
    ext = extension(m, phi)
    if ext == 0:
        raise EmptyAnnouncementError("announced formula is true nowhere; no worlds would remain")
    return m.restrict(ext)


def announce_cut(m, phi: Formula):
    return m.cut(extension(m, phi))


def _reject(f: Formula, banned: type, what: str) -> None:
    if any(isinstance(g, banned) for g in subformulas(desugar(f))):
        raise UnsupportedLanguageError(f"{what} announcements are not part of this language")


def eval_pc(m, world: str, f: Formula) -> bool:
    """Truth with fact announcements, vacuous where the announcement fails."""
    _reject(f, AnnValue, "value")
    return holds(m, world, f)


def eval_pcpm(m, world: str, f: Formula) -> bool:
    _reject(f, AnnFact, "fact")
    return holds(m, world, f)


def reduction_formula(schema: str, instance: Sequence[Formula], agent: str = DEFAULT_AGENT) -> Formula:
    """The biconditional for one reduction schema.

    ``instance`` is ``(phi, psi, chi)`` for the belief schemas and
    ``pcpm-and``, ``(phi, psi)`` for ``pcpm-neg`` and ``(phi, p)`` with an
    atom ``p`` for ``pcpm-atom``.
    """
    if schema in ("pc-main", "pc-conj"):
        phi, psi, chi = instance
        body = AnnFact(phi, chi)
        if schema == "pc-conj":
            body = And(phi, body)
        rhs = Implies(phi, Bel(agent, And(phi, AnnFact(phi, psi)), body))
        return Iff(AnnFact(phi, Bel(agent, psi, chi)), rhs)
    if schema == "pcpm-atom":
        phi, p = instance
        if not isinstance(p, Atom):
            raise ValueError("pcpm-atom needs an atom as its second formula")
        return Iff(AnnValue(phi, p), p)
    if schema == "pcpm-neg":
        phi, psi = instance
        return Iff(AnnValue(phi, Not(psi)), Not(AnnValue(phi, psi)))
    if schema == "pcpm-and":
        phi, psi, chi = instance
        return Iff(AnnValue(phi, And(psi, chi)), And(AnnValue(phi, psi), AnnValue(phi, chi)))
    if schema == "pcpm-B":
        phi, psi, chi = instance
        inner_psi, inner_chi = AnnValue(phi, psi), AnnValue(phi, chi)
        return Iff(
            AnnValue(phi, Bel(agent, psi, chi)),
            And(
                Implies(phi, Bel(agent, And(phi, inner_psi), inner_chi)),
                Implies(Not(phi), Bel(agent, And(Not(phi), inner_psi), inner_chi)),
            ),
        )
    raise ValueError(f"unknown schema {schema!r}; expected one of {', '.join(SCHEMAS)}")


def check_reduction(m, schema: str, instance: Sequence[Formula], world: str,
                    agent: str = DEFAULT_AGENT) -> bool:
    return holds(m, world, reduction_formula(schema, instance, agent))


# ---------------------------------------------------------------------------
# compiling announcements away


def compile_announcements(f: Formula) -> Formula:
    """Rewrite ``f`` into an announcement-free formula with the same truth.

    Comparisons are first expressed through belief.  Fact announcements use
    ``[p]B(x, y) <-> (p -> B(p & [p]x, [p]y))`` plus the boolean axioms.
    """
    return _compile(desugar(f))


def _compile(f: Formula) -> Formula:
    if isinstance(f, Geq):
        left, right = _compile(f.left), _compile(f.right)
        return Not(Bel(f.agent, desugar(Iff(left, Not(right))), right))
    if isinstance(f, AnnFact):
        return _push_fact(_compile(f.announced), _compile(f.body))
    if isinstance(f, AnnValue):
        return _push_value(_compile(f.announced), _compile(f.body))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, tuple(_compile(k) for k in kids))


def _imp(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def _push_fact(phi: Formula, f: Formula) -> Formula:
    # ``f`` is announcement-free
    if isinstance(f, Top):
        return TOP
    if isinstance(f, Atom):
        return _imp(phi, f)
    if isinstance(f, Not):
        return _imp(phi, Not(_push_fact(phi, f.sub)))
    if isinstance(f, And):
        return And(_push_fact(phi, f.left), _push_fact(phi, f.right))
    if isinstance(f, Bel):
        return _imp(phi, Bel(f.agent, And(phi, _push_fact(phi, f.cond)), _push_fact(phi, f.body)))
    raise TypeError(f"unexpected node {f!r}")


def _push_value(phi: Formula, f: Formula) -> Formula:
    if isinstance(f, (Top, Atom)):
        return f
    if isinstance(f, Not):
        return Not(_push_value(phi, f.sub))
    if isinstance(f, And):
        return And(_push_value(phi, f.left), _push_value(phi, f.right))
    if isinstance(f, Bel):
        cond, body = _push_value(phi, f.cond), _push_value(phi, f.body)
        return And(
            _imp(phi, Bel(f.agent, And(phi, cond), body)),
            _imp(Not(phi), Bel(f.agent, And(Not(phi), cond), body)),
        )
    raise TypeError(f"unexpected node {f!r}")
