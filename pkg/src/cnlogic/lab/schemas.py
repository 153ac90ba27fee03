"""Axiom schemas as formula builders.

A schema has a name, a number of metavariables and a builder taking the
agent followed by that many formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..syntax import TOP, And, Approx, Bel, Formula, Geq, Gt, Iff, Implies, Know, Not, Or, Poss


@dataclass(frozen=True)
class Schema:
    name: str
    arity: int
    build: Callable[..., Formula]

    def instance(self, agent: str, *fs: Formula) -> Formula:
        if len(fs) != self.arity:
            raise ValueError(f"{self.name} takes {self.arity} formulas, got {len(fs)}")
        return self.build(agent, *fs)


def _imp(*fs: Formula) -> Formula:
    # right-nested implication chain
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Implies(f, out)
    return out


TAUTOLOGIES = [
    Schema("Taut-K", 2, lambda a, p, q: _imp(p, q, p)),
    Schema("Taut-S", 3, lambda a, p, q, r: _imp(_imp(p, q, r), _imp(p, q), p, r)),
    Schema("Taut-contra", 2, lambda a, p, q: _imp(Implies(Not(p), Not(q)), q, p)),
    Schema("Taut-lem", 1, lambda a, p: Or(p, Not(p))),
    Schema("Taut-dn", 1, lambda a, p: Iff(Not(Not(p)), p)),
    Schema("Taut-comm", 2, lambda a, p, q: Implies(And(p, q), And(q, p))),
]

CN_AXIOMS = TAUTOLOGIES + [
    Schema("Dist-K", 2, lambda a, p, q: _imp(Know(a, Implies(p, q)), Know(a, p), Know(a, q))),
    Schema("T", 1, lambda a, p: Implies(Know(a, p), p)),
    Schema("5B", 2, lambda a, p, q: Implies(Bel(a, p, q), Know(a, Bel(a, p, q)))),
    Schema("4B", 2, lambda a, p, q: Implies(Not(Bel(a, p, q)), Know(a, Not(Bel(a, p, q))))),
    Schema("D", 2, lambda a, p, q: Implies(Bel(a, p, q), Not(Bel(a, p, Not(q))))),
    Schema("EC", 3, lambda a, p, q, r: _imp(Know(a, Iff(p, q)), Bel(a, p, r), Bel(a, q, r))),
    Schema("M", 3, lambda a, p, q, r: _imp(Know(a, Implies(p, q)), Bel(a, r, p), Bel(a, r, q))),
    Schema("C", 2, lambda a, p, q: Implies(Bel(a, p, q), Bel(a, p, And(p, q)))),
    # strong commitment, with the condition made explicit as ``r``
    Schema("SC", 3, lambda a, p, q, r: Implies(
        And(Not(Bel(a, r, Not(p))), Poss(a, And(And(r, Not(p)), q))),
        Bel(a, r, Or(p, q)))),
    Schema("K4", 1, lambda a, p: Implies(Know(a, p), Know(a, Know(a, p)))),
    Schema("K5", 1, lambda a, p: Implies(Not(Know(a, p)), Know(a, Not(Know(a, p))))),
]

TOTALITY = [
    Schema("Totality", 2, lambda a, p, q: Or(Or(Gt(a, p, q), Gt(a, q, p)), Approx(a, p, q))),
    Schema("Refl-Totality", 2, lambda a, p, q: Or(Geq(a, p, q), Geq(a, q, p))),
    Schema("Excl-gt-lt", 2, lambda a, p, q: Not(And(Gt(a, p, q), Gt(a, q, p)))),
    Schema("Excl-gt-eq", 2, lambda a, p, q: Not(And(Gt(a, p, q), Approx(a, p, q)))),
    Schema("Excl-lt-eq", 2, lambda a, p, q: Not(And(Gt(a, q, p), Approx(a, p, q)))),
    Schema("Geq-Top-K", 1, lambda a, p: Iff(Geq(a, p, TOP), Know(a, p))),
    Schema("Comparison", 2, lambda a, p, q: Iff(
        Gt(a, And(p, Not(q)), And(q, Not(p))), Gt(a, p, q))),
]

STP = Schema("STP", 2, lambda a, p, q: Implies(And(Bel(a, p, q), Bel(a, Not(p), q)), Bel(a, TOP, q)))

BY_NAME = {s.name: s for s in CN_AXIOMS + TOTALITY + [STP]}
