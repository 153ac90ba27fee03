"""Conditional neighbourhood models.

A :class:`CnModel` stores its neighbourhood function compactly: one family
per ``(agent, cell, key)`` where ``cell`` is a knowledge cell of the agent and
``key`` ranges over all subsets of that cell.  The family consulted at world
``w`` under condition ``X`` is the one stored under ``X & cell_of(w)``, so
equivalence of conditions and agreement inside a cell hold by construction.
The full per-world table can still be produced (:func:`expand_table`) and
read back (:func:`derive_cells`), which is how models violating those two
conditions are detected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import FactorizationError, SizeCapError, UnknownAgentError, UnknownAtomError
from .semantics import extension as _extension
from .semantics import holds as _holds
from .syntax import Formula
from .worldset import deposit_table, extract, full_mask, iter_bits, popcount, submasks, to_names

EVAL_CELL_CAP = 12
_PY_CHECK_MAX = 6


@dataclass(frozen=True)
class NeighbourhoodFamily:
    """The family ``N(X')`` for one ground set ``X'`` (a key inside a cell)."""

    ground: int
    members: frozenset

    def __contains__(self, y: int) -> bool:
        return y in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Violation:
    condition: str
    agent: str | None = None
    cell: tuple = ()
    key: tuple = ()
    witness: tuple = ()

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "agent": self.agent,
            "cell": list(self.cell),
            "key": list(self.key),
            "witness": [list(w) for w in self.witness],
        }


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self) -> int:
        return len(self.violations)

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}

    def to_dict(self) -> dict:
        rows = sorted((v.to_dict() for v in self.violations),
                      key=lambda d: (d["condition"], str(d["agent"]), d["cell"], d["key"], d["witness"]))
        return {"ok": self.ok, "violations": rows}


class CnModel:
    """Explicit conditional neighbourhood model.

    ``cells[a]`` is a tuple of disjoint world masks covering all worlds;
    ``nbhd[(a, cell, key)]`` is a frozenset of member masks for every
    ``key`` that is a subset of ``cell``.  Instances are treated as
    immutable.
    """

    kind = "cn"

    def __init__(
        self,
        worlds: Sequence[str],
        agents: Sequence[str],
        cells: Mapping[str, Iterable[int]],
        nbhd: Mapping[tuple, Iterable[int]],
        valuation: Mapping[str, int],
    ):
        self.worlds = tuple(worlds)
        self.agents = tuple(agents)
        self.index = {w: i for i, w in enumerate(self.worlds)}
        self.full = full_mask(len(self.worlds))
        self.cells = {a: tuple(sorted(cells[a])) for a in self.agents}
        self.nbhd = {k: frozenset(v) for k, v in nbhd.items()}
        self.valuation = dict(valuation)
        self._cell_of = {}
        for a, cs in self.cells.items():
            owner = [0] * len(self.worlds)
            for c in cs:
                for i in iter_bits(c & self.full):
                    owner[i] = c
            self._cell_of[a] = owner
        self._minimal = {}

    @classmethod
    def from_rule(cls, worlds, agents, cells, valuation, rule: Callable[[str, int, int], Iterable[int]]):
        """Build a model calling ``rule(agent, cell, key)`` for every key."""
        nbhd = {}
        for a in agents:
            for c in cells[a]:
                for key in submasks(c):
                    nbhd[(a, c, key)] = rule(a, c, key)
        return cls(worlds, agents, cells, nbhd, valuation)

    def __repr__(self) -> str:
        return f"CnModel(worlds={list(self.worlds)}, agents={list(self.agents)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, CnModel):
            return NotImplemented
        return (self.worlds, self.agents, self.cells, self.nbhd, self.valuation) == (
            other.worlds, other.agents, other.cells, other.nbhd, other.valuation)

    __hash__ = None

    # -- lookups -------------------------------------------------------------

    def cell_of(self, agent: str, world: int) -> int:
        return self._cell_of[agent][world]

    def family(self, agent: str, cell: int, key: int) -> NeighbourhoodFamily:
        return NeighbourhoodFamily(key, self.nbhd[(agent, cell, key)])

    def neighbourhood(self, agent: str, world: str, condition: int) -> frozenset:
        """``N_a^w(X)`` for an arbitrary condition mask ``X``."""
        cell = self.cell_of(agent, self.index[world])
        return self.nbhd[(agent, cell, condition & cell)]

    def names(self, mask: int) -> list[str]:
        return to_names(mask, self.worlds)

    # -- evaluation protocol (see cnlogic.semantics) -------------------------

    def atom_mask(self, name: str) -> int:
        try:
            return self.valuation[name]
        except KeyError:
            raise UnknownAtomError(f"atom {name!r} has no valuation") from None

    def _minimal_members(self, k):
        hit = self._minimal.get(k)
        if hit is None:
            members = sorted(self.nbhd[k], key=popcount)
            hit = []
            for y in members:
                if not any(m & ~y == 0 for m in hit):
                    hit.append(y)
            self._minimal[k] = hit
        return hit

    def bel_mask(self, agent: str, cond: int, body: int) -> int:
        # some member Y of N(cond) with Y inside body; checking minimal
        # members is equivalent for any family
        try:
            cells = self.cells[agent]
        except KeyError:
            raise UnknownAgentError(f"agent {agent!r} not in model") from None
        out = 0
        outside = ~body
        for c in cells:
            for y in self._minimal_members((agent, c, cond & c)):
                if y & outside == 0:
                    out |= c
                    break
        return out

    def geq_mask(self, agent: str, left: int, right: int) -> int:
        # left >= right  iff  not B(left <-> ~right, right)
        return self.full & ~self.bel_mask(agent, left ^ right, right)

    def restrict(self, mask: int) -> "CnModel":
        mask &= self.full
        if mask == self.full:
            return self
        pos = list(iter_bits(mask))
        cells = {}
        nbhd = {}
        for a in self.agents:
            new_cells = []
            for c in self.cells[a]:
                kept = c & mask
                if not kept:
                    continue
                nc = extract(kept, pos)
                new_cells.append(nc)
                for key in submasks(kept):
                    nbhd[(a, nc, extract(key, pos))] = [extract(y, pos) for y in self.nbhd[(a, c, key)]]
            cells[a] = new_cells
        valuation = {p: extract(v & mask, pos) for p, v in self.valuation.items()}
        return CnModel([self.worlds[i] for i in pos], self.agents, cells, nbhd, valuation)

    def cut(self, mask: int) -> "CnModel":
        mask &= self.full
        if all(c & mask in (0, c) for cs in self.cells.values() for c in cs):
            return self
        cells = {}
        nbhd = {}
        for a in self.agents:
            new_cells = []
            for c in self.cells[a]:
                for part in (c & mask, c & ~mask):
                    if not part:
                        continue
                    new_cells.append(part)
                    for key in submasks(part):
                        nbhd[(a, part, key)] = self.nbhd[(a, c, key)]
            cells[a] = new_cells
        return CnModel(self.worlds, self.agents, cells, nbhd, self.valuation)


# ---------------------------------------------------------------------------
# family conditions


def _py_family_violations(ground: int, members: frozenset) -> list[tuple]:
    out = []
    for y in sorted(members):
        if y & ~ground:
            out.append(("(c)", (y,)))
            break
    inside = [y for y in sorted(members) if y & ~ground == 0]
    for y in inside:
        if ground ^ y in members:
            out.append(("(d)", (y, ground ^ y)))
            break
    subs = submasks(ground)
    for y in subs:
        if ground ^ y in members:
            continue
        bad = next((z for z in subs if z != y and y & ~z == 0 and z not in members), None)
        if bad is not None:
            out.append(("(sc)", (y, bad)))
            break
    return out


def _py_derived_violations(ground: int, members: frozenset) -> list[tuple]:
    out = []
    if ground == 0:
        if members:
            out.append(("(empty)", tuple(sorted(members))))
        return out
    if 0 in members:
        out.append(("(ni)", (0,)))
    if ground not in members:
        out.append(("(n*)", (ground,)))
    subs = submasks(ground)
    for y in sorted(members):
        if y & ~ground:
            continue
        bad = next((z for z in reversed(subs) if y & ~z == 0 and z not in members), None)
        if bad is not None:
            out.append(("(m)", (y, bad)))
            break
    return out


_KERNEL_CODES = {
    _kernels.VIOLATES_D: "(d)",
    _kernels.VIOLATES_SC: "(sc)",
    _kernels.VIOLATES_M: "(m)",
    _kernels.VIOLATES_NI: "(ni)",
    _kernels.VIOLATES_NSTAR: "(n*)",
    _kernels.VIOLATES_EMPTY: "(empty)",
}


def _compress(ground, members):
    pos = list(iter_bits(ground))
    c = len(pos)
    table = deposit_table(pos)
    index = {m: s for s, m in enumerate(table)}
    flags = np.zeros(1 << c, dtype=np.bool_)
    outside = []
    for y in members:
        s = index.get(y)
        if s is None:
            outside.append(y)
        else:
            flags[s] = True
    return c, table, flags, outside


def _kernel_violations(ground, members):
    c, table, flags, outside = _compress(ground, members)
    out = []
    if outside:
        out.append(("(c)", (min(outside),)))
    code, y, z = _kernels.check_family(flags, (1 << c) - 1, c)
    code = int(code)
    if code != _kernels.OK:
        out.append((_KERNEL_CODES[code], (table[int(y)], table[int(z)])))
    return out


def _kernel_derived(ground, members):
    if ground == 0:
        return _py_derived_violations(ground, frozenset(members))
    c, table, flags, _ = _compress(ground, members)
    out = []
    if flags[0]:
        out.append(("(ni)", (0,)))
    if not flags[-1]:
        out.append(("(n*)", (ground,)))
    # (m): a missing set strictly above some member
    bad = np.flatnonzero(_kernels.strict_up(flags, c) & ~flags)
    if bad.size:
        z = int(bad[-1])
        y = next(s for s in range(z) if flags[s] and s & ~z == 0)
        out.append(("(m)", (table[y], table[z])))
    return out


def family_violations(ground: int, members: Iterable[int]) -> list[tuple]:
    """Violations of (c), (d), (sc) as ``(condition, witness masks)`` pairs."""
    members = frozenset(members)
    if popcount(ground) <= _PY_CHECK_MAX:
        return _py_family_violations(ground, members)
    return _kernel_violations(ground, members)


def derived_violations(ground: int, members: Iterable[int]) -> list[tuple]:
    """Violations of (m), (ni), (n*) and the empty-ground condition."""
    members = frozenset(members)
    if ground == 0 or popcount(ground) <= _PY_CHECK_MAX:
        return _py_derived_violations(ground, members)
    return _kernel_derived(ground, members)


def is_valid_family(ground: int, members: Iterable[int]) -> bool:
    return not family_violations(ground, members)


# ---------------------------------------------------------------------------
# model-level checks


def _names(m: CnModel, mask: int) -> tuple:
    return tuple(to_names(mask, m.worlds))


def validate(m: CnModel) -> ValidationReport:
    """Check every model condition; violations carry named witnesses."""
    report = ValidationReport()
    add = report.violations.append
    if not m.worlds:
        add(Violation("nonempty"))
        return report
    if len(set(m.worlds)) != len(m.worlds):
        add(Violation("distinct-worlds"))
    for p, v in sorted(m.valuation.items()):
        if v & ~m.full:
            add(Violation("valuation", witness=((p,),)))
    for a in m.agents:
        seen = 0
        for c in m.cells[a]:
            if c == 0 or c & seen or c & ~m.full:
                add(Violation("partition", a, _names(m, c)))
            seen |= c
        if seen != m.full:
            add(Violation("partition", a, witness=(_names(m, m.full & ~seen),)))
    known = {(a, c) for a in m.agents for c in m.cells[a]}
    for (a, c, key) in m.nbhd:
        if (a, c) not in known or key & ~c:
            add(Violation("totality", a, _names(m, c), _names(m, key), witness=(("extra",),)))
    for a in m.agents:
        for c in m.cells[a]:
            for key in submasks(c):
                members = m.nbhd.get((a, c, key))
                if members is None:
                    add(Violation("totality", a, _names(m, c), _names(m, key), witness=(("missing",),)))
                    continue
                for cond, wit in family_violations(key, members):
                    add(Violation(cond, a, _names(m, c), _names(m, key),
                                  tuple(_names(m, w) for w in wit)))
        # the partition derived from N must be the declared one
        cs = m.cells[a]
        for i, c1 in enumerate(cs):
            fams1 = {m.nbhd.get((a, c1, k)) for k in submasks(c1)}
            for c2 in cs[i + 1:]:
                fams2 = {m.nbhd.get((a, c2, k)) for k in submasks(c2)}
                if len(fams1 | fams2) == 1:
                    add(Violation("(a)", a, _names(m, c1), witness=(_names(m, c2),)))
    return report


def derived_check(m: CnModel) -> ValidationReport:
    """Check the consequences (m), (ni), (n*), (empty) on every stored family."""
    report = ValidationReport()
    for a in m.agents:
        for c in m.cells[a]:
            for key in submasks(c):
                members = m.nbhd.get((a, c, key), frozenset())
                for cond, wit in derived_violations(key, members):
                    report.violations.append(Violation(
                        cond, a, _names(m, c), _names(m, key), tuple(_names(m, w) for w in wit)))
    return report


# ---------------------------------------------------------------------------
# full-table import/export


def expand_table(m: CnModel) -> dict:
    """``{(agent, world, X): members}`` for every world and every ``X``."""
    if len(m.worlds) > EVAL_CELL_CAP:
        raise SizeCapError(f"full table needs at most {EVAL_CELL_CAP} worlds")
    table = {}
    for a in m.agents:
        for i, w in enumerate(m.worlds):
            c = m.cell_of(a, i)
            for x in range(m.full + 1):
                table[(a, w, x)] = m.nbhd[(a, c, x & c)]
    return table


def derive_cells(worlds: Sequence[str], agents: Sequence[str], table: Mapping,
                 valuation: Mapping[str, int]) -> CnModel:
    """Rebuild a compact model from a full ``(agent, world, X)`` table.

    Worlds whose rows agree on every ``X`` form one cell.  The table must
    then depend on ``X`` only through ``X & cell``; otherwise
    :class:`FactorizationError` is raised with the offending entry.
    """
    n = len(worlds)
    if n > EVAL_CELL_CAP:
        raise SizeCapError(f"full table needs at most {EVAL_CELL_CAP} worlds")
    full = full_mask(n)
    cells = {}
    nbhd = {}
    for a in agents:
        groups: dict[tuple, int] = {}
        rows = {}
        for i, w in enumerate(worlds):
            try:
                row = tuple(frozenset(table[(a, w, x)]) for x in range(full + 1))
            except KeyError as exc:
                raise FactorizationError(f"table is not total: missing {exc.args[0]!r}") from None
            groups[row] = groups.get(row, 0) | (1 << i)
            rows[i] = row
        cells[a] = list(groups.values())
        for row, c in groups.items():
            w = worlds[next(iter_bits(c))]
            for x in range(full + 1):
                if row[x] != row[x & c]:
                    raise FactorizationError(
                        f"(ec) fails for agent {a!r} at world {w!r}",
                        witness=(a, w, to_names(x, worlds), to_names(x & c, worlds)))
            for key in submasks(c):
                nbhd[(a, c, key)] = row[key]
    return CnModel(worlds, agents, cells, nbhd, valuation)


# ---------------------------------------------------------------------------
# truth


def extension(m: CnModel, f: Formula, cache: dict | None = None) -> int:
    """Denotation of ``f`` as a world mask.

    Announcement operators are evaluated through the model's update
    methods, i.e. by the dynamic semantics.
    """
    return _extension(m, f, cache)


def eval(m: CnModel, world: str, f: Formula) -> bool:  # noqa: A001 - public name
    return _holds(m, world, f)
