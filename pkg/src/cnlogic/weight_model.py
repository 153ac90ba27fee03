"""Epistemic weight models.

Each agent gives every world a strictly positive rational weight.  Belief
``B_a(x, y)`` holds on a cell ``C`` iff ``L(C & x & y) > L(C & x & ~y)``, and
``x >= y`` holds iff ``L(C & x & ~y) >= L(C & y & ~x)``.

Weights are stored as :class:`fractions.Fraction` and, per agent, scaled by
the common denominator to plain integers, so every comparison is exact.
Large cells are summed with the compiled kernels on ``int64`` arrays when the
total weight fits; otherwise sums fall back to Python integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .cn_model import EVAL_CELL_CAP, CnModel, ValidationReport, Violation
from .errors import LengthMismatchError, SizeCapError, UnknownAgentError, UnknownAtomError, UnknownWorldError
from .semantics import extension as _extension
from .semantics import holds as _holds
from .syntax import TOP, And, Bel, Formula, Geq, Implies, Not, conj
from .worldset import deposit_table, extract, full_mask, iter_bits, mask_to_bools, popcount, to_names

_SMALL = 64
_INT64_SAFE = 1 << 62


def as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("weights must be exact; got a float")
    return Fraction(value)


class WeightModel:
    """Finite weight model; treat instances as immutable."""

    kind = "weight"

    def __init__(
        self,
        worlds: Sequence[str],
        agents: Sequence[str],
        cells: Mapping[str, Sequence[int]],
        weights: Mapping[str, Mapping[str, object]],
        valuation: Mapping[str, int],
    ):
        self.worlds = tuple(worlds)
        self.agents = tuple(agents)
        self.index = {w: i for i, w in enumerate(self.worlds)}
        self.full = full_mask(len(self.worlds))
        self.cells = {a: tuple(sorted(cells[a])) for a in self.agents}
        self.weights = {a: {w: as_fraction(v) for w, v in weights[a].items()} for a in self.agents}
        self.valuation = dict(valuation)
        self._scaled = {}
        self._arrays = {}
        for a in self.agents:
            ws = [self.weights[a].get(w) for w in self.worlds]
            present = [v for v in ws if v is not None]
            den = lcm(*(v.denominator for v in present)) if present else 1
            ints = [0 if v is None else int(v * den) for v in ws]
            self._scaled[a] = ints
            if sum(abs(v) for v in ints) < _INT64_SAFE and len(ints) > _SMALL:
                self._arrays[a] = np.asarray(ints, dtype=np.int64)

    def __repr__(self) -> str:
        return f"WeightModel(worlds={len(self.worlds)}, agents={list(self.agents)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightModel):
            return NotImplemented
        return (self.worlds, self.agents, self.cells, self.weights, self.valuation) == (
            other.worlds, other.agents, other.cells, other.weights, other.valuation)

    __hash__ = None

    def cell_of(self, agent: str, world: int) -> int:
        for c in self.cells[agent]:
            if c >> world & 1:
                return c
        raise ValueError(f"world {world} has no cell")

    def names(self, mask: int) -> list[str]:
        return to_names(mask, self.worlds)

    def mass(self, agent: str, mask: int) -> int:
        """Scaled integer weight of ``mask`` for ``agent``."""
        arr = self._arrays.get(agent)
        if arr is None or popcount(mask) <= _SMALL:
            ints = self._scaled[agent]
            return sum(ints[i] for i in iter_bits(mask))
        return int(_kernels.masked_sum(arr, mask_to_bools(mask, len(self.worlds))))

    def measure(self, agent: str, mask: int) -> Fraction:
        return sum((self.weights[agent][self.worlds[i]] for i in iter_bits(mask)), Fraction(0))

    # -- evaluation protocol -------------------------------------------------

    def atom_mask(self, name: str) -> int:
        try:
            return self.valuation[name]
        except KeyError:
            raise UnknownAtomError(f"atom {name!r} has no valuation") from None

    def _cells(self, agent):
        try:
            return self.cells[agent]
        except KeyError:
            raise UnknownAgentError(f"agent {agent!r} not in model") from None

    def bel_mask(self, agent: str, cond: int, body: int) -> int:
        out = 0
        for c in self._cells(agent):
            x = c & cond
            if x and self.mass(agent, x & body) > self.mass(agent, x & ~body):
                out |= c
        return out

    def geq_mask(self, agent: str, left: int, right: int) -> int:
        out = 0
        for c in self._cells(agent):
            if self.mass(agent, c & left & ~right) >= self.mass(agent, c & right & ~left):
                out |= c
        return out

    def restrict(self, mask: int) -> "WeightModel":
        mask &= self.full
        if mask == self.full:
            return self
        pos = list(iter_bits(mask))
        keep = [self.worlds[i] for i in pos]
        cells = {a: [extract(c & mask, pos) for c in self.cells[a] if c & mask] for a in self.agents}
        weights = {a: {w: self.weights[a][w] for w in keep} for a in self.agents}
        valuation = {p: extract(v & mask, pos) for p, v in self.valuation.items()}
        return WeightModel(keep, self.agents, cells, weights, valuation)

    def cut(self, mask: int) -> "WeightModel":
        mask &= self.full
        if all(c & mask in (0, c) for cs in self.cells.values() for c in cs):
            return self
        cells = {a: [part for c in self.cells[a] for part in (c & mask, c & ~mask) if part]
                 for a in self.agents}
        return WeightModel(self.worlds, self.agents, cells, self.weights, self.valuation)


class _BelGeqView:
    """A weight model whose ``>=`` goes through the belief clause."""

    def __init__(self, model):
        self._m = model

    def __getattr__(self, name):
        return getattr(self._m, name)

    def geq_mask(self, agent, left, right):
        return self._m.full & ~self._m.bel_mask(agent, left ^ right, right)

    def restrict(self, mask):
        return _BelGeqView(self._m.restrict(mask))

    def cut(self, mask):
        sub = self._m.cut(mask)
        return self if sub is self._m else _BelGeqView(sub)


def extension(m: WeightModel, f: Formula, cache: dict | None = None, geq: str = "direct") -> int:
    """Denotation of ``f``; ``geq="tr2"`` evaluates comparisons through belief."""
    if geq == "tr2":
        return _extension(_BelGeqView(m), f, cache)
    if geq != "direct":
        raise ValueError(f"unknown comparison path {geq!r}")
    return _extension(m, f, cache)


def eval_weight(m: WeightModel, world: str, f: Formula, geq: str = "direct") -> bool:
    model = _BelGeqView(m) if geq == "tr2" else m
    return _holds(model, world, f)


def validate_weight(m: WeightModel) -> ValidationReport:
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
                add(Violation("partition", a, tuple(m.names(c))))
            seen |= c
        if seen != m.full:
            add(Violation("partition", a, witness=(tuple(m.names(m.full & ~seen)),)))
        for w in m.worlds:
            v = m.weights[a].get(w)
            if v is None:
                add(Violation("weight-missing", a, witness=((w,),)))
            elif v <= 0:
                add(Violation("weight-positive", a, witness=((w,),)))
        extra = sorted(set(m.weights[a]) - set(m.worlds))
        if extra:
            add(Violation("weight-unknown-world", a, witness=(tuple(extra),)))
    return report


def induce_cn(m: WeightModel, cap: int = EVAL_CELL_CAP) -> CnModel:
    """Materialize the conditional neighbourhood model of ``m``.

    The family at key ``X`` is ``{Y <= X : L(Y) > L(X - Y)}``.
    """
    nbhd = {}
    for a in m.agents:
        for c in m.cells[a]:
            k = popcount(c)
            if k > cap:
                raise SizeCapError(f"cell of {k} worlds exceeds the cap of {cap}")
            pos = list(iter_bits(c))
            table = deposit_table(pos)
            ints = np.asarray([m._scaled[a][i] for i in pos], dtype=np.int64)
            member = _kernels.induced_membership(_kernels.subset_sums(ints))
            for x in range(1 << k):
                ys = np.flatnonzero(member[x])
                nbhd[(a, c, table[x])] = frozenset(table[int(y)] for y in ys)
    return CnModel(m.worlds, m.agents, m.cells, nbhd, m.valuation)


# ---------------------------------------------------------------------------
# sure thing principle and the cardinality axiom


def sure_thing_formula(agent: str, phi: Formula, psi: Formula) -> Formula:
    return Implies(And(Bel(agent, phi, psi), Bel(agent, Not(phi), psi)), Bel(agent, TOP, psi))


def sure_thing(m, world: str, agent: str, phi: Formula, psi: Formula) -> bool:
    """Truth of the sure thing instance at ``world`` in a CN or weight model."""
    return _holds(m, world, sure_thing_formula(agent, phi, psi))


def _cell_at(m, agent, world):
    try:
        i = m.index[world]
    except KeyError:
        raise UnknownWorldError(f"no world named {world!r}") from None
    if agent not in m.cells:
        raise UnknownAgentError(f"agent {agent!r} not in model")
    return m.cell_of(agent, i)


def e_holds(m, world: str, agent: str, alphas: Sequence[Formula], betas: Sequence[Formula]) -> bool:
    """Every cell-mate of ``world`` makes as many alphas true as betas."""
    if len(alphas) != len(betas):
        raise LengthMismatchError(f"{len(alphas)} alphas against {len(betas)} betas")
    cell = _cell_at(m, agent, world)
    cache: dict = {}
    ea = [_extension(m, f, cache) for f in alphas]
    eb = [_extension(m, f, cache) for f in betas]
    for v in iter_bits(cell):
        if sum(x >> v & 1 for x in ea) != sum(x >> v & 1 for x in eb):
            return False
    return True


def a4_formula(agent: str, alphas: Sequence[Formula], betas: Sequence[Formula]) -> Formula:
    """The comparison part of the cardinality axiom, without its E premise."""
    if len(alphas) != len(betas):
        raise LengthMismatchError(f"{len(alphas)} alphas against {len(betas)} betas")
    if not alphas:
        raise LengthMismatchError("the cardinality axiom needs at least one pair")
    premise = conj(*[Geq(agent, a, b) for a, b in zip(alphas[:-1], betas[:-1])])
    return Implies(premise, Geq(agent, betas[-1], alphas[-1]))


def check_a4(m, world: str, agent: str, alphas: Sequence[Formula], betas: Sequence[Formula]) -> bool:
    """Truth at ``world`` of: E(alphas, betas) and the first comparisons
    imply the reversed last one."""
    f = a4_formula(agent, alphas, betas)
    if not e_holds(m, world, agent, alphas, betas):
        return True
    return _holds(m, world, f)


def tautological_e(alphas: Sequence[Formula], betas: Sequence[Formula], atoms: Sequence[str]) -> bool:
    """Whether E(alphas, betas) holds at every valuation of ``atoms``."""
    n = len(atoms)
    worlds = [str(i) for i in range(1 << n)]
    valuation = {p: sum(1 << v for v in range(1 << n) if v >> j & 1) for j, p in enumerate(atoms)}
    probe = WeightModel(worlds, ["_"], {"_": [full_mask(1 << n)]}, {"_": {w: 1 for w in worlds}}, valuation)
    return e_holds(probe, worlds[0], "_", alphas, betas)


__all__ = [
    "WeightModel", "as_fraction", "extension", "eval_weight", "validate_weight", "induce_cn",
    "sure_thing", "sure_thing_formula", "e_holds", "a4_formula", "check_a4", "tautological_e",
]
