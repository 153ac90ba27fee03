"""Bounded countermodel search and weight representability.

``find_countermodel`` looks for a single-agent model with at most four
worlds falsifying a belief formula.  Worlds are identified with
valuations over the formula's atoms, so a model shape is a partition of
the world count into cells plus a multiset of valuations per cell; shapes
that only differ by renaming worlds are generated once.  Families are
assigned lazily: evaluation runs against a partial assignment and stops at
the first key it has no family for, and the search branches over the valid
families of that key only.  Keys the formula never looks at are filled with
the majority family at the end.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Iterator

import numpy as np

from ..cn_model import CnModel
from ..dynamics import compile_announcements
from ..errors import SizeCapError, UnknownAgentError, UnsupportedLanguageError
from ..semantics import _ext
from ..syntax import AnnFact, AnnValue, Formula, agents, atoms, desugar, subformulas
from ..weight_model import WeightModel, induce_cn
from ..worldset import full_mask, submasks
from .families import FAMILY_CAP, family_members, majority_family, map_family

SEARCH_CAP = 4


class _NeedKey(Exception):
    def __init__(self, cell: int, key: int):
        self.cell, self.key = cell, key


class _PartialModel:
    def __init__(self, n: int, agent: str, cells, valuation, assigned: dict):
        self.full = full_mask(n)
        self.agent = agent
        self.cells = cells
        self.valuation = valuation
        self.assigned = assigned

    def atom_mask(self, name):
        return self.valuation[name]

    def bel_mask(self, agent, cond, body):
        if agent != self.agent:
            raise UnknownAgentError(f"agent {agent!r} not in model")
        out = 0
        for c in self.cells:
            key = cond & c
            members = self.assigned.get((c, key))
            if members is None:
                raise _NeedKey(c, key)
            if any(y & ~body == 0 for y in members):
                out |= c
        return out

    def geq_mask(self, agent, left, right):
        return self.full & ~self.bel_mask(agent, left ^ right, right)


def _integer_partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _integer_partitions(n - k, k):
            yield (k,) + rest


def _shapes(n: int, num_vals: int) -> Iterator[list[tuple[int, ...]]]:
    """Cells as sorted valuation tuples, one shape per renaming class."""
    for sizes in _integer_partitions(n, FAMILY_CAP):
        yield from _fill(list(sizes), num_vals, None)


def _fill(sizes, num_vals, prev):
    if not sizes:
        yield []
        return
    k = sizes[0]
    for block in combinations_with_replacement(range(num_vals), k):
        # equal-size neighbours in non-decreasing order
        if prev is not None and len(prev) == k and block < prev:
            continue
        for rest in _fill(sizes[1:], num_vals, block):
            yield [block] + rest


def _search(f, n, agent, cells, valuation, assigned):
    model = _PartialModel(n, agent, cells, valuation, assigned)
    try:
        ext = _ext(model, f, {})
    except _NeedKey as need:
        for members in family_members(bin(need.key).count("1")):
            assigned[(need.cell, need.key)] = map_family(members, need.key)
            hit = _search(f, n, agent, cells, valuation, assigned)
            if hit is not None:
                return hit
        del assigned[(need.cell, need.key)]
        return None
    if ext == model.full:
        return None
    return dict(assigned), ext


def find_countermodel(f: Formula, max_worlds: int = SEARCH_CAP, agent: str | None = None):
    """First ``(model, world)`` with ``f`` false there, or None up to the bound.

    World counts run from 1 to ``max_worlds``; announcement operators are
    compiled away first.
    """
    if max_worlds > SEARCH_CAP:
        raise SizeCapError(f"countermodel search is capped at {SEARCH_CAP} worlds")
    if any(isinstance(g, (AnnFact, AnnValue)) for g in subformulas(f)):
        f = compile_announcements(f)
    f = desugar(f, "core")
    used = agents(f)
    if len(used) > 1:
        raise UnsupportedLanguageError("countermodel search handles a single agent")
    agent = agent or (used.pop() if used else "a")
    names = sorted(atoms(f))
    num_vals = 1 << len(names)
    for n in range(1, max_worlds + 1):
        for shape in _shapes(n, num_vals):
            vals = [v for block in shape for v in block]
            cells, start = [], 0
            for block in shape:
                cells.append(full_mask(len(block)) << start)
                start += len(block)
            valuation = {p: sum(1 << i for i, v in enumerate(vals) if v >> j & 1)
                         for j, p in enumerate(names)}
            hit = _search(f, n, agent, cells, valuation, {})
            if hit is None:
                continue
            assigned, ext = hit
            worlds = _world_names(vals, names)
            nbhd = {}
            for c in cells:
                for key in submasks(c):
                    nbhd[(agent, c, key)] = assigned.get((c, key), majority_family(key))
            model = CnModel(worlds, [agent], {agent: cells}, nbhd, valuation)
            bad = model.full & ~ext
            return model, worlds[(bad & -bad).bit_length() - 1]
    return None


def _world_names(vals, names) -> list[str]:
    out, seen = [], {}
    for v in vals:
        label = "".join(p for j, p in enumerate(names) if v >> j & 1) or "0"
        k = seen.get(label, 0)
        seen[label] = k + 1
        out.append(label if k == 0 else f"{label}#{k}")
    # duplicates get a suffix on their first occurrence too, for symmetry
    dup = {lab for lab, k in seen.items() if k > 1}
    return [f"{w}#0" if w in dup else w for w in out]


# ---------------------------------------------------------------------------
# weight representability


def weight_representable(m: CnModel):
    """Positive rational weights inducing exactly ``m``'s families, or None.

    Every key ``X`` and subset ``Y`` gives one linear constraint:
    ``L(Y) - L(X - Y) >= 1`` for members, ``<= 0`` otherwise (the
    constraints are homogeneous, so the margin 1 loses nothing).  The
    floating point solution of the linear program is rounded to rationals
    and verified exactly; None means the program is infeasible.
    """
    from scipy.optimize import linprog

    n = len(m.worlds)
    weights = {}
    for a in m.agents:
        rows, rhs = [], []
        for c in m.cells[a]:
            for key in submasks(c):
                members = m.nbhd[(a, c, key)]
                for y in submasks(key):
                    row = np.zeros(n)
                    for i in range(n):
                        if y >> i & 1:
                            row[i] += 1.0
                        elif key >> i & 1:
                            row[i] -= 1.0
                    if y in members:
                        rows.append(-row)
                        rhs.append(-1.0)
                    else:
                        rows.append(row)
                        rhs.append(0.0)
        res = linprog(np.zeros(n), A_ub=np.array(rows) if rows else None,
                      b_ub=np.array(rhs) if rhs else None, bounds=[(1, None)] * n, method="highs")
        if res.status != 0:
            return None
        weights[a] = _rationalize(res.x)
    candidate = WeightModel(m.worlds, m.agents, m.cells,
                            {a: dict(zip(m.worlds, weights[a])) for a in m.agents}, m.valuation)
    if induce_cn(candidate).nbhd != m.nbhd:
        raise ArithmeticError("linear program solution did not survive exact rounding")
    return candidate


def _rationalize(xs) -> list[Fraction]:
    # the margin of 1 leaves room for rounding to a modest denominator
    return [Fraction(float(x)).limit_denominator(1000) for x in xs]


# ---------------------------------------------------------------------------
# exhaustive model enumeration


def set_partitions(n: int, largest: int = FAMILY_CAP) -> Iterator[list[int]]:
    """Every partition of ``range(n)`` into blocks of at most ``largest`` items."""
    def rec(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for k in range(min(largest, len(items))):
            for others in combinations(rest, k):
                block = 1 << first
                for i in others:
                    block |= 1 << i
                left = [i for i in rest if i not in others]
                for tail in rec(left):
                    yield [block] + tail
    yield from rec(list(range(n)))


def enumerate_cn_models(n: int, atom_names=("p", "q"), agent: str = "a") -> Iterator[CnModel]:
    """All single-agent models on ``n`` worlds: partitions, families, valuations.

    Worlds are ``w0 .. w{n-1}``; nothing is identified up to renaming.
    """
    if n > SEARCH_CAP:
        raise SizeCapError(f"model enumeration is capped at {SEARCH_CAP} worlds")
    worlds = [f"w{i}" for i in range(n)]
    valuations = [dict(zip(atom_names, combo)) for combo in product(range(1 << n), repeat=len(atom_names))]
    for cells in set_partitions(n):
        keys = [(c, key) for c in cells for key in submasks(c)]
        choices = [[map_family(f, key) for f in family_members(bin(key).count("1"))] for _, key in keys]
        for picks in product(*choices):
            nbhd = {(agent, c, key): fam for (c, key), fam in zip(keys, picks)}
            for valuation in valuations:
                yield CnModel(worlds, [agent], {agent: cells}, nbhd, valuation)
