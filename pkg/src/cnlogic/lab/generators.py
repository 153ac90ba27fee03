"""Seeded random models and formulas.

Everything here is a pure function of its spec and seed: the same inputs
always give the same model or formula.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from ..cn_model import CnModel
from ..errors import InfeasibleSpecError
from ..syntax import TOP, And, AnnFact, AnnValue, Atom, Bel, Formula, Geq, Not
from ..weight_model import WeightModel, induce_cn
from ..worldset import submasks
from .families import FAMILY_CAP, family_members, map_family

MODES = ("enumerated", "weight-induced", "mixed")
LANGUAGES = ("prop", "cn", "qp", "pc", "pcpm")


@dataclass(frozen=True)
class ModelSpec:
    num_worlds: int = 4
    num_agents: int = 1
    cell_size_max: int = 4
    atoms: tuple = ("p", "q")
    mode: str = "enumerated"


@dataclass(frozen=True)
class FormulaSpec:
    depth: int = 2
    atoms: tuple = ("p", "q")
    language: str = "cn"
    agents: tuple = ("a",)


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def agent_names(k: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(k)]


def world_names(n: int) -> list[str]:
    return [f"w{i}" for i in range(n)]


@lru_cache(maxsize=None)
def partition_count(n: int, k: int) -> int:
    """Set partitions of ``n`` labelled items into blocks of size at most ``k``."""
    if n == 0:
        return 1
    return sum(comb(n - 1, j - 1) * partition_count(n - j, k) for j in range(1, min(k, n) + 1))


def random_partition(n: int, k: int, seed) -> list[int]:
    """Uniform random set partition of ``range(n)`` with blocks of size <= ``k``.

    The block holding the smallest remaining item is drawn with its exact
    share of the count, then the rest is partitioned recursively.
    """
    rng = _rng(seed)
    items = list(range(n))
    blocks = []
    while items:
        m = len(items)
        r = rng.randrange(partition_count(m, k))
        for j in range(1, min(k, m) + 1):
            share = comb(m - 1, j - 1) * partition_count(m - j, k)
            if r < share:
                break
            r -= share
        first, rest = items[0], items[1:]
        chosen = rng.sample(rest, j - 1)
        block = (1 << first)
        for i in chosen:
            block |= 1 << i
        blocks.append(block)
        taken = set(chosen)
        items = [i for i in rest if i not in taken]
    return sorted(blocks)


def _check_spec(spec: ModelSpec, cap: int) -> None:
    if spec.num_worlds < 1:
        raise InfeasibleSpecError("a model needs at least one world")
    if spec.num_agents < 1:
        raise InfeasibleSpecError("a model needs at least one agent")
    if not 1 <= spec.cell_size_max <= cap:
        raise InfeasibleSpecError(f"cell_size_max must lie in 1..{cap}")
    if spec.mode not in MODES:
        raise InfeasibleSpecError(f"unknown mode {spec.mode!r}")


def _random_valuation(rng, atoms, n):
    return {p: rng.getrandbits(n) for p in atoms}


def random_weight(rng) -> Fraction:
    return Fraction(rng.randint(1, 16), rng.randint(1, 16))


def random_weight_model(spec: ModelSpec, seed) -> WeightModel:
    _check_spec(spec, cap=max(spec.num_worlds, spec.cell_size_max))
    rng = _rng(seed)
    n = spec.num_worlds
    worlds = world_names(n)
    agents = agent_names(spec.num_agents)
    cells = {a: random_partition(n, spec.cell_size_max, rng) for a in agents}
    weights = {a: {w: random_weight(rng) for w in worlds} for a in agents}
    return WeightModel(worlds, agents, cells, weights, _random_valuation(rng, spec.atoms, n))


def random_cn_model(spec: ModelSpec, seed) -> CnModel:
    """Random valid conditional neighbourhood model.

    ``enumerated`` draws each family uniformly from the valid families of
    its key size; ``weight-induced`` induces all families of a cell from
    random weights; ``mixed`` flips a coin per cell.
    """
    _check_spec(spec, FAMILY_CAP)
    rng = _rng(seed)
    n = spec.num_worlds
    worlds = world_names(n)
    agents = agent_names(spec.num_agents)
    cells = {a: random_partition(n, spec.cell_size_max, rng) for a in agents}
    nbhd = {}
    for a in agents:
        for c in cells[a]:
            mode = spec.mode
            if mode == "mixed":
                mode = rng.choice(("enumerated", "weight-induced"))
            if mode == "enumerated":
                for key in submasks(c):
                    fams = family_members(key.bit_count())
                    nbhd[(a, c, key)] = map_family(fams[rng.randrange(len(fams))], key)
            else:
                probe = WeightModel(worlds, [a], {a: _cover(c, n)},
                                    {a: {w: random_weight(rng) for w in worlds}}, {})
                induced = induce_cn(probe)
                for key in submasks(c):
                    nbhd[(a, c, key)] = induced.nbhd[(a, c, key)]
    return CnModel(worlds, agents, cells, nbhd, _random_valuation(rng, spec.atoms, n))


def _cover(c: int, n: int) -> list[int]:
    # the cell plus singletons, so the probe model is a partition
    rest = ((1 << n) - 1) & ~c
    return [c] + [1 << i for i in range(n) if rest >> i & 1]


def random_formula(spec: FormulaSpec, seed) -> Formula:
    """Random formula of depth at most ``spec.depth``.

    Each node picks uniformly among a leaf and the constructors the
    language allows.  ``prop`` is purely boolean; ``cn`` adds belief,
    ``qp`` comparison, ``pc``/``pcpm`` add fact/value announcements.
    """
    if spec.language not in LANGUAGES:
        raise ValueError(f"unknown language {spec.language!r}")
    rng = _rng(seed)
    return _gen(rng, spec.depth, spec)


def _gen(rng, depth: int, spec: FormulaSpec) -> Formula:
    leaves = [TOP] + [Atom(p) for p in spec.atoms]
    if depth <= 0:
        return rng.choice(leaves)
    kinds = ["leaf", "not", "and"]
    lang = spec.language
    if lang in ("cn", "pc", "pcpm"):
        kinds.append("bel")
    if lang == "qp":
        kinds.append("geq")
    if lang == "pc":
        kinds.append("fact")
    if lang == "pcpm":
        kinds.append("value")
    kind = rng.choice(kinds)
    if kind == "leaf":
        return rng.choice(leaves)
    if kind == "not":
        return Not(_gen(rng, depth - 1, spec))
    left = _gen(rng, depth - 1, spec)
    right = _gen(rng, depth - 1, spec)
    if kind == "and":
        return And(left, right)
    if kind == "bel":
        return Bel(rng.choice(spec.agents), left, right)
    if kind == "geq":
        return Geq(rng.choice(spec.agents), left, right)
    if kind == "fact":
        return AnnFact(left, right)
    return AnnValue(left, right)


def random_formulas(spec: FormulaSpec, count: int, seed) -> list[Formula]:
    rng = _rng(seed)
    return [_gen(rng, spec.depth, spec) for _ in range(count)]


def random_model(kind: str, spec: ModelSpec, seed):
    if kind == "cn":
        return random_cn_model(spec, seed)
    if kind == "weight":
        return random_weight_model(spec, seed)
    raise ValueError(f"unknown model kind {kind!r}")

