"""The worked examples: the urn, the lottery and the two comparison models."""

from __future__ import annotations

from fractions import Fraction

from ..cn_model import CnModel
from ..comparison import ComparisonModel
from ..weight_model import WeightModel, as_fraction
from ..worldset import full_mask, popcount, submasks
from .families import majority_family

ELLSBERG_WORLDS = ("red", "green", "yellow", "blue")
ELLSBERG_ATOMS = {"Gr": "red", "Gg": "green", "Gy": "yellow", "Gb": "blue"}


def builtin_ellsberg(agent: str = "a") -> CnModel:
    """Ambiguity-averse urn model: one cell, the same families everywhere.

    Pinned keys: ``{red, yellow}`` and ``{green, blue}`` favour the known
    colour, the whole space takes every set of three or more worlds.  Every
    other key gets the majority family ``{Y : |Y| > |X|/2}``.
    """
    worlds = ELLSBERG_WORLDS
    bit = {w: 1 << i for i, w in enumerate(worlds)}
    red, green, yellow, blue = (bit[w] for w in worlds)
    full = full_mask(len(worlds))
    pinned = {
        red | yellow: frozenset({red, red | yellow}),
        green | blue: frozenset({green, green | blue}),
        full: frozenset(y for y in submasks(full) if popcount(y) >= 3),
    }

    def rule(_agent, _cell, key):
        return pinned.get(key, majority_family(key))

    valuation = {atom: bit[w] for atom, w in ELLSBERG_ATOMS.items()}
    return CnModel.from_rule(worlds, [agent], {agent: [full]}, valuation, rule)


def lottery_world(i: int, n: int) -> str:
    return f"{i:0{len(str(n - 1))}d}"


def builtin_lottery(n: int, t: int = 0, heavy=None, agent: str = "a") -> WeightModel:
    """Lottery with ``n`` tickets; the agent bought ticket ``t``.

    Ticket ``t`` weighs ``heavy`` (default ``n``) and every other ticket 1.
    With ``heavy > n - 1`` the agent bets on ``t`` whenever it is still
    possible and otherwise on the majority of the remaining tickets.  Atom
    ``win_<name>`` holds exactly at world ``<name>``.
    """
    if n < 1:
        raise ValueError("a lottery needs at least one ticket")
    if not 0 <= t < n:
        raise ValueError(f"bought ticket {t} outside 0..{n - 1}")
    heavy = Fraction(n) if heavy is None else as_fraction(heavy)
    if heavy <= n - 1:
        raise ValueError(f"heavy weight must exceed {n - 1}")
    worlds = [lottery_world(i, n) for i in range(n)]
    weights = {w: (heavy if i == t else Fraction(1)) for i, w in enumerate(worlds)}
    valuation = {f"win_{w}": 1 << i for i, w in enumerate(worlds)}
    return WeightModel(worlds, [agent], {agent: [full_mask(n)]}, {agent: weights}, valuation)


COMPARISON_WORLDS = ("pq", "p", "q", "0")


def builtin_comparison() -> tuple[ComparisonModel, ComparisonModel]:
    """The pair of models separating the comparison language from beliefs.

    Worlds are named by the atoms true there (``0`` for none).  Both models
    contain ``({p}, {q})``; only the first also relates ``[p]`` to ``[q]``.
    """
    worlds = COMPARISON_WORLDS
    bit = {w: 1 << i for i, w in enumerate(worlds)}
    p_mask = bit["pq"] | bit["p"]
    q_mask = bit["pq"] | bit["q"]
    valuation = {"p": p_mask, "q": q_mask}
    singles = (bit["p"], bit["q"])
    n1 = ComparisonModel(worlds, [(p_mask, q_mask), singles], valuation)
    n2 = ComparisonModel(worlds, [singles], valuation)
    return n1, n2
