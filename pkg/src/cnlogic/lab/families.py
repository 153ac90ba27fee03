"""Exhaustive enumeration of valid neighbourhood families."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .. import _kernels
from ..cn_model import NeighbourhoodFamily
from ..errors import SizeCapError
from ..worldset import deposit_table, full_mask, iter_bits, popcount

FAMILY_CAP = 4


@lru_cache(maxsize=None)
def _valid_codes(n: int) -> tuple[int, ...]:
    flags = _kernels.valid_family_flags(n)
    return tuple(int(c) for c in np.flatnonzero(flags))


def _canonical_key(members: frozenset) -> tuple:
    return (len(members), sorted((popcount(y), y) for y in members))


@lru_cache(maxsize=None)
def _families(n: int) -> tuple[frozenset, ...]:
    out = []
    for code in _valid_codes(n):
        out.append(frozenset(iter_bits(code)))
    return tuple(sorted(out, key=_canonical_key))


def enumerate_families(n: int) -> list[NeighbourhoodFamily]:
    """Every family over an ``n``-element ground set meeting (c), (d), (sc).

    The ground set is ``{0, .., n-1}`` (mask ``2**n - 1``).  All
    ``2**(2**n)`` candidate families are filtered; output is sorted by family
    size, then by the sorted member list.
    """
    if n < 0:
        raise ValueError("ground size must be non-negative")
    if n > FAMILY_CAP:
        raise SizeCapError(f"family enumeration is capped at ground size {FAMILY_CAP}")
    ground = full_mask(n)
    return [NeighbourhoodFamily(ground, m) for m in _families(n)]


def family_members(n: int) -> tuple[frozenset, ...]:
    """Member sets of :func:`enumerate_families` (cached, no wrapper objects)."""
    if n > FAMILY_CAP:
        raise SizeCapError(f"family enumeration is capped at ground size {FAMILY_CAP}")
    return _families(n)


def majority_family(ground: int) -> frozenset:
    """``{Y <= ground : |Y| > |ground| / 2}``, valid for every ground set."""
    k = popcount(ground)
    table = deposit_table(list(iter_bits(ground)))
    return frozenset(m for m in table if 2 * popcount(m) > k)


def map_family(members, ground: int) -> frozenset:
    """Move a family over ``{0..k-1}`` onto the bits of ``ground``."""
    table = deposit_table(list(iter_bits(ground)))
    return frozenset(table[y] for y in members)
