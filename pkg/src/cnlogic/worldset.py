"""World sets as integer bit vectors.

A world set over a model with worlds ``w_0 .. w_{n-1}`` is a plain ``int``
whose bit ``i`` is set iff ``w_i`` belongs to the set.  Bit positions follow
the model's declaration order and never change.  All the usual set
operations are the bitwise ones (``&``, ``|``, ``& ~``); the helpers here
cover what bitwise operators do not give directly.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

WorldSet = int


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(iter_bits(mask))


def submasks(mask: int) -> list[int]:
    """All subsets of ``mask``, in increasing numeric order (``0`` first)."""
    out = []
    sub = 0
    while True:
        out.append(sub)
        if sub == mask:
            return out
        sub = (sub - mask) & mask


def full_mask(n: int) -> int:
    return (1 << n) - 1


def deposit(abstract: int, positions: Sequence[int]) -> int:
    """Map bit ``i`` of ``abstract`` onto bit ``positions[i]``."""
    out = 0
    for i in iter_bits(abstract):
        out |= 1 << positions[i]
    return out


def extract(mask: int, positions: Sequence[int]) -> int:
    """Inverse of :func:`deposit` for masks contained in ``positions``."""
    if len(positions) > 256:
        flags = mask_to_bools(mask, positions[-1] + 1)
        return bools_to_mask(flags[np.asarray(positions, dtype=np.int64)])
    out = 0
    for i, p in enumerate(positions):
        if mask >> p & 1:
            out |= 1 << i
    return out


def deposit_table(positions: Sequence[int]) -> list[int]:
    """``table[s] == deposit(s, positions)`` for every ``s < 2**len(positions)``."""
    table = [0]
    for p in positions:
        bit = 1 << p
        table += [t | bit for t in table]
    return table


def from_names(names: Iterable[str], index: dict[str, int]) -> int:
    out = 0
    for name in names:
        out |= 1 << index[name]
    return out


def to_names(mask: int, worlds: Sequence[str]) -> list[str]:
    """Member names of ``mask``, sorted by name (the canonical order)."""
    return sorted(worlds[i] for i in iter_bits(mask))


def mask_to_bools(mask: int, n: int) -> np.ndarray:
    """Bool array of length ``n`` with entry ``i`` set iff bit ``i`` is."""
    raw = (mask & ((1 << n) - 1)).to_bytes((n + 7) // 8 or 1, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)


def bools_to_mask(flags) -> int:
    packed = np.packbits(np.asarray(flags, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")
