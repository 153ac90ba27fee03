"""Hot bitset kernels, compiled with numba when available.

Each kernel exists twice: a ``*_numba`` version (``@njit``) and a
``*_numpy`` version with identical results.  The module-level names without
suffix point at the selected backend.  Set ``CNLOGIC_NO_NUMBA=1`` in the
environment to force the numpy path; it is also used automatically when
numba cannot be imported.

Conventions: a family of subsets of a ``c``-element index space is a bool
array ``flags`` of length ``2**c`` with ``flags[s]`` true iff subset ``s`` is a
member.  Weights are exact integers (rational weights scaled by a common
denominator), so every comparison stays exact.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func

        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return decorator


_flag = os.environ.get("CNLOGIC_NO_NUMBA", "").strip().lower()
USE_NUMBA = NUMBA_AVAILABLE and _flag in ("", "0", "false", "no")
BACKEND = "numba" if USE_NUMBA else "numpy"

# result codes shared by the family checkers
OK = 0
VIOLATES_D = 1
VIOLATES_SC = 2
VIOLATES_M = 3
VIOLATES_NI = 4
VIOLATES_NSTAR = 5
VIOLATES_EMPTY = 6


# ---------------------------------------------------------------------------
# exhaustive family filter


@njit(cache=True)
def valid_family_flags_numba(n):
    size = 1 << n
    full = size - 1
    total = 1 << size
    out = np.zeros(total, dtype=np.bool_)
    for cand in range(total):
        ok = True
        for y in range(size):
            comp_in = (cand >> (full ^ y)) & 1
            if (cand >> y) & 1 and comp_in:
                ok = False
                break
            if not comp_in:
                for z in range(size):
                    if z != y and (y & ~z) == 0 and not ((cand >> z) & 1):
                        ok = False
                        break
                if not ok:
                    break
        out[cand] = ok
    return out


def valid_family_flags_numpy(n):
    size = 1 << n
    full = size - 1
    cand = np.arange(1 << size, dtype=np.int64)
    member = [((cand >> s) & 1).astype(bool) for s in range(size)]
    ok = np.ones(cand.shape[0], dtype=bool)
    for y in range(size):
        comp_out = ~member[full ^ y]
        ok &= ~(member[y] & member[full ^ y])
        for z in range(size):
            if z != y and (y & ~z) == 0:
                ok &= ~(comp_out & ~member[z])
    return ok


# ---------------------------------------------------------------------------
# weight sums


@njit(cache=True)
def subset_sums_numba(weights):
    k = weights.shape[0]
    out = np.zeros(1 << k, dtype=np.int64)
    for m in range(1, 1 << k):
        low = m & -m
        i = 0
        while (1 << i) != low:
            i += 1
        out[m] = out[m ^ low] + weights[i]
    return out


def subset_sums_numpy(weights):
    out = np.zeros(1, dtype=np.int64)
    for w in np.asarray(weights, dtype=np.int64):
        out = np.concatenate((out, out + w))
    return out


@njit(cache=True)
def masked_sum_numba(weights, flags):
    total = 0
    for i in range(weights.shape[0]):
        if flags[i]:
            total += weights[i]
    return total


def masked_sum_numpy(weights, flags):
    return int(weights[flags].sum())


@njit(cache=True)
def induced_membership_numba(sums):
    size = sums.shape[0]
    out = np.zeros((size, size), dtype=np.bool_)
    for x in range(size):
        y = x
        while True:
            if sums[y] > sums[x ^ y]:
                out[x, y] = True
            if y == 0:
                break
            y = (y - 1) & x
    return out


def induced_membership_numpy(sums):
    sums = np.asarray(sums, dtype=np.int64)
    size = sums.shape[0]
    ys = np.arange(size, dtype=np.int64)
    out = np.zeros((size, size), dtype=bool)
    for x in range(size):
        sub = (ys & ~x) == 0
        out[x] = sub & (sums > sums[(x ^ ys) & (size - 1)])
    return out


# ---------------------------------------------------------------------------
# per-family condition checks in a c-bit index space with ground ``g``


@njit(cache=True)
def _strict_up_numba(base, c):
    # up[z]: some y strictly below z has base[y]
    size = base.shape[0]
    up = base.copy()
    for i in range(c):
        bit = 1 << i
        for m in range(size):
            if m & bit and up[m ^ bit]:
                up[m] = True
    strict = np.zeros(size, dtype=np.bool_)
    for z in range(size):
        zz = z
        while zz:
            low = zz & -zz
            if up[z ^ low]:
                strict[z] = True
                break
            zz ^= low
    return strict


@njit(cache=True)
def check_family_numba(flags, ground, c):
    size = flags.shape[0]
    y = ground
    while True:
        if flags[y] and flags[ground ^ y]:
            return VIOLATES_D, y, ground ^ y
        if y == 0:
            break
        y = (y - 1) & ground
    base = np.zeros(size, dtype=np.bool_)
    y = ground
    while True:
        if not flags[ground ^ y]:
            base[y] = True
        if y == 0:
            break
        y = (y - 1) & ground
    strict = _strict_up_numba(base, c)
    z = ground
    while True:
        if strict[z] and not flags[z]:
            yy = (z - 1) & z
            while True:
                if base[yy] and yy != z:
                    return VIOLATES_SC, yy, z
                if yy == 0:
                    break
                yy = (yy - 1) & z
        if z == 0:
            break
        z = (z - 1) & ground
    return OK, -1, -1


@njit(cache=True)
def derived_check_numba(flags, ground, c):
    if ground == 0:
        if flags[0]:
            return VIOLATES_EMPTY, 0, -1
        return OK, -1, -1
    if flags[0]:
        return VIOLATES_NI, 0, -1
    if not flags[ground]:
        return VIOLATES_NSTAR, ground, -1
    strict = _strict_up_numba(flags, c)
    z = ground
    while True:
        if strict[z] and not flags[z]:
            yy = (z - 1) & z
            while True:
                if flags[yy]:
                    return VIOLATES_M, yy, z
                if yy == 0:
                    break
                yy = (yy - 1) & z
        if z == 0:
            break
        z = (z - 1) & ground
    return OK, -1, -1


def _strict_up_numpy(base, c):
    up = base.copy()
    for i in range(c):
        view = up.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    idx = np.arange(base.shape[0], dtype=np.int64)
    strict = np.zeros_like(base)
    for i in range(c):
        bit = 1 << i
        has = (idx & bit) != 0
        strict[has] |= up[idx[has] ^ bit]
    return strict


def _submasks_of(ground, size):
    idx = np.arange(size, dtype=np.int64)
    return (idx & ~ground) == 0


def check_family_numpy(flags, ground, c):
    size = flags.shape[0]
    idx = np.arange(size, dtype=np.int64)
    inside = _submasks_of(ground, size)
    comp = np.where(inside, idx ^ ground, 0)
    both = inside & flags & flags[comp]
    if both.any():
        y = int(np.flatnonzero(both)[-1])
        return VIOLATES_D, y, ground ^ y
    base = inside & ~flags[comp]
    strict = _strict_up_numpy(base, c)
    bad = inside & strict & ~flags
    if bad.any():
        z = int(np.flatnonzero(bad)[-1])
        below = np.flatnonzero(base & ((idx & ~z) == 0) & (idx != z))
        return VIOLATES_SC, int(below[-1]), z
    return OK, -1, -1


def derived_check_numpy(flags, ground, c):
    if ground == 0:
        return (VIOLATES_EMPTY, 0, -1) if flags[0] else (OK, -1, -1)
    if flags[0]:
        return VIOLATES_NI, 0, -1
    if not flags[ground]:
        return VIOLATES_NSTAR, ground, -1
    size = flags.shape[0]
    idx = np.arange(size, dtype=np.int64)
    inside = _submasks_of(ground, size)
    strict = _strict_up_numpy(flags & inside, c)
    bad = inside & strict & ~flags
    if bad.any():
        z = int(np.flatnonzero(bad)[-1])
        below = np.flatnonzero(flags & ((idx & ~z) == 0) & (idx != z))
        return VIOLATES_M, int(below[-1]), z
    return OK, -1, -1


if USE_NUMBA:
    valid_family_flags = valid_family_flags_numba
    subset_sums = subset_sums_numba
    masked_sum = masked_sum_numba
    induced_membership = induced_membership_numba
    check_family = check_family_numba
    derived_check = derived_check_numba
    strict_up = _strict_up_numba
else:
    valid_family_flags = valid_family_flags_numpy
    subset_sums = subset_sums_numpy
    masked_sum = masked_sum_numpy
    induced_membership = induced_membership_numpy
    check_family = check_family_numpy
    derived_check = derived_check_numpy
    strict_up = _strict_up_numpy
