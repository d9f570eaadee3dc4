"""Shared bit-twiddling lookup tables for 64-bit packed model tables.

An interpretation over n atoms is an n-bit integer X.  A model table for a
program over n <= 6 atoms is one uint64 per "there" world Y whose bit X is
set iff the pair (X, Y) is an HT-model.  The 64-entry tables below answer
subset/superset/intersection questions for all 6-bit masks in one lookup.
"""

from __future__ import annotations

import numpy as np

_j = np.arange(64, dtype=np.uint64)
_y = _j[:, None]

# SUB64[y] bit j set iff j is a subset of y
SUB64 = np.bitwise_or.reduce(
    np.where((_j[None, :] & ~_y) == 0, np.uint64(1) << _j[None, :], np.uint64(0)), axis=1
)
# SUP64[p] bit j set iff p is a subset of j
SUP64 = np.bitwise_or.reduce(
    np.where((_y & ~_j[None, :]) == 0, np.uint64(1) << _j[None, :], np.uint64(0)), axis=1
)
# HIT64[h] bit j set iff h and j intersect
HIT64 = np.bitwise_or.reduce(
    np.where((_y & _j[None, :]) != 0, np.uint64(1) << _j[None, :], np.uint64(0)), axis=1
)

del _j, _y

ONE = np.uint64(1)
FULL = np.uint64(0xFFFFFFFFFFFFFFFF)


def subsets(mask: int):
    """All subsets of a bitmask, ascending as integers."""
    s = 0
    while True:
        yield s
        if s == mask:
            return
        s = (s - mask) & mask


def compress_lut(n: int, vmask: int) -> np.ndarray:
    """Map each n-bit mask X to the rank-compressed index of X with the
    vmask bits deleted (remaining bits packed toward bit 0)."""
    xs = np.arange(1 << n, dtype=np.uint64)
    out = np.zeros(1 << n, dtype=np.uint64)
    shift = 0
    for bit in range(n):
        if (vmask >> bit) & 1:
            continue
        out |= ((xs >> np.uint64(bit)) & ONE) << np.uint64(shift)
        shift += 1
    return out
