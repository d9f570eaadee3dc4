"""General packed-table operations for signatures beyond six atoms.

Tables have shape (2**n, W) with W = max(1, 2**(n-6)); bit X of row Y lives
in word X >> 6, position X & 63.  These run on numpy only; the dispatched
single-word kernels cover the hot paths.
"""

from __future__ import annotations

import numpy as np

from .luts import FULL, HIT64, ONE, SUB64, SUP64


def words_for(n: int) -> int:
    return max(1, (1 << n) >> 6)


def _low(mask: np.ndarray | int):
    return mask & np.uint64(63)


def subset_rows(n: int) -> np.ndarray:
    """Seed table: bit X of row Y set iff X is a subset of Y."""
    N = 1 << n
    W = words_for(n)
    ys = np.arange(N, dtype=np.uint64)
    yh = ys >> np.uint64(6)
    yl = ys & np.uint64(63)
    wh = np.arange(W, dtype=np.uint64)
    cond = (wh[None, :] & ~yh[:, None]) == 0
    return np.where(cond, SUB64[yl][:, None], np.uint64(0))


def _rule_sat_words(head: int, pos: int, W: int) -> np.ndarray:
    """Word w of the classical satisfaction mask of rule head <- pos."""
    wh = np.arange(W, dtype=np.uint64)
    hh = np.uint64(head) >> np.uint64(6)
    ph = np.uint64(pos) >> np.uint64(6)
    base = HIT64[int(_low(np.uint64(head)))] | np.where(
        (ph & ~wh) == 0, ~SUP64[int(_low(np.uint64(pos)))], FULL)
    return np.where((hh & wh) != 0, FULL, base)


def ht_table_mw(masks: np.ndarray, n: int) -> np.ndarray:
    N = 1 << n
    W = words_for(n)
    ys = np.arange(N, dtype=np.uint64)
    tab = subset_rows(n)
    ok = np.ones(N, dtype=bool)
    for head, pos, neg, nneg in masks:
        app = ((ys & pos) == pos) & ((ys & neg) == 0) & ((ys & nneg) == nneg)
        ok &= ~app | ((ys & head) != 0)
        kept = ((ys & neg) == 0) & ((ys & nneg) == nneg)
        tab[kept] &= _rule_sat_words(int(head), int(pos), W)[None, :]
    tab[~ok] = np.uint64(0)
    return tab


def diag_mask(table: np.ndarray) -> np.ndarray:
    """Boolean per row: is (Y, Y) in the table."""
    N = table.shape[0]
    ys = np.arange(N, dtype=np.uint64)
    word = table[np.arange(N), (ys >> np.uint64(6)).astype(np.int64)]
    return ((word >> (ys & np.uint64(63))) & ONE).astype(bool)


def answer_mask(table: np.ndarray) -> np.ndarray:
    """Boolean per row Y: row contains exactly the diagonal bit."""
    N = table.shape[0]
    ys = np.arange(N, dtype=np.uint64)
    word = table[np.arange(N), (ys >> np.uint64(6)).astype(np.int64)]
    counts = (table != 0).sum(axis=1)
    return (word == ONE << (ys & np.uint64(63))) & (counts == 1)


def cube_rows(n: int, vmask: int) -> np.ndarray:
    """Bit X of row Y set iff Y\\vmask <= X <= Y."""
    N = 1 << n
    W = words_for(n)
    ys = np.arange(N, dtype=np.uint64)
    lo = ys & ~np.uint64(vmask)
    yh = ys >> np.uint64(6)
    yl = (ys & np.uint64(63)).astype(np.int64)
    lh = lo >> np.uint64(6)
    ll = (lo & np.uint64(63)).astype(np.int64)
    wh = np.arange(W, dtype=np.uint64)
    cond = ((wh[None, :] & ~yh[:, None]) == 0) & ((lh[:, None] & ~wh[None, :]) == 0)
    return np.where(cond, (SUB64[yl] & SUP64[ll])[:, None], np.uint64(0))


def relevant_mask(table: np.ndarray, n: int, vmask: int) -> np.ndarray:
    """Rows whose only model in their similarity cube is the diagonal."""
    N = 1 << n
    ys = np.arange(N, dtype=np.uint64)
    cube = cube_rows(n, vmask)
    unit = np.zeros_like(table)
    unit[np.arange(N), (ys >> np.uint64(6)).astype(np.int64)] = ONE << (ys & np.uint64(63))
    return ((table & cube) == unit).all(axis=1) & diag_mask(table)


def pairs_from_table(table: np.ndarray, n: int) -> np.ndarray:
    """All (X, Y) pairs, Y-major then X ascending, shape (K, 2) int64."""
    N = 1 << n
    W = table.shape[1]
    bits = np.unpackbits(table.view(np.uint8), axis=1, bitorder="little")
    ys, xs = np.nonzero(bits[:, : N if W == 1 else 64 * W])
    order = np.lexsort((xs, ys))
    return np.stack([xs[order], ys[order]], axis=1).astype(np.int64)


def set_bits(word_row: np.ndarray) -> np.ndarray:
    """Indices of set bits across a row of words, ascending."""
    bits = np.unpackbits(word_row.view(np.uint8), bitorder="little")
    return np.flatnonzero(bits)


def vht_pairs(table: np.ndarray, n: int, vmask: int) -> list:
    """Relativized model pairs (X, Y) with X in full-universe coding,
    Y-major then X ascending."""
    rel = relevant_mask(table, n, vmask)
    keepm = ((1 << n) - 1) & ~vmask
    out = []
    for y in np.flatnonzero(rel):
        xs = set_bits(table[y])
        proj = sorted({int(x) & keepm for x in xs if int(x) != int(y)})
        out.extend((x, int(y)) for x in proj)
        out.append((int(y), int(y)))
    out.sort(key=lambda p: (p[1], p[0]))
    return out


def lift_table_1w(table_red: np.ndarray, n: int, vmask: int,
                  clut: np.ndarray) -> np.ndarray:
    """Lift a reduced-universe single-word table to the full universe: a
    pair belongs iff its projection does."""
    N = 1 << n
    xs = np.arange(N, dtype=np.uint64)
    rows = table_red[clut[: N].astype(np.int64)]
    bits = ((rows[:, None] >> clut[None, :N]) & ONE).astype(bool)
    bits &= ((xs[None, :] & ~xs[:, None]) == 0)  # X subset of Y
    return np.bitwise_or.reduce(
        np.where(bits, ONE << xs[None, :], np.uint64(0)), axis=1)
