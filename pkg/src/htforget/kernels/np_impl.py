"""Pure-numpy lane for the single-word (n <= 6 atoms) hot kernels.

Every function here has a numba twin in nb_impl with identical signature
and semantics; tests compare the two lanes bit for bit.  Scans vectorize
over the enumerated context programs in chunks instead of looping.
"""

from __future__ import annotations

import numpy as np

from .luts import FULL, HIT64, ONE, SUB64, SUP64, subsets

_CHUNK = 4096


def ht_table_1w(masks: np.ndarray, n: int) -> np.ndarray:
    """Packed HT-model table: out[Y] bit X set iff (X, Y) is an HT-model."""
    N = 1 << n
    ys = np.arange(N, dtype=np.uint64)
    tab = SUB64[:N].copy()
    ok = np.ones(N, dtype=bool)
    for head, pos, neg, nneg in masks:
        app = ((ys & pos) == pos) & ((ys & neg) == 0) & ((ys & nneg) == nneg)
        ok &= ~app | ((ys & head) != 0)
        kept = ((ys & neg) == 0) & ((ys & nneg) == nneg)
        satw = HIT64[head] | ~SUP64[pos]
        tab[kept] &= satw
    tab[~ok] = np.uint64(0)
    return tab


def rule_tables_1w(masks: np.ndarray, n: int) -> np.ndarray:
    """HT-model table of each rule alone, stacked into shape (R, N)."""
    N = 1 << n
    ys = np.arange(N, dtype=np.uint64)[None, :]
    h = masks[:, 0:1]
    p = masks[:, 1:2]
    ng = masks[:, 2:3]
    nn = masks[:, 3:4]
    app = ((ys & p) == p) & ((ys & ng) == 0) & ((ys & nn) == nn)
    ok = ~app | ((ys & h) != 0)
    kept = ((ys & ng) == 0) & ((ys & nn) == nn)
    satw = HIT64[masks[:, 0]] | ~SUP64[masks[:, 1]]
    base = np.broadcast_to(SUB64[:N], (masks.shape[0], N))
    tab = np.where(kept, base & satw[:, None], base)
    return np.where(ok, tab, np.uint64(0))


def answer_word(table: np.ndarray) -> np.uint64:
    """Bitmask over Y of the answer sets encoded in a model table."""
    N = table.shape[0]
    ys = np.arange(N, dtype=np.uint64)
    hit = table == (ONE << ys)
    return np.bitwise_or.reduce(np.where(hit, ONE << ys, np.uint64(0)))


def _as_words(ctx: np.ndarray, weight: np.ndarray) -> np.ndarray:
    """Answer-set words for a batch of tables (B, N), projected through
    weight[Y] = 1 << lut[Y]."""
    N = ctx.shape[1]
    unit = ONE << np.arange(N, dtype=np.uint64)
    hit = ctx == unit[None, :]
    return np.bitwise_or.reduce(np.where(hit, weight[None, :], np.uint64(0)), axis=1)


def forget_table_1w(table: np.ndarray, n: int, vmask: int, kind: int,
                    clut: np.ndarray) -> np.ndarray:
    """Forgetting at the model-set level, one packed column per kept world.

    kind 0 intersects each family, 1 unions it, 2 unions exactly when the
    family has no least element.  Empty families contribute nothing.
    """
    N = 1 << n
    keep = (N - 1) & ~vmask
    m = n - bin(vmask & (N - 1)).count("1")
    out = np.zeros(1 << m, dtype=np.uint64)
    xs = range(N)
    for y0 in subsets(keep):
        inter = FULL
        union = np.uint64(0)
        members = []
        for a in subsets(vmask & (N - 1)):
            yv = y0 | a
            row = int(table[yv])
            cube = int(SUB64[yv] & SUP64[y0])
            if (row & cube) != (1 << yv):
                continue
            mw = 0
            for x in xs:
                if (row >> x) & 1:
                    mw |= 1 << int(clut[x])
            members.append(mw)
            inter &= np.uint64(mw)
            union |= np.uint64(mw)
        if members:
            if kind == 0:
                s = inter
            elif kind == 1:
                s = union
            else:
                s = inter if int(inter) in members else union
            out[int(clut[y0])] = s
    return out


def vht_words_1w(table: np.ndarray, n: int, vmask: int) -> np.ndarray:
    """Relativized model words: out[Y] bit X' set iff (X', Y) is a model
    after exclusion of the vmask atoms.  X' stays in full-universe coding."""
    N = 1 << n
    ys = np.arange(N, dtype=np.uint64)
    keep = np.uint64(~np.uint64(vmask))
    cube = SUB64[:N] & SUP64[(ys & keep).astype(np.int64)]
    unit = ONE << ys
    rel = (table & cube) == unit
    xs = np.arange(N, dtype=np.uint64)
    bits = ((table[:, None] >> xs[None, :]) & ONE).astype(bool)
    # scatter X -> X minus vmask, dropping the (Y, Y) image, then re-add
    # the genuine diagonal for relevant rows only
    diagless = np.bitwise_or.reduce(
        np.where(bits & (xs[None, :] != ys[:, None]),
                 ONE << (xs & keep)[None, :], np.uint64(0)), axis=1)
    out = np.where(rel, diagless | unit, np.uint64(0))
    return out


def closure_verdicts(table: np.ndarray, cand_tables: np.ndarray, n: int,
                     vmask: int) -> np.ndarray:
    """For each candidate rule table, 1 iff adding the rule preserves the
    relativized model words of the base table."""
    ref = vht_words_1w(table, n, vmask)
    C = cand_tables.shape[0]
    out = np.zeros(C, dtype=np.uint8)
    for lo in range(0, C, _CHUNK):
        hi = min(lo + _CHUNK, C)
        batch = table[None, :] & cand_tables[lo:hi]
        ok = np.ones(hi - lo, dtype=bool)
        for y in range(1 << n):
            ok &= _vht_row_batch(batch[:, y], y, n, vmask) == ref[y]
        out[lo:hi] = ok.astype(np.uint8)
    return out


def _vht_row_batch(rows: np.ndarray, y: int, n: int, vmask: int) -> np.ndarray:
    N = 1 << n
    keep = ~np.uint64(vmask)
    cube = SUB64[y] & SUP64[y & int(keep)]
    unit = ONE << np.uint64(y)
    rel = (rows & cube) == unit
    xs = np.arange(N, dtype=np.uint64)
    bits = ((rows[:, None] >> xs[None, :]) & ONE).astype(bool)
    diagless = np.bitwise_or.reduce(
        np.where(bits & (xs[None, :] != np.uint64(y)),
                 ONE << (xs & keep)[None, :], np.uint64(0)), axis=1)
    return np.where(rel, diagless | unit, np.uint64(0))


def pp_scan(tab_p: np.ndarray, rtab_full: np.ndarray, tab_f: np.ndarray,
            rtab_red: np.ndarray) -> int:
    """First rule index entailed by the source table but not by the result
    table, or -1."""
    ent_p = ((tab_p[None, :] & ~rtab_full) == 0).all(axis=1)
    ent_f = ((tab_f[None, :] & ~rtab_red) == 0).all(axis=1)
    bad = ent_p & ~ent_f
    idx = np.flatnonzero(bad)
    return int(idx[0]) if idx.size else -1


def scan_as_inclusion(tab_l: np.ndarray, rtab_l: np.ndarray, lut_l: np.ndarray,
                      tab_r: np.ndarray, rtab_r: np.ndarray, lut_r: np.ndarray,
                      equal_mode: int, bound: int) -> int:
    """Scan all context programs of up to `bound` (<=2) candidate rules.

    Contexts are enumerated empty, singles, then pairs (i < j).  For each,
    both tables are intersected with the context rule tables, answer-set
    words are read off through the projection luts, and the requirement
    asL <= asR (or equality) is tested.  Returns the id of the first
    violating context, else -1.
    """
    wl = ONE << lut_l
    wr = ONE << lut_r
    R = rtab_l.shape[0]

    def bad(as_l, as_r):
        if equal_mode:
            return as_l != as_r
        return (as_l & ~as_r) != 0

    v = bad(_as_words(tab_l[None, :], wl)[0], _as_words(tab_r[None, :], wr)[0])
    if v:
        return 0
    if bound >= 1:
        as_l = _as_words(tab_l[None, :] & rtab_l, wl)
        as_r = _as_words(tab_r[None, :] & rtab_r, wr)
        viol = np.flatnonzero(bad(as_l, as_r))
        if viol.size:
            return 1 + int(viol[0])
    if bound >= 2:
        base = 1 + R
        for i in range(R):
            rest = R - i - 1
            if rest <= 0:
                break
            tl = tab_l[None, :] & rtab_l[i] & rtab_l[i + 1:]
            tr = tab_r[None, :] & rtab_r[i] & rtab_r[i + 1:]
            viol = np.flatnonzero(bad(_as_words(tl, wl), _as_words(tr, wr)))
            if viol.size:
                return base + int(viol[0])
            base += rest
    return -1


def scan_forget_equiv(tab_p: np.ndarray, rtab_full: np.ndarray,
                      tab_f: np.ndarray, rtab_red: np.ndarray,
                      n: int, vmask: int, kind: int, clut: np.ndarray,
                      bound: int) -> int:
    """Scan contexts R checking forget(P u R) == forget(P) u R at the
    model-set level.  Returns first violating context id, else -1."""
    R = rtab_full.shape[0]

    def check(ctx_full: np.ndarray, ctx_red: np.ndarray) -> np.ndarray:
        return _forget_equal_batch(ctx_full, ctx_red, n, vmask, kind, clut)

    ok = check(tab_p[None, :], tab_f[None, :])
    if not ok[0]:
        return 0
    if bound >= 1:
        for lo in range(0, R, _CHUNK):
            hi = min(lo + _CHUNK, R)
            ok = check(tab_p[None, :] & rtab_full[lo:hi],
                       tab_f[None, :] & rtab_red[lo:hi])
            viol = np.flatnonzero(~ok)
            if viol.size:
                return 1 + lo + int(viol[0])
    if bound >= 2:
        base = 1 + R
        for i in range(R):
            rest = R - i - 1
            if rest <= 0:
                break
            ok = check(tab_p[None, :] & rtab_full[i] & rtab_full[i + 1:],
                       tab_f[None, :] & rtab_red[i] & rtab_red[i + 1:])
            viol = np.flatnonzero(~ok)
            if viol.size:
                return base + int(viol[0])
            base += rest
    return -1


def _forget_equal_batch(ctx_full: np.ndarray, ctx_red: np.ndarray, n: int,
                        vmask: int, kind: int, clut: np.ndarray) -> np.ndarray:
    N = 1 << n
    B = ctx_full.shape[0]
    keep = (N - 1) & ~vmask
    xs = np.arange(N, dtype=np.uint64)
    cw = ONE << clut
    ok = np.ones(B, dtype=bool)
    for y0 in subsets(keep):
        inter = np.full(B, FULL, dtype=np.uint64)
        union = np.zeros(B, dtype=np.uint64)
        count = np.zeros(B, dtype=np.int64)
        memb = []
        for a in subsets(vmask & (N - 1)):
            yv = y0 | a
            row = ctx_full[:, yv]
            cube = SUB64[yv] & SUP64[y0]
            unit = ONE << np.uint64(yv)
            valid = (row & cube) == unit
            bits = ((row[:, None] >> xs[None, :]) & ONE).astype(bool)
            mw = np.bitwise_or.reduce(
                np.where(bits, cw[None, :], np.uint64(0)), axis=1)
            mw = np.where(valid, mw, np.uint64(0))
            inter = np.where(valid, inter & mw, inter)
            union |= mw
            count += valid
            memb.append((valid, mw))
        least = np.zeros(B, dtype=bool)
        for valid, mw in memb:
            least |= valid & (mw == inter)
        if kind == 0:
            s = inter
        elif kind == 1:
            s = union
        else:
            s = np.where(least, inter, union)
        s = np.where(count > 0, s, np.uint64(0))
        ok &= s == ctx_red[:, int(clut[y0])]
    return ok
