"""Numba lane for the single-word hot kernels.

Loop-style twins of np_impl with identical signatures and results.  The
64-entry masks from luts are captured as compile-time constants.
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

from .luts import HIT64, SUB64, SUP64

_FULL = np.uint64(0xFFFFFFFFFFFFFFFF)
_ONE = np.uint64(1)


@njit(cache=True)
def ht_table_1w(masks, n):
    N = 1 << n
    k = masks.shape[0]
    tab = np.empty(N, np.uint64)
    for y in range(N):
        yu = uint64(y)
        ok = True
        for r in range(k):
            h = masks[r, 0]
            p = masks[r, 1]
            ng = masks[r, 2]
            nn = masks[r, 3]
            if (yu & p) == p and (yu & ng) == 0 and (yu & nn) == nn and (yu & h) == 0:
                ok = False
                break
        if not ok:
            tab[y] = 0
            continue
        w = SUB64[y]
        for r in range(k):
            h = masks[r, 0]
            p = masks[r, 1]
            ng = masks[r, 2]
            nn = masks[r, 3]
            if (yu & ng) == 0 and (yu & nn) == nn:
                w &= HIT64[h] | ~SUP64[p]
        tab[y] = w
    return tab


@njit(cache=True)
def rule_tables_1w(masks, n):
    N = 1 << n
    R = masks.shape[0]
    out = np.empty((R, N), np.uint64)
    one = np.empty((1, 4), np.uint64)
    for r in range(R):
        for c in range(4):
            one[0, c] = masks[r, c]
        out[r] = ht_table_1w(one, n)
    return out


@njit(cache=True)
def answer_word(table):
    N = table.shape[0]
    w = uint64(0)
    for y in range(N):
        if table[y] == _ONE << uint64(y):
            w |= _ONE << uint64(y)
    return w


@njit(cache=True)
def _forget_columns(table, n, vmask, kind, clut, out):
    """Fill out (length 2**m) with the packed forgetting columns."""
    N = 1 << n
    keep = uint64((N - 1) & ~vmask)
    vm = uint64(vmask & (N - 1))
    members = np.empty(64, np.uint64)
    out[:] = 0
    y0 = uint64(0)
    while True:
        inter = _FULL
        union = uint64(0)
        count = 0
        a = uint64(0)
        while True:
            yv = y0 | a
            row = table[yv]
            cube = SUB64[yv] & SUP64[y0]
            unit = _ONE << yv
            if (row & cube) == unit:
                mw = uint64(0)
                for x in range(N):
                    if (row >> uint64(x)) & _ONE:
                        mw |= _ONE << clut[x]
                members[count] = mw
                count += 1
                inter &= mw
                union |= mw
            if a == vm:
                break
            a = (a - vm) & vm
        if count > 0:
            if kind == 0:
                s = inter
            elif kind == 1:
                s = union
            else:
                least = False
                for i in range(count):
                    if members[i] == inter:
                        least = True
                        break
                s = inter if least else union
            out[clut[y0]] = s
        if y0 == keep:
            break
        y0 = (y0 - keep) & keep


@njit(cache=True)
def forget_table_1w(table, n, vmask, kind, clut):
    m = 0
    for b in range(n):
        if not (vmask >> b) & 1:
            m += 1
    out = np.empty(1 << m, np.uint64)
    _forget_columns(table, n, vmask, kind, clut, out)
    return out


@njit(cache=True)
def _vht_row(row, y, n, keep):
    cube = SUB64[y] & SUP64[uint64(y) & keep]
    unit = _ONE << uint64(y)
    if (row & cube) != unit:
        return uint64(0)
    w = unit
    for x in range(1 << n):
        if x != y and (row >> uint64(x)) & _ONE:
            w |= _ONE << (uint64(x) & keep)
    return w


@njit(cache=True)
def vht_words_1w(table, n, vmask):
    N = 1 << n
    keep = ~uint64(vmask)
    out = np.empty(N, np.uint64)
    for y in range(N):
        out[y] = _vht_row(table[y], y, n, keep)
    return out


@njit(cache=True)
def closure_verdicts(table, cand_tables, n, vmask):
    N = 1 << n
    keep = ~uint64(vmask)
    ref = vht_words_1w(table, n, vmask)
    C = cand_tables.shape[0]
    out = np.zeros(C, np.uint8)
    for c in range(C):
        ok = True
        for y in range(N):
            if _vht_row(table[y] & cand_tables[c, y], y, n, keep) != ref[y]:
                ok = False
                break
        if ok:
            out[c] = 1
    return out


@njit(cache=True)
def pp_scan(tab_p, rtab_full, tab_f, rtab_red):
    R = rtab_full.shape[0]
    N = tab_p.shape[0]
    Nm = tab_f.shape[0]
    for r in range(R):
        ent = True
        for y in range(N):
            if tab_p[y] & ~rtab_full[r, y]:
                ent = False
                break
        if not ent:
            continue
        for y in range(Nm):
            if tab_f[y] & ~rtab_red[r, y]:
                return r
    return -1


@njit(cache=True)
def _as_word_pair(tab_l, wa, wb, lut_l, tab_r, wc, wd, lut_r):
    """Answer-set words of tab_l & wa & wb and tab_r & wc & wd, projected."""
    as_l = uint64(0)
    for y in range(tab_l.shape[0]):
        w = tab_l[y] & wa[y] & wb[y]
        if w == _ONE << uint64(y):
            as_l |= _ONE << lut_l[y]
    as_r = uint64(0)
    for y in range(tab_r.shape[0]):
        w = tab_r[y] & wc[y] & wd[y]
        if w == _ONE << uint64(y):
            as_r |= _ONE << lut_r[y]
    return as_l, as_r


@njit(cache=True)
def scan_as_inclusion(tab_l, rtab_l, lut_l, tab_r, rtab_r, lut_r,
                      equal_mode, bound):
    R = rtab_l.shape[0]
    NL = tab_l.shape[0]
    NR = tab_r.shape[0]
    ones_l = np.full(NL, _FULL)
    ones_r = np.full(NR, _FULL)
    as_l, as_r = _as_word_pair(tab_l, ones_l, ones_l, lut_l,
                               tab_r, ones_r, ones_r, lut_r)
    if (as_l != as_r) if equal_mode else (as_l & ~as_r) != 0:
        return 0
    if bound >= 1:
        for i in range(R):
            as_l, as_r = _as_word_pair(tab_l, rtab_l[i], ones_l, lut_l,
                                       tab_r, rtab_r[i], ones_r, lut_r)
            if (as_l != as_r) if equal_mode else (as_l & ~as_r) != 0:
                return 1 + i
    if bound >= 2:
        cid = 1 + R
        for i in range(R):
            for j in range(i + 1, R):
                as_l, as_r = _as_word_pair(tab_l, rtab_l[i], rtab_l[j], lut_l,
                                           tab_r, rtab_r[i], rtab_r[j], lut_r)
                if (as_l != as_r) if equal_mode else (as_l & ~as_r) != 0:
                    return cid
                cid += 1
    return -1


@njit(cache=True)
def _forget_ctx_bad(tab_p, wa, wb, tab_f, wc, wd, n, vmask, kind, clut,
                    tmp_full, tmp_out):
    for y in range(tab_p.shape[0]):
        tmp_full[y] = tab_p[y] & wa[y] & wb[y]
    _forget_columns(tmp_full, n, vmask, kind, clut, tmp_out)
    for y in range(tab_f.shape[0]):
        if tmp_out[y] != tab_f[y] & wc[y] & wd[y]:
            return True
    return False


@njit(cache=True)
def scan_forget_equiv(tab_p, rtab_full, tab_f, rtab_red, n, vmask, kind,
                      clut, bound):
    R = rtab_full.shape[0]
    N = tab_p.shape[0]
    Nm = tab_f.shape[0]
    ones_n = np.full(N, _FULL)
    ones_m = np.full(Nm, _FULL)
    tmp_full = np.empty(N, np.uint64)
    tmp_out = np.empty(Nm, np.uint64)
    if _forget_ctx_bad(tab_p, ones_n, ones_n, tab_f, ones_m, ones_m,
                       n, vmask, kind, clut, tmp_full, tmp_out):
        return 0
    if bound >= 1:
        for i in range(R):
            if _forget_ctx_bad(tab_p, rtab_full[i], ones_n, tab_f,
                               rtab_red[i], ones_m, n, vmask, kind, clut,
                               tmp_full, tmp_out):
                return 1 + i
    if bound >= 2:
        cid = 1 + R
        for i in range(R):
            for j in range(i + 1, R):
                if _forget_ctx_bad(tab_p, rtab_full[i], rtab_full[j], tab_f,
                                   rtab_red[i], rtab_red[j], n, vmask, kind,
                                   clut, tmp_full, tmp_out):
                    return cid
                cid += 1
    return -1
