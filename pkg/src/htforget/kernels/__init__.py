"""Kernel dispatch: numba lane by default, pure-numpy fallback.

Set HTFORGET_BACKEND=numpy to force the fallback, HTFORGET_BACKEND=numba to
require the jitted lane (import error if numba is unavailable).  The
single-word kernels listed in _DISPATCHED exist in both lanes with
identical behavior; everything else is numpy-only.
"""

from __future__ import annotations

import os

import numpy as np

from . import np_impl, tables
from .luts import FULL, ONE, compress_lut, subsets
from .tables import (answer_mask, cube_rows, diag_mask, ht_table_mw,
                     lift_table_1w, pairs_from_table, relevant_mask,
                     set_bits, subset_rows, vht_pairs, words_for)

_DISPATCHED = (
    "ht_table_1w",
    "rule_tables_1w",
    "answer_word",
    "forget_table_1w",
    "vht_words_1w",
    "closure_verdicts",
    "pp_scan",
    "scan_as_inclusion",
    "scan_forget_equiv",
)


def _pick_backend():
    choice = os.environ.get("HTFORGET_BACKEND", "").strip().lower()
    if choice not in ("", "numpy", "numba"):
        raise RuntimeError(
            f"HTFORGET_BACKEND must be 'numpy' or 'numba', not {choice!r}")
    if choice == "numpy":
        return np_impl, "numpy"
    try:
        from . import nb_impl
        return nb_impl, "numba"
    except ImportError:
        if choice == "numba":
            raise
        return np_impl, "numpy"


_impl, _name = _pick_backend()


def backend_name() -> str:
    return _name


ht_table_1w = _impl.ht_table_1w
rule_tables_1w = _impl.rule_tables_1w
answer_word = _impl.answer_word
forget_table_1w = _impl.forget_table_1w
vht_words_1w = _impl.vht_words_1w
closure_verdicts = _impl.closure_verdicts
pp_scan = _impl.pp_scan
scan_as_inclusion = _impl.scan_as_inclusion
scan_forget_equiv = _impl.scan_forget_equiv


def rule_mask_array(rules, signature) -> np.ndarray:
    """Encode rules as a (k, 4) uint64 array of head/pos/neg/nneg masks."""
    out = np.zeros((len(rules), 4), dtype=np.uint64)
    for i, r in enumerate(rules):
        out[i, 0] = signature.mask(r.head)
        out[i, 1] = signature.mask(r.pos)
        out[i, 2] = signature.mask(r.neg)
        out[i, 3] = signature.mask(r.nneg)
    return out


def ht_table(masks: np.ndarray, n: int) -> np.ndarray:
    """Packed model table (2**n, W); single-word lane when it fits."""
    if n <= 6:
        return ht_table_1w(masks, n)[:, None]
    return ht_table_mw(masks, n)
