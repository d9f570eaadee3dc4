"""Relativized model theory: equivalence that ignores a set of atoms.

A V-HT-interpretation over signature A is a pair (X, Y) with Y <= A and
either X = Y or X a strict subset of Y\\V.  It is a V-HT-model of P iff

  (a) Y satisfies P classically,
  (b) no Y' < Y that agrees with Y outside V satisfies the reduct by Y,
  (c) when X < Y, some X' <= Y with X'\\V = X satisfies the reduct by Y.

Two programs are V-equivalent iff they have the same V-HT-models; this
coincides with equal answer sets under every extension by rules that avoid
V.  Tables here are computed over the full given signature (equivalence
semantics); the forgetting operators restrict to the program's own atoms
separately.

Two construction routes are provided: "direct" evaluates the definition
pair by pair (slow, independent), "via_ht" reads the same set off the
packed HT-table through the relevance condition.  They must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .semantics import as_mask, check_cap, program_table, reduct, satisfies
from .syntax import Program, Signature

_itersubsets = kernels.subsets


@dataclass(frozen=True)
class VHTModelSet:
    """V-HT-model pairs; here-parts stay in full-signature coding."""

    signature: Signature
    forgotten: frozenset
    pairs: frozenset

    def sorted_pairs(self) -> list:
        return sorted(self.pairs, key=lambda p: (p[1], p[0]))

    def named_pairs(self) -> list:
        sig = self.signature
        return [(sig.names(x), sig.names(y)) for x, y in self.sorted_pairs()]

    def to_json_dict(self) -> dict:
        return {
            "signature": list(self.signature.atoms),
            "forgotten": sorted(self.forgotten),
            "v_ht_models": [[list(x), list(y)] for x, y in self.named_pairs()],
        }

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        x = as_mask(pair[0], self.signature)
        y = as_mask(pair[1], self.signature)
        return (x, y) in self.pairs


def _resolve(program: Program, forget: Iterable[str],
             signature: Optional[Signature]):
    fset = frozenset(forget)
    if signature is None:
        sig = program.effective_signature()
        extra = sorted(fset - set(sig.atoms))
        sig = sig.union(Signature.of(extra))
    else:
        sig = signature
    vmask = sig.mask(fset)
    return sig, fset, vmask


def is_v_ht_model(program: Program, forget: Iterable[str], pair,
                  signature: Optional[Signature] = None) -> bool:
    """Direct check of conditions (a)-(c) for one pair."""
    sig, fset, vmask = _resolve(program, forget, signature)
    x = as_mask(pair[0], sig)
    y = as_mask(pair[1], sig)
    ykeep = y & ~vmask
    if not (x == y or (x & ~ykeep) == 0 and x != ykeep):
        raise ValueError(
            "not a V-HT-interpretation: here-part must equal the there-part "
            "or be a strict subset of it minus the forgotten atoms")
    if not satisfies(program, y, sig):
        return False
    red = reduct(program, y, sig)
    # Y' < Y agreeing with Y outside V has the form (Y\V) | A' with A' < Y & V
    for ap in _itersubsets(y & vmask):
        yp = ykeep | ap
        if yp != y and satisfies(red, yp, sig):
            return False
    if x != y:
        found = False
        for ap in _itersubsets(y & vmask):
            xp = x | ap
            if (xp & ~y) == 0 and satisfies(red, xp, sig):
                found = True
                break
        if not found:
            return False
    return True


def v_ht_models_direct(program: Program, forget: Iterable[str],
                       signature: Optional[Signature] = None) -> VHTModelSet:
    """Enumerate the definition literally with satisfies/reduct only."""
    sig, fset, vmask = _resolve(program, forget, signature)
    check_cap(sig)
    n = len(sig)
    pairs = set()
    for y in range(1 << n):
        if not satisfies(program, y, sig):
            continue
        red = reduct(program, y, sig)
        ykeep = y & ~vmask
        dominated = False
        for ap in _itersubsets(y & vmask):
            yp = ykeep | ap
            if yp != y and satisfies(red, yp, sig):
                dominated = True
                break
        if dominated:
            continue
        pairs.add((y, y))
        for x in _itersubsets(ykeep):
            if x == ykeep:
                continue
            for ap in _itersubsets(y & vmask):
                if satisfies(red, x | ap, sig):
                    pairs.add((x, y))
                    break
    return VHTModelSet(sig, fset, frozenset(pairs))


def v_ht_models(program: Program, forget: Iterable[str],
                signature: Optional[Signature] = None,
                method: str = "via_ht") -> VHTModelSet:
    """V-HT-models; method 'via_ht' (table-based) or 'direct'."""
    if method == "direct":
        return v_ht_models_direct(program, forget, signature)
    if method != "via_ht":
        raise ValueError(f"unknown method {method!r}")
    sig, fset, vmask = _resolve(program, forget, signature)
    check_cap(sig)
    table = program_table(program, sig)
    pairs = kernels.vht_pairs(table, len(sig), vmask)
    return VHTModelSet(sig, fset, frozenset(pairs))


def relevant_sets(program: Program, forget: Iterable[str],
                  signature: Optional[Signature] = None) -> tuple:
    """There-worlds admtting no smaller model that agrees outside the
    forgotten atoms; returned as atom-name frozensets, mask ascending."""
    sig, fset, vmask = _resolve(program, forget, signature)
    check_cap(sig)
    table = program_table(program, sig)
    rel = kernels.relevant_mask(table, len(sig), vmask)
    return tuple(frozenset(sig.names(int(y))) for y in np.flatnonzero(rel))


def relativized_equivalent(p: Program, q: Program, forget: Iterable[str],
                           signature: Optional[Signature] = None) -> bool:
    """Same V-HT-models over the common signature (default: union of both
    programs' atoms plus the forgotten ones)."""
    fset = frozenset(forget)
    if signature is None:
        sig = p.effective_signature().union(q.effective_signature())
        sig = sig.union(Signature.of(sorted(fset - set(sig.atoms))))
    else:
        sig = signature
    a = v_ht_models(p, fset, sig)
    b = v_ht_models(q, fset, sig)
    return a.pairs == b.pairs
