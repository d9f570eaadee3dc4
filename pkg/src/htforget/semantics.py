"""Model-theoretic core: classical satisfaction, reducts, HT-models,
answer sets, consequence and strong equivalence.

An HT-interpretation is a pair (X, Y) with X <= Y, "here" and "there".
(X, Y) is an HT-model of P iff Y satisfies P classically and X satisfies
the reduct of P by Y.  Y is an answer set iff (Y, Y) is an HT-model and no
(X, Y) with X < Y is.  Two programs are strongly equivalent iff they have
the same HT-models; P entails Q iff every HT-model of P is one of Q.

Interpretations are bit vectors (ints) over an explicit Signature; public
functions also accept iterables of atom names.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from . import kernels
from .syntax import Program, Rule, Signature

Interpretation = int

DEFAULT_MAX_ATOMS = 16


class CapExceeded(RuntimeError):
    """Signature too large for exhaustive model enumeration."""


def enumeration_cap() -> int:
    raw = os.environ.get("HTFORGET_MAX_ATOMS", "")
    if raw.strip():
        return int(raw)
    return DEFAULT_MAX_ATOMS


def check_cap(signature: Signature):
    cap = enumeration_cap()
    if len(signature) > cap:
        raise CapExceeded(
            f"signature has {len(signature)} atoms, enumeration cap is {cap} "
            "(set HTFORGET_MAX_ATOMS to raise it)")


def as_mask(interp: Union[int, Iterable[str]], signature: Signature) -> int:
    if isinstance(interp, (int, np.integer)):
        return int(interp)
    return signature.mask(interp)


def satisfies(program: Program, interp, signature: Optional[Signature] = None) -> bool:
    """Classical satisfaction, reading not/not not as negation on atoms."""
    sig = signature or program.effective_signature()
    i = as_mask(interp, sig)
    for r in program.rules:
        head = sig.mask(r.head)
        pos = sig.mask(r.pos)
        neg = sig.mask(r.neg)
        nneg = sig.mask(r.nneg)
        if (i & pos) == pos and (i & neg) == 0 and (i & nneg) == nneg and (i & head) == 0:
            return False
    return True


def reduct(program: Program, interp, signature: Optional[Signature] = None) -> Program:
    """Keep head <- pos of every rule whose negative parts accept interp."""
    sig = signature or program.effective_signature()
    i = as_mask(interp, sig)
    kept = []
    for r in program.rules:
        if (i & sig.mask(r.neg)) == 0 and (i & sig.mask(r.nneg)) == sig.mask(r.nneg):
            kept.append(Rule.make(r.head, r.pos))
    return Program(frozenset(kept), program.signature)


def is_ht_model(program: Program, pair, signature: Optional[Signature] = None) -> bool:
    sig = signature or program.effective_signature()
    x = as_mask(pair[0], sig)
    y = as_mask(pair[1], sig)
    if x & ~y:
        raise ValueError("here-part must be a subset of the there-part")
    return satisfies(program, y, sig) and satisfies(reduct(program, y, sig), x, sig)


@dataclass(frozen=True)
class HTModelSet:
    """A set of HT-interpretation pairs over a fixed signature.

    Pairs are (here, there) bit masks.  The set is total-closed when every
    pair's there-world also appears as a diagonal pair.
    """

    signature: Signature
    pairs: frozenset

    def __post_init__(self):
        full = (1 << len(self.signature)) - 1
        for x, y in self.pairs:
            if x & ~y or y & ~full:
                raise ValueError(f"pair ({x:#x}, {y:#x}) out of range")

    def sorted_pairs(self) -> list:
        return sorted(self.pairs, key=lambda p: (p[1], p[0]))

    def named_pairs(self) -> list:
        sig = self.signature
        return [(sig.names(x), sig.names(y)) for x, y in self.sorted_pairs()]

    def is_total_closed(self) -> bool:
        theres = {y for _, y in self.pairs}
        return all((y, y) in self.pairs for y in theres)

    def answer_sets(self) -> tuple:
        """Minimal total pairs, as atom-name frozensets (mask ascending)."""
        blocked = {y for x, y in self.pairs if x != y}
        winners = sorted(y for x, y in self.pairs if x == y and y not in blocked)
        return tuple(frozenset(self.signature.names(y)) for y in winners)

    def table(self) -> np.ndarray:
        n = len(self.signature)
        tab = np.zeros((1 << n, kernels.words_for(n)), dtype=np.uint64)
        for x, y in self.pairs:
            tab[y, x >> 6] |= np.uint64(1) << np.uint64(x & 63)
        return tab

    @classmethod
    def from_table(cls, table: np.ndarray, signature: Signature) -> "HTModelSet":
        pairs = kernels.pairs_from_table(table, len(signature))
        return cls(signature, frozenset((int(x), int(y)) for x, y in pairs))

    @classmethod
    def from_named(cls, signature: Signature, named_pairs) -> "HTModelSet":
        pairs = frozenset(
            (signature.mask(x), signature.mask(y)) for x, y in named_pairs)
        return cls(signature, pairs)

    def v_exclude(self, forget: Iterable[str]) -> "HTModelSet":
        """Remove the given atoms elementwise from every pair."""
        drop = set(forget)
        red = self.signature.restrict(a for a in self.signature if a not in drop)
        vmask = self.signature.mask(a for a in drop if a in self.signature)
        lut = kernels.compress_lut(len(self.signature), vmask)
        pairs = frozenset(
            (int(lut[x]), int(lut[y])) for x, y in self.pairs)
        return HTModelSet(red, pairs)

    def to_json_dict(self) -> dict:
        return {
            "signature": list(self.signature.atoms),
            "ht_models": [[list(x), list(y)] for x, y in self.named_pairs()],
        }

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        x = as_mask(pair[0], self.signature)
        y = as_mask(pair[1], self.signature)
        return (x, y) in self.pairs


def program_table(program: Program, signature: Signature) -> np.ndarray:
    """Packed HT-model table of a program over an explicit signature."""
    check_cap(signature)
    masks = kernels.rule_mask_array(sorted(program.rules), signature)
    return kernels.ht_table(masks, len(signature))


def ht_models(program: Program, signature: Optional[Signature] = None) -> HTModelSet:
    sig = signature or program.effective_signature()
    return HTModelSet.from_table(program_table(program, sig), sig)


def answer_sets(program: Program, signature: Optional[Signature] = None) -> tuple:
    """Answer sets as atom-name frozensets, in ascending mask order."""
    sig = signature or program.effective_signature()
    table = program_table(program, sig)
    mask = kernels.answer_mask(table)
    return tuple(frozenset(sig.names(int(y))) for y in np.flatnonzero(mask))


def common_signature(p: Program, q: Program,
                     signature: Optional[Signature] = None) -> Signature:
    if signature is not None:
        return signature
    return p.effective_signature().union(q.effective_signature())


def ht_consequence(p: Program, q: Program,
                   signature: Optional[Signature] = None) -> bool:
    """Every HT-model of p (over the common signature) is a model of q."""
    sig = common_signature(p, q, signature)
    tp = program_table(p, sig)
    tq = program_table(q, sig)
    return not np.any(tp & ~tq)


def strongly_equivalent(p: Program, q: Program,
                        signature: Optional[Signature] = None) -> bool:
    sig = common_signature(p, q, signature)
    return np.array_equal(program_table(p, sig), program_table(q, sig))


def v_exclude(collection, forget: Iterable[str]):
    """Elementwise atom removal; accepts an HTModelSet or a collection of
    atom-name sets (the latter returns a deduplicated sorted tuple)."""
    if isinstance(collection, HTModelSet):
        return collection.v_exclude(forget)
    drop = frozenset(forget)
    shrunk = {frozenset(s) - drop for s in collection}
    return tuple(sorted(shrunk, key=lambda s: tuple(sorted(s))))
