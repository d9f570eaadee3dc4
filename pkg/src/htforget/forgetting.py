"""Forgetting operators: remove atoms from a program while controlling
what the remaining atoms may still say.

For an instance (P, V, ambient) and each V-free world Y, the family of Y
collects one candidate model column per minimal V-augmentation A of Y that
makes Y u A a self-supporting model of P; the member for A is the set of
V-erased here-parts reachable under Y u A.  The operators differ in how a
family is collapsed into the result's model column:

  sp  intersect the family members,
  r   union them,
  m   union exactly when the family is non-empty but has no least member,
      intersect otherwise.

Empty families contribute no models at all.  The satisfiability criterion
("omega") holds iff some family is non-empty with no least member, i.e.
exactly when sp and m can disagree.

Families are computed from the models of P restricted to P's own atoms;
ambient atoms outside A(P) therefore produce empty families and the result
forbids them.  Results are synthesized from the model set by emitting one
rule per countermodel and verified by re-enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

import numpy as np

from . import kernels
from .kernels.luts import subsets
from .semantics import (CapExceeded, HTModelSet, check_cap, program_table,
                        strongly_equivalent)
from .syntax import Program, Rule, Signature

KINDS = {"sp": 0, "r": 1, "m": 2}

DEFAULT_MAX_RULE_ATOMS = 4


class SynthesisError(RuntimeError):
    """Postcondition failure: synthesized program missed its model set."""


@dataclass(frozen=True)
class ForgettingInstance:
    """A program, the atoms to forget, and the ambient signature."""

    program: Program
    forget: frozenset
    ambient: Signature

    def __post_init__(self):
        missing = self.forget - set(self.ambient.atoms)
        if missing:
            raise ValueError(f"forgotten atoms {sorted(missing)} not in ambient")
        hidden = self.program.atom_set() - set(self.ambient.atoms)
        if hidden:
            raise ValueError(f"program atoms {sorted(hidden)} not in ambient")

    @classmethod
    def make(cls, program: Program, forget: Iterable[str],
             ambient: Optional[Signature] = None) -> "ForgettingInstance":
        fset = frozenset(forget)
        if ambient is None:
            ambient = program.effective_signature()
            ambient = ambient.union(Signature.of(sorted(fset - set(ambient.atoms))))
        return cls(program, fset, ambient)

    def reduced_signature(self) -> Signature:
        return self.ambient.restrict(
            a for a in self.ambient if a not in self.forget)

    def vmask(self) -> int:
        return self.ambient.mask(self.forget)


@dataclass(frozen=True)
class RFamily:
    """The family of one V-free world: minimal augmentation -> member set."""

    base: frozenset
    members: dict

    def member_sets(self) -> list:
        return [self.members[a] for a in sorted(self.members, key=sorted)]

    def __len__(self) -> int:
        return len(self.members)


class OmegaVerdict(NamedTuple):
    satisfied: bool
    witness: Optional[frozenset]


def least_element(members: Iterable[frozenset]) -> Optional[frozenset]:
    """The member contained in all members, if any."""
    members = list(members)
    if not members:
        return None
    meet = frozenset.intersection(*members)
    return meet if meet in members else None


def _restricted_table(inst: ForgettingInstance) -> np.ndarray:
    """Model table over the ambient, zeroed outside the program's atoms."""
    amb = inst.ambient
    check_cap(amb)
    table = program_table(inst.program, amb)
    ap = amb.mask(inst.program.atom_set())
    ys = np.arange(table.shape[0], dtype=np.uint64)
    table[(ys & ~np.uint64(ap)) != 0] = np.uint64(0)
    return table


def _family_columns(table: np.ndarray, n: int, vmask: int):
    """Yield (y0, member list) per V-free world; members are sets of
    V-erased here-masks, still in full-universe coding."""
    keep = ((1 << n) - 1) & ~vmask
    erase = ~vmask
    for y0 in subsets(keep):
        members = []
        for a in subsets(vmask):
            yv = y0 | a
            row = table[yv]
            xs = kernels.set_bits(row)
            if not _relevant_row(row, yv, y0, n):
                continue
            members.append(frozenset(int(x) & erase for x in xs))
        yield y0, members


def _relevant_row(row: np.ndarray, yv: int, y0: int, n: int) -> bool:
    xs = kernels.set_bits(row)
    if yv not in xs:
        return False
    for x in xs:
        x = int(x)
        if x != yv and (x & ~yv) == 0 and (y0 & ~x) == 0:
            return False
    return True


def r_family(inst: ForgettingInstance, base: Iterable[str]) -> RFamily:
    """The family of one V-free world, with named members."""
    amb = inst.ambient
    baseset = frozenset(base)
    stray = baseset & inst.forget
    if stray:
        raise ValueError(f"family base contains forgotten atoms {sorted(stray)}")
    y0 = amb.mask(baseset)
    vmask = inst.vmask()
    table = _restricted_table(inst)
    n = len(amb)
    members = {}
    for a in subsets(vmask):
        yv = y0 | a
        row = table[yv]
        if not _relevant_row(row, yv, y0, n):
            continue
        xs = kernels.set_bits(row)
        member = frozenset(
            frozenset(amb.names(int(x) & ~vmask)) for x in xs)
        members[frozenset(amb.names(a))] = member
    return RFamily(baseset, members)


def omega(inst: ForgettingInstance) -> OmegaVerdict:
    """Does some V-free world have a non-empty family without least member?
    Witness is the first such world in ascending mask order."""
    amb = inst.ambient
    table = _restricted_table(inst)
    for y0, members in _family_columns(table, len(amb), inst.vmask()):
        if members and least_element(members) is None:
            return OmegaVerdict(True, frozenset(amb.names(y0)))
    return OmegaVerdict(False, None)


def forget_models(inst: ForgettingInstance, kind: str) -> HTModelSet:
    """Model set of the forgetting result over the reduced signature."""
    if kind not in KINDS:
        raise ValueError(f"unknown operator kind {kind!r}")
    amb = inst.ambient
    n = len(amb)
    vmask = inst.vmask()
    red = inst.reduced_signature()
    table = _restricted_table(inst)
    clut = kernels.compress_lut(n, vmask)
    if n <= 6:
        cols = kernels.forget_table_1w(
            np.ascontiguousarray(table[:, 0]), n, vmask, KINDS[kind], clut)
        pairs = set()
        for y0 in subsets(((1 << n) - 1) & ~vmask):
            yp = int(clut[y0])
            word = int(cols[yp])
            x = 0
            while word:
                if word & 1:
                    pairs.add((x, yp))
                word >>= 1
                x += 1
        return HTModelSet(red, frozenset(pairs))
    pairs = set()
    for y0, members in _family_columns(table, n, vmask):
        if not members:
            continue
        if kind == "sp":
            col = frozenset.intersection(*members)
        elif kind == "r":
            col = frozenset.union(*members)
        else:
            least = least_element(members)
            col = least if least is not None else frozenset.union(*members)
        yp = int(clut[y0])
        pairs.update((int(clut[x]), yp) for x in col)
    return HTModelSet(red, frozenset(pairs))


def synthesize(target: HTModelSet, minimize: bool = False) -> Program:
    """A program whose HT-models over the target signature are exactly the
    target: one constraint per missing total pair, one pinpoint rule per
    missing strict pair under a present total pair.  Verified afterwards."""
    sig = target.signature
    m = len(sig)
    if not target.is_total_closed():
        raise ValueError("model set is not total-closed; no program matches")
    pairs = target.pairs
    full = (1 << m) - 1
    rules = []
    for y in range(1 << m):
        comp = full & ~y
        if (y, y) not in pairs:
            rules.append(Rule.make(
                head=(), pos=sig.names(y), neg=sig.names(comp)))
            continue
        for x in subsets(y):
            if x == y or (x, y) in pairs:
                continue
            gap = y & ~x
            rules.append(Rule.make(
                head=sig.names(gap), pos=sig.names(x),
                neg=sig.names(comp), nneg=sig.names(gap)))
    program = Program.of(rules)
    if minimize:
        program = minimize_program(program, sig)
    achieved = HTModelSet.from_table(program_table(program, sig), sig)
    if achieved.pairs != pairs:
        raise SynthesisError(
            f"synthesized program realizes {len(achieved)} pairs, "
            f"target has {len(pairs)}")
    return program


def forget(inst: ForgettingInstance, kind: str, minimize: bool = False) -> Program:
    """Apply a forgetting operator and synthesize the result program."""
    return synthesize(forget_models(inst, kind), minimize=minimize)


def _shrink_candidates(rule: Rule, sig: Signature):
    """Variants with one atom dropped from one component, deterministic."""
    for part in ("head", "pos", "neg", "nneg"):
        atoms = getattr(rule, part)
        for a in sig.atoms:
            if a not in atoms:
                continue
            parts = {
                "head": rule.head, "pos": rule.pos,
                "neg": rule.neg, "nneg": rule.nneg,
            }
            parts[part] = parts[part] - {a}
            yield Rule.make(**parts)


def minimize_program(program: Program, signature: Optional[Signature] = None) -> Program:
    """Greedy strongly-equivalent reduction over an explicit signature:
    drop redundant rules, then drop redundant atoms inside rules, repeat."""
    sig = signature or program.effective_signature()
    ref = program_table(program, sig)

    def same(rules) -> bool:
        cand = Program.of(rules)
        return np.array_equal(program_table(cand, sig), ref)

    current = set(program.rules)
    changed = True
    while changed:
        changed = False
        for r in Program.of(current).sorted_rules(sig):
            if same(current - {r}):
                current -= {r}
                changed = True
        for r in Program.of(current).sorted_rules(sig):
            if r not in current:
                continue
            rule = r
            shrunk = True
            while shrunk:
                shrunk = False
                for variant in _shrink_candidates(rule, sig):
                    cand = (current - {rule}) | {variant}
                    if same(cand):
                        current = cand
                        rule = variant
                        changed = True
                        shrunk = True
                        break
    return Program(frozenset(current), program.signature)


def canonical_rule_at(signature: Signature, code: int) -> Rule:
    """The rule at one position of the canonical order: one base-16 digit
    per atom selecting head/pos/neg/nneg membership."""
    head, pos, neg, nneg = [], [], [], []
    for a in signature.atoms:
        nib = code & 15
        code >>= 4
        if nib & 1:
            head.append(a)
        if nib & 2:
            pos.append(a)
        if nib & 4:
            neg.append(a)
        if nib & 8:
            nneg.append(a)
    return Rule.make(head, pos, neg, nneg)


def enumerate_canonical_rules(signature: Signature):
    """All 16**n rules over the signature: each atom independently appears
    in head, pos, neg, nneg or nowhere; ascending code order."""
    for code in range(16 ** len(signature)):
        yield canonical_rule_at(signature, code)


def canonical_rule_masks(signature: Signature, ambient: Signature) -> np.ndarray:
    """Mask array of all canonical rules over `signature`, encoded in
    `ambient` bit positions; row order matches enumerate_canonical_rules."""
    n = len(signature)
    codes = np.arange(16 ** n, dtype=np.uint64)
    out = np.zeros((codes.size, 4), dtype=np.uint64)
    for i, atom in enumerate(signature.atoms):
        bit = np.uint64(1) << np.uint64(ambient.index(atom))
        nib = (codes >> np.uint64(4 * i)) & np.uint64(15)
        for c, sel in enumerate((1, 2, 4, 8)):
            out[:, c] |= np.where((nib & np.uint64(sel)) != 0, bit, np.uint64(0))
    return out


def closure_forget(inst: ForgettingInstance,
                   max_atoms: int = DEFAULT_MAX_RULE_ATOMS,
                   minimize: bool = False) -> Program:
    """All V-free rules whose addition leaves the program V-equivalent.

    The result is a (large) program over ambient minus the forgotten atoms;
    with minimize=True it is reduced to a small strongly equivalent core.
    """
    amb = inst.ambient
    if len(amb) > max_atoms:
        raise CapExceeded(
            f"ambient has {len(amb)} atoms, rule-enumeration cap is {max_atoms}")
    n = len(amb)
    vmask = inst.vmask()
    red = inst.reduced_signature()
    table = np.ascontiguousarray(program_table(inst.program, amb)[:, 0])
    masks = canonical_rule_masks(red, amb)
    cand_tables = kernels.rule_tables_1w(masks, n)
    verdicts = kernels.closure_verdicts(table, cand_tables, n, vmask)
    rules = [r for r, ok in zip(enumerate_canonical_rules(red), verdicts) if ok]
    program = Program.of(rules)
    if minimize:
        program = minimize_program(program, red)
    return program
