"""Postulate checking for forgetting operators.

Each postulate relates a program P, the result of forgetting f(P,V), and
possibly a partner program P' or an added context program R over the kept
atoms:

  sC   AS(f(P,V)) subseteq AS(P)||V
  wC   AS(P)||V subseteq AS(f(P,V))
  CP   AS(f(P,V)) = AS(P)||V
  wE   AS(P)=AS(P')  implies  AS(f(P,V)) = AS(f(P',V))
  SE   HT(P)=HT(P')  implies  f(P,V) and f(P',V) strongly equivalent
  W    every HT-model of P is one of f(P,V) lifted to the ambient
  PP   every kept-atom rule entailed by P is entailed by f(P,V)
  SI   f(P u R, V) strongly equivalent to f(P,V) u R
  SP   AS(f(P,V) u R) = AS(P u R)||V
  sSP  the subseteq half of SP;  wSP  the superseteq half

Quantified postulates (PP, SI, SP, sSP, wSP) are refuted by bounded
enumeration of contexts (all programs of at most `bound` canonical rules
over the kept atoms); a clean report means "no violation up to the bound",
never "satisfied".  Pair postulates (wE, SE) draw partners from equal
answer-set buckets over the corpus and from entailed-rule mutations.

Context scans require the program's atoms to span the ambient signature,
so corpus programs are padded with x <- x tautologies; instances that do
not span, or whose kept signature exceeds the scan width, are counted as
skipped rather than silently narrowed.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .forgetting import (KINDS, ForgettingInstance, canonical_rule_at,
                         canonical_rule_masks, enumerate_canonical_rules,
                         forget_models)
from .semantics import (HTModelSet, answer_sets, check_cap, ht_models,
                        program_table)
from .syntax import (Program, ProgramClass, Rule, Signature, parse_program,
                     render_program)

PROPERTIES = ("sC", "wC", "CP", "wE", "SE", "W", "PP", "SI", "SP", "sSP", "wSP")

OPERATOR_KINDS = ("sp", "r", "m")

PAIR_PROPERTIES = frozenset({"wE", "SE"})
SCAN_PROPERTIES = frozenset({"SI", "SP", "sSP", "wSP"})

SCAN_SIGNATURE_CAP = 6
SCAN_KEPT_CAP = 2
PP_KEPT_CAP = 3

_EXPECTED = {
    "sp": frozenset({"wC", "SE", "PP", "SI", "wSP"}),
    "r": frozenset({"sC", "SE", "PP", "SI", "sSP"}),
    "m": frozenset({"sC", "wC", "CP", "wE", "SE", "PP", "sSP"}),
}


def expected_matrix() -> dict:
    """kind -> postulates it satisfies (everything else is violated
    somewhere, with concrete witnesses shipped for the checkable ones)."""
    return {k: set(v) for k, v in _EXPECTED.items()}


@dataclass(frozen=True)
class GeneratorConfig:
    signature_size: int = 4
    min_rules: int = 1
    max_rules: int = 5
    p_head: float = 0.35
    p_pos: float = 0.25
    p_neg: float = 0.25
    p_nneg: float = 0.15
    rule_class: Optional[ProgramClass] = None
    pad: bool = True
    seed: int = 0

    def __post_init__(self):
        for p in (self.p_head, self.p_pos, self.p_neg, self.p_nneg):
            if not 0.0 <= p <= 1.0:
                raise ValueError("inclusion probabilities must be in [0,1]")
        if self.signature_size < 1:
            raise ValueError("signature_size must be positive")

    def signature(self) -> Signature:
        names = [chr(ord("a") + i) for i in range(self.signature_size)]
        return Signature.of(names)


def _constrain(rule: Rule, cls: ProgramClass, rng: random.Random,
               atoms: Sequence[str]) -> Rule:
    head, pos, neg, nneg = set(rule.head), set(rule.pos), set(rule.neg), set(rule.nneg)
    if cls.rank < ProgramClass.EXTENDED.rank:
        nneg = set()
    if cls.rank < ProgramClass.DISJUNCTIVE.rank and len(head) > 1:
        head = {rng.choice(sorted(head))}
    if cls.rank < ProgramClass.NORMAL.rank:
        neg = set()
    if cls.rank < ProgramClass.HORN.rank:
        pos = set()
    if not head and cls is ProgramClass.FACTS:
        head = {rng.choice(list(atoms))}
    return Rule.make(head, pos, neg, nneg)


def random_rule(cfg: GeneratorConfig, rng: random.Random) -> Rule:
    atoms = list(cfg.signature().atoms)
    head, pos, neg, nneg = [], [], [], []
    for a in atoms:
        x = rng.random()
        if x < cfg.p_head:
            head.append(a)
        elif x < cfg.p_head + cfg.p_pos:
            pos.append(a)
        elif x < cfg.p_head + cfg.p_pos + cfg.p_neg:
            neg.append(a)
        elif x < cfg.p_head + cfg.p_pos + cfg.p_neg + cfg.p_nneg:
            nneg.append(a)
    rule = Rule.make(head, pos, neg, nneg)
    if cfg.rule_class is not None:
        rule = _constrain(rule, cfg.rule_class, rng, atoms)
    return rule


def random_program(cfg: GeneratorConfig, rng: Optional[random.Random] = None) -> Program:
    rng = rng or random.Random(cfg.seed)
    count = rng.randint(cfg.min_rules, cfg.max_rules)
    rules = [random_rule(cfg, rng) for _ in range(count)]
    if cfg.pad:
        rules.extend(Rule.make([a], [a]) for a in cfg.signature().atoms)
    return Program.of(rules, cfg.signature())


def random_instance(cfg: GeneratorConfig, rng: Optional[random.Random] = None,
                    forget_size: Optional[int] = None) -> ForgettingInstance:
    rng = rng or random.Random(cfg.seed)
    program = random_program(cfg, rng)
    atoms = list(cfg.signature().atoms)
    if forget_size is None:
        forget_size = rng.randint(1, max(1, len(atoms) - 1))
    v = rng.sample(atoms, forget_size)
    return ForgettingInstance.make(program, v, cfg.signature())


def build_corpus(seed: int, size: int, cfg: Optional[GeneratorConfig] = None,
                 forget_size: Optional[int] = None) -> list:
    """Deterministic instance corpus; one shared rng drives all draws."""
    cfg = cfg or GeneratorConfig(seed=seed)
    rng = random.Random(seed)
    return [random_instance(cfg, rng, forget_size) for _ in range(size)]


def enumerate_contexts(signature: Signature, bound: int):
    """All programs of at most `bound` canonical rules, smallest first."""
    check_cap(signature)
    rules = list(enumerate_canonical_rules(signature))
    for k in range(bound + 1):
        for combo in itertools.combinations(range(len(rules)), k):
            yield Program.of([rules[i] for i in combo], signature)


def context_from_id(cid: int, rule_count: int) -> tuple:
    """Rule indices of the context at a scan position (empty, singles,
    then pairs i<j)."""
    if cid == 0:
        return ()
    cid -= 1
    if cid < rule_count:
        return (cid,)
    cid -= rule_count
    for i in range(rule_count):
        rest = rule_count - i - 1
        if cid < rest:
            return (i, i + 1 + cid)
        cid -= rest
    raise ValueError("context id out of range")


@dataclass(frozen=True)
class Violation:
    property: str
    kind: str
    program: str
    forget: tuple
    ambient: tuple
    partner: Optional[str]
    context: Optional[str]
    detail: str
    left: tuple
    right: tuple

    def instance(self) -> ForgettingInstance:
        return ForgettingInstance.make(
            parse_program(self.program), self.forget, Signature.of(self.ambient))

    def to_json_dict(self) -> dict:
        return {
            "property": self.property,
            "kind": self.kind,
            "program": self.program,
            "forget": list(self.forget),
            "ambient": list(self.ambient),
            "partner": self.partner,
            "context": self.context,
            "detail": self.detail,
            "left": [sorted(s) for s in self.left],
            "right": [sorted(s) for s in self.right],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Violation":
        return cls(
            property=d["property"], kind=d["kind"], program=d["program"],
            forget=tuple(sorted(d["forget"])), ambient=tuple(d["ambient"]),
            partner=d.get("partner"), context=d.get("context"),
            detail=d.get("detail", ""),
            left=tuple(frozenset(s) for s in d["left"]),
            right=tuple(frozenset(s) for s in d["right"]))


@dataclass
class PropertyReport:
    property: str
    kind: str
    bound: int
    checked: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)

    @property
    def quantified(self) -> bool:
        return self.property in SCAN_PROPERTIES or self.property == "PP"

    def status(self) -> str:
        if self.violations:
            return "violated"
        return "no violation up to bound" if self.quantified else "no violation"

    def to_json_dict(self) -> dict:
        return {
            "property": self.property,
            "kind": self.kind,
            "bound": self.bound,
            "checked": self.checked,
            "skipped": self.skipped,
            "status": self.status(),
            "violations": [v.to_json_dict() for v in self.violations],
        }


def _named_as(sets) -> tuple:
    return tuple(sorted((frozenset(s) for s in sets), key=sorted))


def projected_answer_sets(program: Program, ambient: Signature,
                          forget: Iterable[str]) -> tuple:
    v = set(forget)
    return _named_as({frozenset(a) - v for a in answer_sets(program, ambient)})


def result_answer_sets(inst: ForgettingInstance, kind: str) -> tuple:
    return _named_as(forget_models(inst, kind).answer_sets())


def _violation(prop, kind, inst, left, right, detail,
               partner=None, context=None) -> Violation:
    return Violation(
        property=prop, kind=kind, program=render_program(inst.program),
        forget=tuple(sorted(inst.forget)), ambient=inst.ambient.atoms,
        partner=None if partner is None else render_program(partner),
        context=None if context is None else render_program(context),
        detail=detail, left=_named_as(left), right=_named_as(right))


def _spans_ambient(inst: ForgettingInstance) -> bool:
    return inst.program.atom_set() == set(inst.ambient.atoms)


def _scan_tables(inst: ForgettingInstance, kind: str):
    amb, red = inst.ambient, inst.reduced_signature()
    n, vmask = len(amb), inst.vmask()
    clut = kernels.compress_lut(n, vmask)
    tab_p = np.ascontiguousarray(program_table(inst.program, amb)[:, 0])
    tab_f = np.ascontiguousarray(forget_models(inst, kind).table()[:, 0])
    masks_full = canonical_rule_masks(red, amb)
    masks_red = canonical_rule_masks(red, red)
    rtab_full = kernels.rule_tables_1w(masks_full, n)
    rtab_red = kernels.rule_tables_1w(masks_red, len(red))
    return tab_p, tab_f, rtab_full, rtab_red, clut


def _decode_context(cid: int, red: Signature) -> Program:
    idxs = context_from_id(cid, 16 ** len(red))
    return Program.of([canonical_rule_at(red, i) for i in idxs], red)


def check_with_context(prop: str, kind: str, inst: ForgettingInstance,
                       context: Program) -> Optional[Violation]:
    """Evaluate one quantified postulate against one explicit context."""
    amb, red = inst.ambient, inst.reduced_signature()
    joined = inst.program.union(context)
    if prop == "SI":
        left = forget_models(
            ForgettingInstance(joined, inst.forget, amb), kind)
        right_tab = forget_models(inst, kind).table() & program_table(context, red)
        right = HTModelSet.from_table(right_tab, red)
        if left.pairs != right.pairs:
            return _violation(
                prop, kind, inst, left.answer_sets(), right.answer_sets(),
                "forgetting after adding the context differs from adding it "
                "to the result", context=context)
        return None
    f_join_tab = forget_models(inst, kind).table() & program_table(context, red)
    asl = _named_as(HTModelSet.from_table(f_join_tab, red).answer_sets())
    asr = projected_answer_sets(joined, amb, inst.forget)
    bad = {
        "SP": asl != asr,
        "sSP": not set(asl) <= set(asr),
        "wSP": not set(asr) <= set(asl),
    }[prop]
    if bad:
        return _violation(prop, kind, inst, asl, asr,
                          "answer sets under the context diverge",
                          context=context)
    return None


def check_pair(prop: str, kind: str, inst: ForgettingInstance,
               partner: Program) -> Optional[Violation]:
    """Evaluate wE or SE for one partner program over the same instance."""
    other = ForgettingInstance(partner, inst.forget, inst.ambient)
    if prop == "SE":
        a = forget_models(inst, kind)
        b = forget_models(other, kind)
        if a.pairs != b.pairs:
            return _violation(prop, kind, inst, a.answer_sets(),
                              b.answer_sets(),
                              "strongly equivalent programs got inequivalent "
                              "results", partner=partner)
        return None
    asl = result_answer_sets(inst, kind)
    asr = result_answer_sets(other, kind)
    if asl != asr:
        return _violation(prop, kind, inst, asl, asr,
                          "answer-set-equal programs got different result "
                          "answer sets", partner=partner)
    return None


def check_single(prop: str, kind: str, inst: ForgettingInstance) -> Optional[Violation]:
    """Evaluate an unquantified postulate on one instance."""
    if prop in ("sC", "wC", "CP"):
        asl = result_answer_sets(inst, kind)
        asr = projected_answer_sets(inst.program, inst.ambient, inst.forget)
        bad = {
            "sC": not set(asl) <= set(asr),
            "wC": not set(asr) <= set(asl),
            "CP": asl != asr,
        }[prop]
        if bad:
            return _violation(prop, kind, inst, asl, asr,
                              "result answer sets vs projected originals")
        return None
    if prop == "W":
        amb = inst.ambient
        n, vmask = len(amb), inst.vmask()
        clut = kernels.compress_lut(n, vmask)
        tab_p = np.ascontiguousarray(program_table(inst.program, amb)[:, 0])
        tab_f = np.ascontiguousarray(forget_models(inst, kind).table()[:, 0])
        lifted = kernels.lift_table_1w(tab_f, n, vmask, clut)
        missing = tab_p & ~lifted
        ys = np.flatnonzero(missing)
        if ys.size:
            y = int(ys[0])
            x = int(kernels.set_bits(missing[y : y + 1])[0])
            pair = (frozenset(amb.names(x)), frozenset(amb.names(y)))
            return _violation(prop, kind, inst, [pair[0]], [pair[1]],
                              "a model of the program is no model of the "
                              "result (here part left, there part right)")
        return None
    raise ValueError(f"not a single-instance property: {prop}")


def _pp_violation(kind: str, inst: ForgettingInstance) -> Optional[Violation]:
    red = inst.reduced_signature()
    tab_p, tab_f, rtab_full, rtab_red, _ = _scan_tables(inst, kind)
    idx = kernels.pp_scan(tab_p, rtab_full, tab_f, rtab_red)
    if idx < 0:
        return None
    rule = canonical_rule_at(red, idx)
    return _violation("PP", kind, inst, [], [],
                      "entailed kept-atom rule lost: " + rule.render(red),
                      context=Program.of([rule], red))


def _scan_violation(prop: str, kind: str, inst: ForgettingInstance,
                    bound: int) -> Optional[Violation]:
    red = inst.reduced_signature()
    tab_p, tab_f, rtab_full, rtab_red, clut = _scan_tables(inst, kind)
    n = len(inst.ambient)
    if prop == "SI":
        cid = kernels.scan_forget_equiv(
            tab_p, rtab_full, tab_f, rtab_red, n, inst.vmask(),
            KINDS[kind], clut, bound)
    else:
        ident = np.arange(1 << len(red), dtype=np.uint64)
        args = {
            "SP": (tab_f, rtab_red, ident, tab_p, rtab_full, clut, 1),
            "sSP": (tab_f, rtab_red, ident, tab_p, rtab_full, clut, 0),
            "wSP": (tab_p, rtab_full, clut, tab_f, rtab_red, ident, 0),
        }[prop]
        cid = kernels.scan_as_inclusion(*args, bound)
    if cid < 0:
        return None
    context = _decode_context(cid, red)
    violation = check_with_context(prop, kind, inst, context)
    if violation is None:
        raise RuntimeError(
            f"scan reported context {cid} for {prop}/{kind} but replay passes")
    return violation


def _entailed_partners(inst: ForgettingInstance, rng: random.Random,
                       count: int = 2) -> list:
    """Strong-equivalence-preserving mutations: add rules the program
    already entails (adding an entailed rule never changes the models)."""
    amb = inst.ambient
    if len(amb) > 4:
        return []
    tab = np.ascontiguousarray(program_table(inst.program, amb)[:, 0])
    masks = canonical_rule_masks(amb, amb)
    rtab = kernels.rule_tables_1w(masks, len(amb))
    entailed = np.flatnonzero(((tab[None, :] & ~rtab) == 0).all(axis=1))
    if not entailed.size:
        return []
    partners = []
    for _ in range(count):
        k = rng.randint(1, min(2, entailed.size))
        picks = rng.sample(list(map(int, entailed)), k)
        partners.append(inst.program.union(
            Program.of([canonical_rule_at(amb, i) for i in picks], amb)))
    return partners


def check_property(name: str, kind: str, corpus: Sequence[ForgettingInstance],
                   context_bound: int = 2,
                   seed: int = 0) -> PropertyReport:
    """Check one postulate for one operator kind over an instance corpus."""
    if name not in PROPERTIES:
        raise ValueError(f"unknown property {name!r}")
    if kind not in OPERATOR_KINDS:
        raise ValueError(f"unknown operator kind {kind!r}")
    report = PropertyReport(name, kind, context_bound)
    rng = random.Random(seed)

    if name in ("sC", "wC", "CP", "W"):
        for inst in corpus:
            report.checked += 1
            v = check_single(name, kind, inst)
            if v:
                report.violations.append(v)
        return report

    if name == "PP":
        for inst in corpus:
            if len(inst.reduced_signature()) > PP_KEPT_CAP:
                report.skipped += 1
                continue
            report.checked += 1
            v = _pp_violation(kind, inst)
            if v:
                report.violations.append(v)
        return report

    if name in SCAN_PROPERTIES:
        for inst in corpus:
            if (len(inst.ambient) > SCAN_SIGNATURE_CAP
                    or len(inst.reduced_signature()) > SCAN_KEPT_CAP
                    or not _spans_ambient(inst)):
                report.skipped += 1
                continue
            report.checked += 1
            v = _scan_violation(name, kind, inst, context_bound)
            if v:
                report.violations.append(v)
        return report

    # pair properties
    buckets = {}
    for inst in corpus:
        for partner in _entailed_partners(inst, rng):
            report.checked += 1
            v = check_pair(name, kind, inst, partner)
            if v:
                report.violations.append(v)
        if name == "wE":
            key = (inst.ambient.atoms, tuple(sorted(inst.forget)),
                   _named_as(answer_sets(inst.program, inst.ambient)))
            buckets.setdefault(key, []).append(inst)
    if name == "wE":
        for group in buckets.values():
            for a, b in itertools.combinations(group, 2):
                report.checked += 1
                v = check_pair(name, kind, a, b.program)
                if v:
                    report.violations.append(v)
    return report


def satisfaction_matrix(corpus: Sequence[ForgettingInstance],
                        context_bound: int = 2,
                        kinds: Sequence[str] = OPERATOR_KINDS,
                        properties: Sequence[str] = PROPERTIES,
                        seed: int = 0) -> dict:
    """(kind, property) -> PropertyReport over the corpus."""
    return {(k, p): check_property(p, k, corpus, context_bound, seed)
            for k in kinds for p in properties}


def replay(violation: Violation) -> bool:
    """True iff the recorded violation still violates when re-evaluated."""
    inst = violation.instance()
    prop, kind = violation.property, violation.kind
    if prop in PAIR_PROPERTIES:
        partner = parse_program(violation.partner)
        return check_pair(prop, kind, inst, partner) is not None
    if prop in SCAN_PROPERTIES:
        red = inst.reduced_signature()
        context = Program.of(parse_program(violation.context).rules, red)
        return check_with_context(prop, kind, inst, context) is not None
    if prop == "PP":
        red = inst.reduced_signature()
        rule = next(iter(parse_program(violation.context).rules))
        tab_p, tab_f, *_ = _scan_tables(inst, kind)
        rf = kernels.rule_tables_1w(
            kernels.rule_mask_array([rule], inst.ambient), len(inst.ambient))
        rr = kernels.rule_tables_1w(
            kernels.rule_mask_array([rule], red), len(red))
        return kernels.pp_scan(tab_p, rf, tab_f, rr) == 0
    return check_single(prop, kind, inst) is not None


WITNESS_PROPERTIES = {
    kind: tuple(p for p in PROPERTIES if p not in sat)
    for kind, sat in _EXPECTED.items()
}


def load_witnesses() -> dict:
    """Shipped violation witnesses, one per asserted non-satisfaction:
    (kind, property) -> Violation."""
    from importlib import resources

    out = {}
    root = resources.files("htforget").joinpath("data/witnesses")
    for kind, props in WITNESS_PROPERTIES.items():
        for prop in props:
            text = root.joinpath(f"{kind}_{prop}.json").read_text()
            out[(kind, prop)] = Violation.from_json_dict(json.loads(text))
    return out


def expressible_in_class(models: HTModelSet, cls: ProgramClass) -> bool:
    """Is some program of the class strongly equivalent to the model set?

    The model sets realizable by a class are exactly the intersections of
    single-rule model sets from it, so the tightest class envelope of the
    target either equals the target or nothing in the class does.
    """
    sig = models.signature
    check_cap(sig)
    n = len(sig)
    target = np.ascontiguousarray(models.table()[:, 0])
    masks = canonical_rule_masks(sig, sig)
    rtab = kernels.rule_tables_1w(masks, n)
    keep = np.fromiter(
        (r.rule_class.rank <= cls.rank for r in enumerate_canonical_rules(sig)),
        dtype=bool, count=rtab.shape[0])
    above = ((target[None, :] & ~rtab) == 0).all(axis=1) & keep
    if not above.any():
        envelope = np.full(1 << n, kernels.FULL, dtype=np.uint64)
    else:
        envelope = np.bitwise_and.reduce(rtab[above], axis=0)
    return bool(np.array_equal(envelope, target))


def refinement_violation(inst: ForgettingInstance,
                         bound: int = 2) -> Optional[Program]:
    """Context R with AS(union-result u R) not within AS(mixed-result u R),
    if any; the union operator is supposed to refine the mixed one."""
    red = inst.reduced_signature()
    if len(red) > SCAN_KEPT_CAP or len(inst.ambient) > SCAN_SIGNATURE_CAP:
        raise ValueError("instance too wide for the refinement scan")
    tab_r = np.ascontiguousarray(forget_models(inst, "r").table()[:, 0])
    tab_m = np.ascontiguousarray(forget_models(inst, "m").table()[:, 0])
    masks_red = canonical_rule_masks(red, red)
    rtab_red = kernels.rule_tables_1w(masks_red, len(red))
    ident = np.arange(1 << len(red), dtype=np.uint64)
    cid = kernels.scan_as_inclusion(
        tab_r, rtab_red, ident, tab_m, rtab_red, ident, 0, bound)
    if cid < 0:
        return None
    return _decode_context(cid, red)


def relativized_equivalence_oracle(p: Program, q: Program,
                                   forget: Iterable[str],
                                   signature: Signature,
                                   bound: int = 2):
    """Bounded semantic check of V-equivalence: equal answer sets under
    every enumerated context over the kept atoms.  Returns (verdict,
    separating context or None); a False verdict is definitive, True only
    says no separator exists up to the bound."""
    fset = frozenset(forget)
    red = signature.restrict(a for a in signature if a not in fset)
    check_cap(signature)
    if len(signature) > SCAN_SIGNATURE_CAP:
        raise ValueError("signature too wide for the context scan")
    n = len(signature)
    tab_p = np.ascontiguousarray(program_table(p, signature)[:, 0])
    tab_q = np.ascontiguousarray(program_table(q, signature)[:, 0])
    masks = canonical_rule_masks(red, signature)
    rtab = kernels.rule_tables_1w(masks, n)
    ident = np.arange(1 << n, dtype=np.uint64)
    cid = kernels.scan_as_inclusion(
        tab_p, rtab, ident, tab_q, rtab, ident, 1, bound)
    if cid < 0:
        return True, None
    idxs = context_from_id(cid, 16 ** len(red))
    return False, Program.of([canonical_rule_at(red, i) for i in idxs], red)
