"""End-to-end acceptance checks over the shipped example programs and
seeded random corpora.  Each check prints one PASS/FAIL scorecard line.

The second half of check 5 (the conditional-d rule inside the minimized
m result) is pinned as a strict expected failure: the m target admits the
pair <{a},{a,b,d}>, and every rule of a program must admit all of the
program's models, so no realization of that target can contain a rule
behaving like d :- not not d.  See that test's comment for the argument.
"""

import random

import pytest

import htforget.properties as PR
from htforget.forgetting import (ForgettingInstance, closure_forget, forget,
                                 forget_models, minimize_program, omega,
                                 r_family, synthesize)
from htforget.relativized import (relativized_equivalent, v_ht_models,
                                  v_ht_models_direct)
from htforget.semantics import (HTModelSet, answer_sets, ht_consequence,
                                ht_models, strongly_equivalent)
from htforget.syntax import (Program, ProgramClass, Signature, parse_program,
                             parse_rule)

pytestmark = pytest.mark.acceptance


def scorecard(capsys, num, desc, clauses):
    bad = sorted(name for name, ok in clauses.items() if not ok)
    verdict = "PASS" if not bad else "FAIL"
    with capsys.disabled():
        print(f"[acceptance {num:>3}] {verdict}  {desc}")
    assert not bad, f"acceptance {num} failed clauses: {bad}"


def F(s):
    return frozenset(s.split()) if s else frozenset()


def inst(program, v):
    return ForgettingInstance.make(program, v)


def test_acceptance_01_chain_program_goldens(capsys, ex1):
    expected = {
        ("d",): ("a :- not b.\nb :- not c.\ne :- a.", ("sp", "r", "m")),
        ("b",): ("a :- not not c.\ne :- d.\nd :- a.", ("sp", "m")),
        ("c",): ("a :- not b.\nb.\ne :- d.\nd :- a.", ("sp", "r", "m")),
    }
    clauses = {}
    for v, (text, kinds) in expected.items():
        want = parse_program(text)
        for kind in kinds:
            got = forget(inst(ex1, list(v)), kind)
            clauses[f"{'+'.join(v)}:{kind}"] = strongly_equivalent(got, want)
    scorecard(capsys, 1, "single-atom eliminations from the four-rule "
              "chain program match their printed results", clauses)


def test_acceptance_02_two_answer_set_program(capsys, ex2):
    i2 = inst(ex2, ["p"])
    models = ht_models(ex2)
    fab = r_family(i2, ["a", "b"])
    sp = forget_models(i2, "sp")
    clauses = {
        "six ht models": set(models.named_pairs()) == {
            (("a", "p"), ("a", "p")), (("b",), ("b",)),
            (("b",), ("a", "b")), (("a", "b"), ("a", "b")),
            (("a", "p"), ("a", "b", "p")),
            (("a", "b", "p"), ("a", "b", "p"))},
        "answer sets": set(answer_sets(ex2)) == {F("a p"), F("b")},
        "family at empty world": len(r_family(i2, [])) == 0,
        "family at {a}": r_family(i2, ["a"]).member_sets() == [{F("a")}],
        "family at {b}": r_family(i2, ["b"]).member_sets() == [{F("b")}],
        "family at {a,b}": set(map(frozenset, fab.member_sets())) == {
            frozenset({F("b"), F("a b")}), frozenset({F("a"), F("a b")})},
        "sp models": set(sp.named_pairs()) == {
            (("a",), ("a",)), (("b",), ("b",)), (("a", "b"), ("a", "b"))},
        "sp answer sets": set(sp.answer_sets()) == {F("a"), F("b"), F("a b")},
    }
    scorecard(capsys, 2, "the two-answer-set program reproduces its models, "
              "families and intersection-style result", clauses)


def test_acceptance_03_union_style_and_closure(capsys, ex2):
    i2 = inst(ex2, ["p"])
    want = parse_program("a :- not b.\nb :- not a.\n:- not a, not b.\na | b.")
    viaR = forget(i2, "r")
    closed = closure_forget(i2)
    sig = Signature.of(["a", "b"])
    clauses = {
        "union result": strongly_equivalent(viaR, want, sig),
        "closure result": strongly_equivalent(closed, want, sig),
        "no joint answer set": F("a b") not in set(answer_sets(closed, sig)),
    }
    scorecard(capsys, 3, "union-style forgetting and the rule closure agree "
              "on the disjunctive result without the joint answer set", clauses)


def test_acceptance_04_unobstructed_instance(capsys, ex4):
    i4 = inst(ex4, ["p"])
    pin = parse_program("a :- not not a.")
    clauses = {
        "criterion off": not omega(i4).satisfied,
        "sp pinpoints the loop": strongly_equivalent(forget(i4, "sp"), pin),
        "m pinpoints the loop": strongly_equivalent(forget(i4, "m"), pin),
        "r collapses to empty": strongly_equivalent(
            forget(i4, "r"), Program.of([]), Signature.of(["a"])),
    }
    scorecard(capsys, 4, "the unobstructed two-rule instance yields the "
              "pinpoint rule (sp, m) and the empty program (r)", clauses)


def test_acceptance_05_attainable_parts(capsys, ex5):
    i5 = inst(ex5, ["c", "p"])
    sig = Signature.of(["a", "b", "d"])
    m_as = set(answer_sets(forget(i5, "m"), sig))
    sp_as = set(answer_sets(forget(i5, "sp"), sig))
    r_result = forget(i5, "r")
    clauses = {
        "m keeps projected answer sets":
            m_as == {F("a"), F("a d"), F("b"), F("b d")},
        "sp invents a joint answer set":
            any(F("a b") <= s for s in sp_as),
        "r forgets conditional d": not ht_consequence(
            r_result, parse_program("d :- not not d."), sig),
    }
    scorecard(capsys, 5, "the obstructed five-rule instance: m preserves the "
              "projected answer sets, sp overshoots, r undershoots", clauses)


@pytest.mark.xfail(strict=True, reason="the m target admits <{a},{a,b,d}>, "
                   "which every program containing a d :- not not d "
                   "equivalent must exclude; kept as the honest check")
def test_acceptance_05_conditional_d_rule_in_m(capsys, ex5):
    i5 = inst(ex5, ["c", "p"])
    sig = Signature.of(["a", "b", "d"])
    small = minimize_program(forget(i5, "m"), sig)
    pin = parse_rule("d :- not not d.")
    found = any(
        strongly_equivalent(Program.of([r]), Program.of([pin]), sig)
        for r in small.rules)
    clauses = {"minimized m result contains the conditional-d rule": found}
    scorecard(capsys, "5x", "the minimized m result carries a rule "
              "behaving like d :- not not d", clauses)


def test_acceptance_06_obstruction_detector(capsys, ex2, ex4):
    v2 = omega(inst(ex2, ["p"]))
    v4 = omega(inst(ex4, ["p"]))
    corpus = PR.build_corpus(6, 500, forget_size=0)
    empty_always_clear = all(not omega(i).satisfied for i in corpus)
    clauses = {
        "obstructed instance flagged": v2.satisfied and v2.witness == F("a b"),
        "clear instance passes": not v4.satisfied,
        "empty target never obstructs": empty_always_clear,
    }
    scorecard(capsys, 6, "the obstruction detector: flagged with witness "
              "{a,b}, clear on the loop instance, always clear for an empty "
              "target (500 random programs)", clauses)


def test_acceptance_07_differential_oracles(capsys):
    rng = random.Random(7)
    agree_vht = True
    for k in range(500):
        cfg = PR.GeneratorConfig(signature_size=2 + k % 3, pad=False)
        p = PR.random_program(cfg, rng)
        sig = cfg.signature()
        v = [a for a in sig.atoms if rng.random() < 0.4]
        if v_ht_models(p, v, sig).pairs != v_ht_models_direct(p, v, sig).pairs:
            agree_vht = False
            break

    rng = random.Random(72)
    sig3 = Signature.of(["a", "b", "c"])
    synth_ok = True
    for _ in range(200):
        theres = [y for y in range(8) if rng.random() < 0.5]
        pairs = {(y, y) for y in theres}
        for y in theres:
            for x in range(y):
                if (x & ~y) == 0 and rng.random() < 0.4:
                    pairs.add((x, y))
        target = HTModelSet(sig3, frozenset(pairs))
        if ht_models(synthesize(target), sig3).pairs != target.pairs:
            synth_ok = False
            break

    rng = random.Random(73)
    cfg3 = PR.GeneratorConfig(signature_size=3, pad=False)
    closure_ok = True
    for _ in range(100):
        i = PR.random_instance(cfg3, rng)
        if not strongly_equivalent(closure_forget(i), forget(i, "r"),
                                   i.reduced_signature()):
            closure_ok = False
            break

    rng = random.Random(74)
    cfgp = PR.GeneratorConfig(signature_size=3, pad=True)
    sig = cfgp.signature()
    rel_ok = True
    trues = 0
    for k in range(100):
        p = PR.random_program(cfgp, rng)
        if k % 5 == 4:
            q = p.union(Program.of([parse_rule("a :- a.")]))
        else:
            q = PR.random_program(cfgp, rng)
        v = [a for a in sig.atoms if rng.random() < 0.4]
        verdict = relativized_equivalent(p, q, v, sig)
        oracle, ctx = PR.relativized_equivalence_oracle(p, q, v, sig, bound=2)
        trues += verdict
        if verdict != oracle or (not oracle and ctx is None):
            rel_ok = False
            break

    clauses = {
        "relativized enumerations agree (500)": agree_vht,
        "synthesis realizes its target (200)": synth_ok,
        "closure equals union operator (100)": closure_ok,
        "equivalence matches context scan (100)": rel_ok,
        "scan saw equivalent pairs": trues >= 5,
    }
    scorecard(capsys, 7, "independent implementations agree: relativized "
              "models, synthesis round trips, closure vs union, bounded "
              "context scans", clauses)


def test_acceptance_08_satisfaction_matrix(capsys):
    corpus = PR.build_corpus(1, 200)
    matrix = PR.expected_matrix()
    clauses = {}
    for kind in PR.OPERATOR_KINDS:
        for prop in sorted(matrix[kind]):
            report = PR.check_property(prop, kind, corpus, context_bound=2)
            clauses[f"{kind} keeps {prop}"] = (
                not report.violations and report.checked > 0)
    witnesses = PR.load_witnesses()
    for kind, props in PR.WITNESS_PROPERTIES.items():
        for prop in props:
            v = witnesses.get((kind, prop))
            clauses[f"{kind} breaks {prop}"] = v is not None and PR.replay(v)
    scorecard(capsys, 8, "the postulate matrix: zero violations on the "
              "200-instance corpus for every kept property, shipped "
              "witnesses replay for every broken one", clauses)


def test_acceptance_09_horn_collapse(capsys):
    cfg = PR.GeneratorConfig(rule_class=ProgramClass.HORN)
    corpus = PR.build_corpus(9, 200, cfg=cfg)
    equivalent = True
    thin_families = True
    for i in corpus:
        red = i.reduced_signature()
        results = [forget_models(i, kind).pairs for kind in ("sp", "r", "m")]
        if not (results[0] == results[1] == results[2]):
            equivalent = False
            break
        for y in range(1 << len(red)):
            if len(r_family(i, red.names(y))) > 1:
                thin_families = False
                break
    clauses = {
        "operators coincide": equivalent,
        "families have at most one member": thin_families,
    }
    scorecard(capsys, 9, "on 200 Horn instances all three operators "
              "coincide and every family is at most a singleton", clauses)


def test_acceptance_10_unobstructed_collapse(capsys):
    cfg = PR.GeneratorConfig()
    rng = random.Random(10)
    checked = 0
    ok = True
    while checked < 200:
        i = PR.random_instance(cfg, rng)
        if omega(i).satisfied:
            continue
        checked += 1
        if forget_models(i, "m").pairs != forget_models(i, "sp").pairs:
            ok = False
            break
    clauses = {"m equals sp when unobstructed": ok}
    scorecard(capsys, 10, "on 200 unobstructed instances the mixed operator "
              "collapses onto the intersection operator", clauses)


def test_acceptance_11_union_refines_mixed(capsys):
    cfg = PR.GeneratorConfig()
    corpus = PR.build_corpus(11, 100, cfg=cfg, forget_size=2)
    ok = True
    for i in corpus:
        if PR.refinement_violation(i, bound=2) is not None:
            ok = False
            break
    clauses = {"answer sets only shrink from r to m": ok}
    scorecard(capsys, 11, "under every two-rule context the union result's "
              "answer sets stay within the mixed result's (100 instances)",
              clauses)
