"""Families, the obstruction criterion, operator classes, synthesis."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from htforget.forgetting import (DEFAULT_MAX_RULE_ATOMS, ForgettingInstance,
                                 SynthesisError, canonical_rule_at,
                                 closure_forget, enumerate_canonical_rules,
                                 forget, forget_models, least_element,
                                 minimize_program, omega, r_family,
                                 synthesize)
from htforget.properties import GeneratorConfig, random_instance
from htforget.semantics import (CapExceeded, HTModelSet, answer_sets,
                                ht_consequence, ht_models,
                                strongly_equivalent)
from htforget.syntax import Program, Signature, parse_program, parse_rule


def inst(program, forget_atoms):
    return ForgettingInstance.make(program, forget_atoms)


def F(s):
    return frozenset(s.split()) if s else frozenset()


# --- families and the criterion -------------------------------------------

def test_ex2_families(ex2):
    i2 = inst(ex2, ["p"])
    assert len(r_family(i2, [])) == 0
    fa = r_family(i2, ["a"])
    assert fa.member_sets() == [{F("a")}]
    fb = r_family(i2, ["b"])
    assert fb.member_sets() == [{F("b")}]
    fab = r_family(i2, ["a", "b"])
    assert set(map(frozenset, fab.member_sets())) == {
        frozenset({F("b"), F("a b")}), frozenset({F("a"), F("a b")})}


def test_ex2_family_keys_are_augmentations(ex2):
    fab = r_family(inst(ex2, ["p"]), ["a", "b"])
    assert set(fab.members) == {frozenset(), frozenset({"p"})}


def test_ex4_family_at_a(ex4):
    fam = r_family(inst(ex4, ["p"]), ["a"])
    assert fam.members[frozenset()] == {F(""), F("a")}
    assert fam.members[frozenset({"p"})] == {F("a")}


def test_family_rejects_forgotten_base(ex2):
    with pytest.raises(ValueError):
        r_family(inst(ex2, ["p"]), ["p"])


def test_least_element_cases():
    assert least_element([]) is None
    incomparable = [frozenset({F("a"), F("a b")}), frozenset({F("b"), F("a b")})]
    assert least_element(incomparable) is None
    assert least_element([frozenset({F("a")}), frozenset({F(""), F("a")})]) \
        == frozenset({F("a")})
    single = frozenset({F("a b")})
    assert least_element([single]) == single


def test_omega_verdicts(ex2, ex4, ex5):
    v2 = omega(inst(ex2, ["p"]))
    assert v2.satisfied and v2.witness == F("a b")
    v4 = omega(inst(ex4, ["p"]))
    assert not v4.satisfied and v4.witness is None
    v5 = omega(inst(ex5, ["c", "p"]))
    assert v5.satisfied and v5.witness == F("a b")


def test_omega_false_for_empty_forget(ex2):
    assert not omega(inst(ex2, [])).satisfied


# --- operator results on the worked examples -------------------------------

def test_ex2_sp_models_and_answer_sets(ex2):
    models = forget_models(inst(ex2, ["p"]), "sp")
    assert set(models.named_pairs()) == {
        (("a",), ("a",)), (("b",), ("b",)), (("a", "b"), ("a", "b"))}
    assert set(models.answer_sets()) == {F("a"), F("b"), F("a b")}


def test_ex2_r_and_m_coincide_with_disjunction(ex2, ex3):
    i2 = inst(ex2, ["p"])
    for kind in ("r", "m"):
        result = forget(i2, kind)
        assert strongly_equivalent(result, ex3)
        assert set(answer_sets(result)) == {F("a"), F("b")}


def test_ex2_sp_result_not_se_to_disjunction(ex2, ex3):
    result = forget(inst(ex2, ["p"]), "sp")
    assert not strongly_equivalent(result, ex3)
    assert F("a b") in set(answer_sets(result, Signature.of(["a", "b"])))


def test_ex3_closure_forgetting(ex2, ex3):
    i2 = inst(ex2, ["p"])
    closed = closure_forget(i2)
    want = parse_program("a :- not b.\nb :- not a.\n:- not a, not b.\na | b.")
    assert strongly_equivalent(closed, want)
    assert strongly_equivalent(closed, forget(i2, "r"))
    assert F("a b") not in set(answer_sets(closed, Signature.of(["a", "b"])))


def test_ex4_results(ex4):
    i4 = inst(ex4, ["p"])
    pin = parse_program("a :- not not a.")
    for kind in ("sp", "m"):
        assert strongly_equivalent(forget(i4, kind), pin)
    assert strongly_equivalent(forget(i4, "r"), Program.of([]))
    assert forget(i4, "r", minimize=True).rules == frozenset()


def test_ex4_minimized_sp_text(ex4):
    got = forget(inst(ex4, ["p"]), "sp", minimize=True)
    assert got.render() == "a :- not not a.\n"


EX1_EXPECTED = {
    ("d",): ("a :- not b.\nb :- not c.\ne :- a.", ("sp", "r", "m")),
    ("b",): ("a :- not not c.\ne :- d.\nd :- a.", ("sp", "m")),
    ("c",): ("a :- not b.\nb.\ne :- d.\nd :- a.", ("sp", "r", "m")),
}


def test_ex1_goldens(ex1):
    for v, (text, kinds) in EX1_EXPECTED.items():
        want = parse_program(text)
        for kind in kinds:
            got = forget(inst(ex1, list(v)), kind)
            assert strongly_equivalent(got, want), (v, kind)
        assert not omega(inst(ex1, list(v))).satisfied


def test_ex5_m_answer_sets_match_projection(ex5):
    i5 = inst(ex5, ["c", "p"])
    projected = {s - {"c", "p"} for s in answer_sets(ex5)}
    got = set(answer_sets(forget(i5, "m"), Signature.of(["a", "b", "d"])))
    assert got == projected == {F("a"), F("a d"), F("b"), F("b d")}


def test_ex5_sp_adds_joint_answer_set(ex5):
    got = set(answer_sets(forget(inst(ex5, ["c", "p"]), "sp"),
                          Signature.of(["a", "b", "d"])))
    assert F("a b") in got and F("a b d") in got


def test_ex5_r_drops_conditional_d(ex5):
    result = forget(inst(ex5, ["c", "p"]), "r")
    assert set(answer_sets(result, Signature.of(["a", "b", "d"]))) == \
        {F("a"), F("b")}
    assert not ht_consequence(result, parse_program("d :- not not d."))


def test_ex5_m_models_block_conditional_d(ex5):
    # the family at there-world {a,b,d} has no least member, so the union
    # rule applies and admits here-parts violating d :- not not d
    models = forget_models(inst(ex5, ["c", "p"]), "m")
    sig = models.signature
    assert (sig.mask(["a"]), sig.mask(["a", "b", "d"])) in models.pairs


# --- operator-level invariants ---------------------------------------------

def _instances(seed, size, n=4):
    rng = random.Random(seed)
    cfg = GeneratorConfig(signature_size=n, pad=False)
    return [random_instance(cfg, rng) for _ in range(size)]


def test_results_realize_their_model_sets():
    for i in _instances(47, 80):
        for kind in ("sp", "r", "m"):
            target = forget_models(i, kind)
            got = ht_models(forget(i, kind), target.signature)
            assert got.pairs == target.pairs, (i.program.render(), kind)


def test_model_sets_are_nested_sp_m_r():
    for i in _instances(53, 80):
        sp = forget_models(i, "sp").pairs
        m = forget_models(i, "m").pairs
        r = forget_models(i, "r").pairs
        assert sp <= m <= r


def test_forgetting_nothing_preserves_models():
    for i in _instances(59, 30):
        bare = ForgettingInstance.make(i.program, [])
        assert forget_models(bare, "sp").pairs == \
            ht_models(i.program, bare.ambient).pairs


def test_minimize_preserves_equivalence(ex1, ex2, ex5):
    for p in (ex1, ex2, ex5):
        small = minimize_program(p)
        assert strongly_equivalent(small, p)
        assert len(small) <= len(p)


def test_minimize_is_deterministic(ex5):
    a = minimize_program(ex5).render()
    assert a == minimize_program(ex5).render()


# --- synthesis ---------------------------------------------------------------

def test_synthesize_rejects_open_sets():
    sig = Signature.of(["a"])
    with pytest.raises(ValueError):
        synthesize(HTModelSet(sig, frozenset({(0, 1)})))


def test_synthesize_pinpoints_nonmonotone_rule():
    sig = Signature.of(["a"])
    target = HTModelSet(sig, frozenset({(0, 0), (1, 1)}))
    got = synthesize(target, minimize=True)
    assert strongly_equivalent(got, parse_program("a :- not not a."))


def test_synthesize_roundtrip_random():
    rng = random.Random(61)
    sig = Signature.of(["a", "b", "c"])
    for _ in range(60):
        theres = [y for y in range(8) if rng.random() < 0.5]
        pairs = {(y, y) for y in theres}
        for y in theres:
            for x in range(y + 1):
                if x != y and (x & ~y) == 0 and rng.random() < 0.4:
                    pairs.add((x, y))
        target = HTModelSet(sig, frozenset(pairs))
        got = synthesize(target)
        assert ht_models(got, sig).pairs == target.pairs


# --- canonical rules and the closure ----------------------------------------

def test_canonical_rules_cover_every_rule_shape():
    sig = Signature.of(["a", "b"])
    rules = list(enumerate_canonical_rules(sig))
    assert len(rules) == 16 ** 2
    assert len(set(rules)) == 16 ** 2
    assert all(canonical_rule_at(sig, i) == r for i, r in enumerate(rules))
    assert parse_rule("a | b :- not not a.") in rules


def test_closure_matches_union_operator_random():
    rng = random.Random(67)
    cfg = GeneratorConfig(signature_size=3, pad=False)
    for _ in range(40):
        i = random_instance(cfg, rng)
        red = i.reduced_signature()
        assert strongly_equivalent(closure_forget(i), forget(i, "r"), red)


def test_closure_cap():
    p = parse_program("a :- b, c, d, e.")
    with pytest.raises(CapExceeded):
        closure_forget(ForgettingInstance.make(p, ["e"]))
    closure_forget(ForgettingInstance.make(p, ["e"]), max_atoms=5)


def test_instance_validation(ex2):
    sig = ex2.effective_signature()
    with pytest.raises(ValueError):
        ForgettingInstance(ex2, frozenset({"p"}), Signature.of(["a", "b"]))
    with pytest.raises(ValueError):
        ForgettingInstance(ex2, frozenset({"z"}), sig)
    i = ForgettingInstance.make(ex2, ["p", "q"])
    assert set(i.ambient.atoms) == {"a", "b", "p", "q"}
    assert i.reduced_signature().atoms == ("a", "b")


def test_unknown_operator_kind(ex2):
    with pytest.raises(ValueError):
        forget_models(inst(ex2, ["p"]), "xyz")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_forget_models_are_total_closed(seed):
    rng = random.Random(seed)
    cfg = GeneratorConfig(signature_size=4, pad=False)
    i = random_instance(cfg, rng)
    for kind in ("sp", "r", "m"):
        assert forget_models(i, kind).is_total_closed()
