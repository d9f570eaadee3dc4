"""Parser, renderer, rule/program classes, signatures."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from htforget.properties import GeneratorConfig, random_program
from htforget.syntax import (ParseError, Program, ProgramClass, Rule,
                             Signature, SignatureError, classify,
                             parse_program, parse_rule, render_program)


def test_parse_basic_rule():
    r = parse_rule("a | b :- c, not d, not not e.")
    assert r.head == {"a", "b"}
    assert r.pos == {"c"}
    assert r.neg == {"d"}
    assert r.nneg == {"e"}


def test_parse_fact_and_constraint():
    assert parse_rule("a.") == Rule.make(["a"])
    assert parse_rule(":- a, not b.") == Rule.make([], ["a"], ["b"])
    assert parse_rule("bot.") == Rule.make()


def test_parse_program_multiline_and_comments():
    p = parse_program("% a comment\na :- b.  % trailing\n\nb.\n")
    assert p.rules == {Rule.make(["a"], ["b"]), Rule.make(["b"])}
    assert p.signature is None


def test_parse_atoms_directive():
    p = parse_program("#atoms a, b, c.\na :- not b.")
    assert p.signature == Signature.of(["a", "b", "c"])
    assert p.effective_signature().atoms == ("a", "b", "c")


def test_directive_must_cover_atoms():
    with pytest.raises(ParseError):
        parse_program("#atoms a.\nb.")


@pytest.mark.parametrize("bad", [
    "a",                 # missing period
    "A.",                # uppercase start
    "a :- not not not b.",
    "a :- .",
    ":-",
    "a | .",
    "a ? b.",
    "not.",              # keyword as atom
    "#atoms a, a.",      # duplicate in signature
])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_program(bad)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse_program("a.\nb ? c.")
    assert "2:" in str(exc.value) or "line 2" in str(exc.value) or exc.value.args


def test_rule_equality_ignores_order():
    assert parse_rule("a :- b, c.") == parse_rule("a :- c, b.")
    assert parse_rule("a | b.") == parse_rule("b | a.")


def test_rule_classes():
    assert parse_rule("a.").rule_class == ProgramClass.FACTS
    assert parse_rule("a :- b.").rule_class == ProgramClass.HORN
    assert parse_rule(":- b.").rule_class == ProgramClass.HORN
    assert parse_rule("a :- not b.").rule_class == ProgramClass.NORMAL
    assert parse_rule("a | b.").rule_class == ProgramClass.DISJUNCTIVE
    assert parse_rule("a :- not not b.").rule_class == ProgramClass.EXTENDED


def test_class_order_is_nested():
    ranks = [ProgramClass.FACTS, ProgramClass.HORN, ProgramClass.NORMAL,
             ProgramClass.DISJUNCTIVE, ProgramClass.EXTENDED]
    assert [c.rank for c in ranks] == [0, 1, 2, 3, 4]
    assert ProgramClass.FACTS <= ProgramClass.EXTENDED


def test_program_class_is_max_over_rules():
    p = parse_program("a. b :- not c. d | e.")
    assert classify(p) == ProgramClass.DISJUNCTIVE
    assert classify(Program.of([])) == ProgramClass.FACTS


def test_signature_mask_names_roundtrip():
    sig = Signature.of(["a", "b", "c"])
    assert sig.mask(["a", "c"]) == 0b101
    assert sig.names(0b101) == ("a", "c")
    assert sig.names(0) == ()
    with pytest.raises(SignatureError):
        sig.mask(["z"])
    with pytest.raises(SignatureError):
        sig.names(1 << 3)


def test_signature_union_keeps_left_order():
    sig = Signature.of(["b", "a"]).union(Signature.of(["c", "a"]))
    assert sig.atoms == ("b", "a", "c")


def test_signature_rejects_duplicates_and_bad_names():
    with pytest.raises(SignatureError):
        Signature.of(["a", "a"])
    with pytest.raises(SignatureError):
        Signature.of(["Not"])


def test_render_is_deterministic_and_parseable(ex1, ex2, ex5):
    for p in (ex1, ex2, ex5):
        text = render_program(p)
        assert text == render_program(p)
        assert parse_program(text).rules == p.rules


def test_render_declared_signature_roundtrip():
    p = parse_program("#atoms a, b, p.\na :- p.")
    text = render_program(p)
    assert text.startswith("#atoms a, b, p.")
    again = parse_program(text)
    assert again.signature == p.signature
    assert again.rules == p.rules


def test_render_special_rules():
    assert parse_rule("bot.").render() == "bot."
    assert parse_rule(":- a.").render() == ":- a."
    assert parse_rule("b | a :- not c.").render() == "a | b :- not c."


def test_program_union_merges_signatures():
    p = parse_program("#atoms a, b.\na.")
    q = parse_program("c.")
    u = p.union(q)
    assert u.signature is not None
    assert set(u.signature.atoms) == {"a", "b", "c"}
    plain = parse_program("a.").union(parse_program("b."))
    assert plain.signature is None


def test_program_rejects_atoms_outside_declared_signature():
    with pytest.raises(SignatureError):
        Program.of([Rule.make(["x"])], Signature.of(["a"]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_program_roundtrip(seed):
    import random

    cfg = GeneratorConfig(signature_size=4, pad=False)
    p = random_program(cfg, random.Random(seed))
    text = render_program(p)
    again = parse_program(text)
    assert again.rules == p.rules
    assert classify(again) == classify(p)
