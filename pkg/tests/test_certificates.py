import dataclasses
import json

import pytest

from crosscap.certificates import (
    FREE,
    GENERATION_AXIOM,
    NORMAL_GENERATION_AXIOM,
    P,
    Certificate,
    DerivationStep,
    Rulebook,
    a3_conjugate_expansion,
    b_substitution,
    build_lemma_a1,
    build_normal_generation,
    build_theorem_main2,
    check_derivation,
    conjugacy_witness,
    lemma_alphabet,
    load_any,
    require_same_class,
    sandwich,
    verify_any,
    verify_certificate,
)
from crosscap.errors import NotConjugateError, UnsupportedBoundaryError, UnsupportedGenusError, UnsupportedLetterError
from crosscap.homology import evaluate, transvection
from crosscap.surface import TranspositionSymbol, builtin_fixtures, canonical_transposition, gamma
from crosscap.words import MACROS, Word, free_reduce


@pytest.fixture(scope="module")
def rules():
    return Rulebook(7)


@pytest.fixture(scope="module")
def lemma(rules):
    return build_lemma_a1(7, rules)


def tamper(cert, i, **changes):
    steps = list(cert.steps)
    steps[i] = dataclasses.replace(steps[i], **changes)
    return dataclasses.replace(cert, steps=tuple(steps))


def as_certificate(d, target, rules, alphabet=("u1", "u2", "u3", "u4", "v", "a3", "a4", "b")):
    back = d.reversed()
    return Certificate("test", Word.parse(target), back.start, back.start, alphabet, tuple(back.steps), (), rules.genus)


def test_b_substitution_is_accepted(rules):
    d = b_substitution(rules)
    assert d.word == P * Word.parse("a3") * P.inverse()
    assert check_derivation(as_certificate(d, "b", rules)).accepted


def test_empty_derivation_accepted():
    c = Certificate("test", Word.parse("u3"), Word.parse("u3"), Word.parse("u3"), ("u3",), (), (), 7)
    assert check_derivation(c).accepted
    assert verify_certificate(c)["verdict"] == "accepted"


def test_endpoint_mismatch_rejected():
    c = Certificate("test", Word.parse("u3"), Word.parse("u2"), Word.parse("u2"), ("u2",), (), (), 7)
    v = check_derivation(c)
    assert not v.accepted and v.failed_step == 0


def test_forged_commutation_rejected(rules):
    step = DerivationStep(0, Word.parse("a3 u2"), Word.parse("u2 a3"), "Commute(a3,u2)", "lhs->rhs")
    c = Certificate("test", Word.parse("u2 a3"), Word.parse("a3 u2"), Word.parse("a3 u2"), ("a3", "u2"), (step,), (), 7)
    v = check_derivation(c, rules)
    assert not v.accepted and v.failed_step == 0 and "no such relation" in v.reason


def test_free_steps_must_be_trivial(rules):
    step = DerivationStep(0, Word(), Word.parse("u1 u2^-1"), FREE, "insert")
    c = Certificate("test", Word.parse("u1 u2^-1 u3"), Word.parse("u3"), Word.parse("u3"), ("u3",), (step,), (), 7)
    assert not check_derivation(c, rules).accepted


@pytest.mark.parametrize(
    "letter,expected",
    [
        ("u2", "s2"),
        ("u3^-1", "s3^-1"),
        ("u1", "u1"),
        ("u6^-1", "u6^-1"),
        ("u4", "s3^-1 s2^-1 u2 u3 u4 u3^-1 u2^-1 s2 s3"),
        ("v^-1", "s3^-1 s2^-1 u2 u3 v^-1 u3^-1 u2^-1 s2 s3"),
    ],
)
def test_a3_conjugate_expansion(rules, letter, expected):
    word, d = a3_conjugate_expansion(letter, rules)
    assert str(word) == expected
    assert "a3" not in word.names()
    l = Word.parse(letter)
    assert d.start == Word.parse("a3") * l * Word.parse("a3^-1")
    assert d.word == MACROS.expand(word)
    assert evaluate(word, 7) == evaluate(d.start, 7)


@pytest.mark.parametrize("t", ["u4", "v"])
def test_a2_route_matches_displayed_formula(rules, t):
    # a3 t a3^-1 = a3 (u2u3)^-1 a3^-1 (u2u3) t (u2u3)^-1 a3 (u2u3) a3^-1, freely equal after expansion
    word, _ = a3_conjugate_expansion(t, rules)
    k = Word.parse("u2 u3")
    a3 = Word.parse("a3")
    displayed = a3 * k.inverse() * a3.inverse() * k * Word.parse(t) * k.inverse() * a3 * k * a3.inverse()
    assert free_reduce(MACROS.expand(word)) == free_reduce(displayed)


@pytest.mark.parametrize("t", ["u1", "u2", "u3^-1", "u5", "u6"])
def test_simple_expansions_are_freely_exact(rules, t):
    word, d = a3_conjugate_expansion(t, rules)
    if t.startswith(("u2", "u3")):
        assert free_reduce(MACROS.expand(word)) == free_reduce(d.start)
    else:
        assert word == Word.parse(t)


def test_unsupported_letter(rules):
    with pytest.raises(UnsupportedLetterError):
        a3_conjugate_expansion("b", rules)


def test_sandwich_structure(rules):
    inner = Word.parse("u1 u4^-1 u2")
    word, d = sandwich(inner, rules)
    assert str(word) == "u1 s3^-1 s2^-1 u2 u3 u4^-1 u3^-1 u2^-1 s2 s3 s2"
    assert d.word == MACROS.expand(word)


def test_lemma_word(lemma):
    assert lemma.target == Word.parse("a1")
    assert lemma.expression.names() <= set(lemma_alphabet())
    assert len(lemma.expression) == 272
    assert evaluate(lemma.expression, 7) == transvection(gamma(1, 2), 7)


def test_lemma_assumptions(lemma):
    tags = {a.tag for a in lemma.assumptions}
    assert "lantern-configuration" in tags
    for t in ("map:x(beta)=gamma", "map:x(alpha3)=alpha5", "map:f(delta)=epsilon", "map:q(delta)=beta"):
        assert t in tags
    assert {"fixture:alpha3|mu2", "fixture:alpha3|mu6", "fixture:alpha3|mu7", "fixture:alpha2|mu5", "fixture:beta|alpha2", "fixture:mu4|alpha2"} <= tags
    report = verify_certificate(lemma)
    assert {a["tag"] for a in report["assumptions"]} == tags
    assert not any(t.startswith("axiom:") for t in tags)


def test_lemma_is_genus_stable(lemma):
    j8 = build_lemma_a1(8).to_json()
    j7 = lemma.to_json()
    assert j7["meta"].pop("genus") == 7 and j8["meta"].pop("genus") == 8
    assert j7 == j8
    for g in range(7, 13):
        assert verify_certificate(lemma, genus=g)["verdict"] == "accepted"


def test_every_used_fixture_is_needed(lemma):
    fixtures = builtin_fixtures()
    for a in lemma.assumptions:
        if a.tag.startswith("fixture:"):
            report = verify_certificate(lemma, Rulebook(7, fixtures.without(a.tag)))
            assert report["verdict"] == "rejected", a.tag


def test_wrong_alphabet_rejected(lemma):
    bad = dataclasses.replace(lemma, alphabet=tuple(n for n in lemma.alphabet if n != "s3"))
    report = verify_certificate(bad)
    assert report["verdict"] == "rejected"
    assert check_derivation(bad).accepted


def test_undeclared_assumption_rejected(lemma):
    bad = dataclasses.replace(lemma, assumptions=lemma.assumptions[1:])
    assert verify_certificate(bad)["verdict"] == "rejected"


def test_tampered_rule_and_window(lemma, rules):
    i = next(k for k, s in enumerate(lemma.steps) if s.rule == "Commute(a3,u1)")
    v = check_derivation(tamper(lemma, i, rule="Commute(a3,u2)"), rules)
    assert not v.accepted and v.failed_step == i
    j = next(k for k, s in enumerate(lemma.steps) if s.rule == "Lantern")
    v = check_derivation(tamper(lemma, j, direction="lhs->rhs^-1"), rules)
    assert not v.accepted and v.failed_step == j


def test_deterministic_report(lemma):
    a, b = verify_certificate(lemma), verify_certificate(lemma)
    a.pop("elapsed_seconds"), b.pop("elapsed_seconds")
    assert json.dumps(a) == json.dumps(b)


def test_json_round_trip(lemma):
    data = json.loads(json.dumps(lemma.to_json()))
    assert list(data) == ["target", "alphabet", "expression", "expression_base", "steps", "assumptions", "meta"]
    assert list(data["steps"][0])[:5] == ["before", "after", "rule", "position", "direction"]
    again = load_any(data)
    assert again == lemma
    a, b = verify_any(again), verify_any(lemma)
    a.pop("elapsed_seconds"), b.pop("elapsed_seconds")
    assert a == b


def test_genus_below_seven():
    with pytest.raises(UnsupportedGenusError):
        build_lemma_a1(6)
    with pytest.raises(UnsupportedGenusError):
        build_normal_generation(6)


def test_theorem_bundle_g7(rules):
    bundle = build_theorem_main2(7, 0, rules)
    b = bundle.certificates["b"]
    assert b.expression[:2] == Word.parse("u4 v")
    assert b.expression[-2:] == Word.parse("v^-1 u4^-1")
    a2 = bundle.certificates["a2"]
    a1 = bundle.certificates["a1"]
    assert a2.expression == Word.parse("u1 u2") * a1.expression * Word.parse("u2^-1 u1^-1")
    assert bundle.certificates["u5"].steps == ()
    assert [a.tag for a in bundle.assumptions] == [GENERATION_AXIOM.tag]
    assert verify_any(bundle, rules)["verdict"] == "accepted"


def test_theorem_a8_chain():
    bundle = build_theorem_main2(9, 1)
    a8 = bundle.certificates["a8"].expression
    chain = Word.parse("u7 u8 u6 u7 u5 u6 u4 u5 u3 u4 u2 u3 u1 u2")
    assert a8[: len(chain)] == chain
    assert bundle.boundary == 1
    assert load_any(json.loads(json.dumps(bundle.to_json()))).certificates.keys() == bundle.certificates.keys()


def test_theorem_boundary_two():
    with pytest.raises(UnsupportedBoundaryError):
        build_theorem_main2(7, 2)


@pytest.mark.parametrize(
    "target,conj",
    [("u2", "u1 u2"), ("v", "u4 v u3 u4 u2 u3 u1 u2"), ("s2", "a3 u1 u2"), ("s3", "a3 u2 u3 u1 u2")],
)
def test_witnesses(target, conj):
    w = conjugacy_witness(target, 7)
    assert w.conjugator == Word.parse(conj)
    c = w.conjugator
    assert evaluate(c * Word.parse("u1") * c.inverse(), 7) == evaluate(target, 7)


def test_witness_needs_matching_complements():
    # at genus 4 a (mu4, beta) transposition uses every crosscap while u1 leaves some over
    v4 = TranspositionSymbol(gamma(4), gamma(1, 2, 3, 4))
    with pytest.raises(NotConjugateError):
        require_same_class(v4, canonical_transposition("u1", 4), 4)
    require_same_class(canonical_transposition("v", 7), canonical_transposition("u1", 7), 7)


def test_normal_generation(rules):
    ng = build_normal_generation(7, rules)
    factors = ng.factorizations["a1"]
    lemma_len = len(build_lemma_a1(7, rules).expression)
    assert ng.factor_count == lemma_len
    pieces = [c * Word.parse("u1" if e == 1 else "u1^-1") * c.inverse() for c, e in factors]
    assert Word.of(*pieces) == ng.certificate.expression
    assert evaluate(ng.certificate.expression, 7) == transvection(gamma(1, 2), 7)
    assert NORMAL_GENERATION_AXIOM.tag in {a.tag for a in ng.certificate.assumptions}
    report = verify_any(ng, rules)
    assert report["verdict"] == "accepted" and report["factors"] == lemma_len
    again = load_any(json.loads(json.dumps(ng.to_json())))
    assert verify_any(again, rules)["verdict"] == "accepted"


def test_normal_generation_bad_factor_rejected(rules):
    ng = build_normal_generation(7, rules)
    factors = list(ng.factorizations["a1"])
    factors[0] = (factors[0][0], -factors[0][1])
    bad = dataclasses.replace(ng, factorizations={"a1": factors})
    assert verify_any(bad, rules)["verdict"] == "rejected"
