import warnings

import pytest

from crosscap.catalog import (
    Family,
    RelationInstance,
    abelianize,
    abelianize_catalog,
    apply_relation,
    catalog,
    transport_instance,
    utu_instances,
)
from crosscap.errors import NoOccurrenceError, RelationCheckError, UnsupportedGenusError, UntransportableError
from crosscap.homology import evaluate
from crosscap.mappings import CurveMappingTable
from crosscap.surface import builtin_fixtures
from crosscap.words import Word


def test_family_counts_at_genus_7():
    fam = catalog(7).families()
    assert fam[Family.BRAID_U.value] == 5
    assert fam[Family.CHAIN_UA.value] == 5
    assert fam[Family.LANTERN.value] == 1
    assert fam[Family.BRAID_UV.value] == 1 and fam[Family.CHAIN_UVB.value] == 1


def test_every_instance_holds_in_homology():
    for g in range(7, 13):
        for r in catalog(g):
            assert evaluate(r.lhs, g) == evaluate(r.rhs, g), r.name


def test_small_genus_warns_and_drops_lantern():
    with pytest.warns(UserWarning, match="lantern"):
        cat = catalog(6)
    assert cat.restricted
    assert "Lantern" not in cat


def test_lantern_needs_its_fixtures():
    fx = builtin_fixtures().without("fixture:alpha1|alpha5")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert "Lantern" not in catalog(7, fx)


def test_commutations_come_from_fixtures():
    cat = catalog(7)
    assert "Commute(a3,u1)" in cat
    assert "Commute(a3,u2)" not in cat
    fx = builtin_fixtures().without("fixture:alpha3|mu2")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert "Commute(a3,u1)" not in catalog(7, fx)


def test_false_relation_is_refused():
    with pytest.raises(RelationCheckError):
        RelationInstance(Family.COMMUTE, "bad", Word.parse("a3 u2"), Word.parse("u2 a3"), "", (), 7)


def test_apply_relation_round_trip():
    r = catalog(7).get("BraidU(2)")
    w = Word.parse("a1 u2 u3 u2 v")
    out = apply_relation(w, r, 1)
    assert str(out) == "a1 u3 u2 u3 v"
    assert apply_relation(out, r, 1, "rhs->lhs") == w
    with pytest.raises(NoOccurrenceError):
        apply_relation(w, r, 0)


def test_inverted_direction():
    r = catalog(7).get("ChainUA(1)")
    src, dst = r.sides("lhs->rhs^-1")
    assert src == Word.parse("a1^-1 u2^-1 u1^-1")
    assert dst == Word.parse("u2^-1 u1^-1 a2^-1")


def test_transport():
    m = CurveMappingTable.standard(7)
    t = transport_instance("x", "a3", m, 7)
    assert t.name == "Transport(x:a3->a5)"
    assert t.rhs == Word.parse("a5")
    with pytest.raises(UntransportableError):
        transport_instance("u5 u6", "a1", m, 7)


def test_utu_relations_hold():
    for r in utu_instances(7):
        assert evaluate(r.lhs, 7) == evaluate(r.rhs, 7)


def test_abelianization_g7():
    rep = abelianize_catalog(7)
    assert str(rep.group) == "Z"
    assert rep.generated_by_u1
    assert sorted(map(sorted, rep.classes())) == [
        ["a1", "a2", "a3", "a4", "a5", "a6", "b"],
        ["u1", "u2", "u3", "u4", "u5", "u6", "v"],
    ]
    assert all(rep.images[n] == (0,) for n in ("a1", "b"))


def test_lantern_is_what_kills_the_twist_class():
    rep = abelianize_catalog(7, include_lantern=False)
    assert str(rep.group) == "Z + Z"
    assert not rep.is_cyclic and not rep.generated_by_u1


def test_abelianization_needs_genus_7():
    with pytest.raises(UnsupportedGenusError):
        abelianize_catalog(6)


def test_empty_relations():
    rep = abelianize([], 7)
    assert rep.group.free_rank == len(rep.alphabet)
