from crosscap.mappings import CurveMappingTable, MappingOrigin, MappingStatus
from crosscap.surface import gamma
from crosscap.words import Word


def test_claims_split_seven_one():
    table = CurveMappingTable.standard(7)
    claims = table.claims()
    assert len(claims) == 8
    flagged = [e for e in claims if e.status is MappingStatus.FLAGGED]
    assert [e.f_label for e in flagged] == ["u5u6"]
    assert flagged[0].corrected == Word.parse("u6 u5")


def test_every_non_claim_entry_passes():
    for g in (7, 9, 12):
        for e in CurveMappingTable.standard(g):
            if e.origin is not MappingOrigin.CLAIM:
                assert e.status is MappingStatus.PASS, e.tag


def test_lookup_and_tags():
    table = CurveMappingTable.standard(7)
    e = table.lookup(Word.parse("u4 u5 u3 u4"), gamma(1, 2, 5, 6))
    assert e.status is MappingStatus.PASS and e.target == gamma(1, 2, 3, 4)
    assert table.by_tag("map:x(beta)=gamma").target == gamma(3, 4, 5, 6)
    assert len(table.without("map:x(beta)=gamma")) == len(table) - 1


def test_small_genus_has_no_claims():
    assert CurveMappingTable.standard(6).claims() == []
