import pytest

from crosscap.errors import (
    FixtureError,
    InvalidCurveError,
    UnsupportedGenusError,
    UnsupportedSpecError,
)
from crosscap.surface import (
    CurveSymbol,
    Disjointness,
    FixtureTable,
    TwistSymbol,
    builtin_fixtures,
    canonical_curves,
    canonical_transposition,
    canonicalize_twist_symbol,
    complement_is_nonorientable,
    curve_name,
    gamma,
    is_two_sided,
    mod2_pairing,
    parse_curve,
)


def test_sidedness_is_parity():
    assert is_two_sided([1, 2])
    assert not is_two_sided([1, 3, 5])
    assert gamma(1, 2, 3, 4).two_sided
    assert not gamma(4).two_sided


def test_named_curves():
    c = canonical_curves(7)
    assert c["beta"].indices == (1, 2, 3, 4)
    assert c["gamma"].indices == (3, 4, 5, 6)
    assert c["delta"].indices == (1, 2, 5, 6)
    assert c["epsilon"].indices == (1, 2, 3, 4, 5, 6)
    assert c["alpha3"].indices == (3, 4)
    assert "gamma" not in canonical_curves(6)
    assert "beta" not in canonical_curves(4)


def test_parse_curve_forms():
    assert parse_curve("{1,3,5}", 7).indices == (1, 3, 5)
    assert parse_curve("mu4", 7).indices == (4,)
    assert parse_curve("alpha_2", 7).indices == (2, 3)
    with pytest.raises(InvalidCurveError):
        parse_curve("{1,9}", 7)
    with pytest.raises(UnsupportedGenusError):
        parse_curve("delta", 6)
    with pytest.raises(InvalidCurveError):
        parse_curve("zeta", 7)


def test_curve_names():
    assert curve_name((1, 2, 5, 6)) == "delta"
    assert curve_name((5,)) == "mu5"
    assert curve_name((1, 3)) == "{1,3}"


def test_pairing():
    assert mod2_pairing((3, 4), (2, 3)) == 1
    assert mod2_pairing((1, 2, 3, 4), (2, 3)) == 0


def test_twist_symbol_canonical_orientation():
    t = TwistSymbol(CurveSymbol((2,), -1), CurveSymbol((1, 2)), 1)
    c = canonicalize_twist_symbol(t)
    assert c.exponent == -1 and c.direction_curve.orientation == 1
    both = TwistSymbol(CurveSymbol((2,), -1), CurveSymbol((1, 2), -1), 1)
    assert canonicalize_twist_symbol(both).exponent == 1


def test_twist_symbol_needs_odd_pairing():
    with pytest.raises(InvalidCurveError):
        TwistSymbol(gamma(3), gamma(1, 2))


def test_transposition_inverse_flips_both_curves():
    u = canonical_transposition("u3", 7)
    inv = u.inverse()
    assert inv.direction_curve.orientation == -1 and inv.twist_curve.orientation == -1
    assert inv.inverse() == u


def test_complement_orientability():
    assert complement_is_nonorientable(canonical_transposition("u1", 7), 7)
    assert complement_is_nonorientable(canonical_transposition("v", 7), 7)
    # at genus 2, u1 uses up every crosscap
    assert not complement_is_nonorientable(canonical_transposition("u1", 2), 2)


def test_complement_rule_refuses_noncanonical_specs():
    from crosscap.surface import TranspositionSymbol

    t = TranspositionSymbol(gamma(1), gamma(1, 3))
    with pytest.raises(UnsupportedSpecError):
        complement_is_nonorientable(t, 7)


def test_builtin_fixtures_are_consistent():
    table = builtin_fixtures()
    for fx in table:
        a, b = fx.pair
        assert mod2_pairing(a.indices, b.indices) == 0
    assert table.disjointness(gamma(3, 4), gamma(2, 3)) is Disjointness.INTERSECTING
    assert table.disjointness(gamma(3, 4), gamma(1, 2)) is Disjointness.DISJOINT
    assert table.disjointness(gamma(1), gamma(3)) is Disjointness.UNKNOWN


def test_fixture_file_round_trip():
    table = builtin_fixtures()
    again = FixtureTable.loads(table.dumps())
    assert [f.tag for f in again] == [f.tag for f in table]


def test_fixture_with_odd_pairing_rejected():
    with pytest.raises(FixtureError):
        FixtureTable.loads("3,4 | 2,3 | disjoint | forged\n")
    with pytest.raises(FixtureError):
        FixtureTable.loads("3,4 | 2,3\n")
