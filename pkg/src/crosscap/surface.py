"""Surface parameters, the curve family gamma_I, and disjointness fixtures.

The surface N_{g,n} is drawn as a sphere with n holes and g crosscaps in a
row. For a nonempty index set I the curve gamma_I runs through the crosscaps
listed in I; it is two-sided exactly when |I| is even. H_1(N; Z/2) is
modelled on the crosscap cores e_1..e_g with the diagonal (identity)
intersection form, and boundary classes are dropped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

from .errors import (
    FixtureError,
    InvalidCurveError,
    UnsupportedGenusError,
    UnsupportedSpecError,
)
from .gf2 import F2Vector


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    boundary_count: int = 0

    def __post_init__(self):
        if self.genus < 2:
            raise UnsupportedGenusError(f"genus must be at least 2, got {self.genus}")
        if self.boundary_count < 0:
            raise ValueError(f"boundary count must be nonnegative, got {self.boundary_count}")


def _normalize_indices(indices: Iterable[int], genus: int | None = None) -> tuple[int, ...]:
    idx = tuple(indices)
    if not idx:
        raise InvalidCurveError("curve index set is empty")
    if any(not isinstance(i, int) or isinstance(i, bool) for i in idx):
        raise InvalidCurveError(f"curve indices must be integers: {idx!r}")
    if len(set(idx)) != len(idx):
        raise InvalidCurveError(f"repeated index in {idx!r}")
    idx = tuple(sorted(idx))
    if idx[0] < 1:
        raise InvalidCurveError(f"index {idx[0]} is below 1")
    if genus is not None and idx[-1] > genus:
        raise InvalidCurveError(f"index {idx[-1]} exceeds genus {genus}")
    return idx


@dataclass(frozen=True)
class CurveSymbol:
    """Oriented curve gamma_I. Orientation is +1 or -1."""

    indices: tuple[int, ...]
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "indices", _normalize_indices(self.indices))
        if self.orientation not in (1, -1):
            raise InvalidCurveError(f"orientation must be +1 or -1, got {self.orientation}")

    @property
    def two_sided(self) -> bool:
        return len(self.indices) % 2 == 0

    @property
    def top(self) -> int:
        """Largest crosscap index; gamma_{top} is the standard direction curve."""
        return self.indices[-1]

    def reversed(self) -> "CurveSymbol":
        return CurveSymbol(self.indices, -self.orientation)

    def unoriented(self) -> "CurveSymbol":
        return CurveSymbol(self.indices, 1)

    def validate(self, genus: int) -> "CurveSymbol":
        _normalize_indices(self.indices, genus)
        return self

    @property
    def name(self) -> str:
        base = curve_name(self.indices)
        return base if self.orientation == 1 else base + "^-1"

    def __str__(self):
        return self.name


def gamma(*indices: int) -> CurveSymbol:
    return CurveSymbol(tuple(indices))


_FIXED_NAMES = {
    (1, 2, 3, 4): "beta",
    (3, 4, 5, 6): "gamma",
    (1, 2, 5, 6): "delta",
    (1, 2, 3, 4, 5, 6): "epsilon",
}
_FIXED_BY_NAME = {v: k for k, v in _FIXED_NAMES.items()}
_NAME_MIN_GENUS = {"beta": 5, "gamma": 7, "delta": 7, "epsilon": 7}


def format_indices(indices: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in indices) + "}"


def curve_name(indices: tuple[int, ...]) -> str:
    """Short name of gamma_I: mu<i>, alpha<i>, beta, gamma, delta, epsilon or {I}."""
    if len(indices) == 1:
        return f"mu{indices[0]}"
    if len(indices) == 2 and indices[1] == indices[0] + 1:
        return f"alpha{indices[0]}"
    return _FIXED_NAMES.get(indices, format_indices(indices))


def canonical_curves(genus: int) -> dict[str, CurveSymbol]:
    """Named curves available at this genus.

    mu_i and alpha_i exist for every genus >= 2; beta needs g >= 5 and
    gamma, delta, epsilon need g >= 7.
    """
    SurfaceSpec(genus)
    table = {f"mu{i}": gamma(i) for i in range(1, genus + 1)}
    table.update({f"alpha{i}": gamma(i, i + 1) for i in range(1, genus)})
    for name, idx in _FIXED_BY_NAME.items():
        if genus >= _NAME_MIN_GENUS[name]:
            table[name] = CurveSymbol(idx)
    return table


_SET_RE = re.compile(r"^\{?\s*(\d+(?:\s*,\s*\d+)*)\s*\}?$")
_NAME_RE = re.compile(r"^(mu|alpha)_?(\d+)$")


def parse_curve(text: str, genus: int) -> CurveSymbol:
    """Parse a curve name (``beta``, ``alpha3``, ``mu4``) or an index set (``{1,3,5}``)."""
    s = text.strip()
    m = _NAME_RE.match(s)
    if m:
        i = int(m.group(2))
        curve = gamma(i) if m.group(1) == "mu" else gamma(i, i + 1)
        return curve.validate(genus)
    if s in _FIXED_BY_NAME:
        if genus < _NAME_MIN_GENUS[s]:
            raise UnsupportedGenusError(f"{s} needs genus >= {_NAME_MIN_GENUS[s]}, got {genus}")
        return CurveSymbol(_FIXED_BY_NAME[s])
    m = _SET_RE.match(s)
    if m:
        return CurveSymbol(tuple(int(t) for t in m.group(1).split(","))).validate(genus)
    raise InvalidCurveError(f"cannot parse curve {text!r}")


def is_two_sided(indices: Iterable[int], genus: int | None = None) -> bool:
    return len(_normalize_indices(indices, genus)) % 2 == 0


def homology_class(indices: Iterable[int], genus: int) -> F2Vector:
    """[gamma_I] = sum of e_i over i in I."""
    return F2Vector.from_support(_normalize_indices(indices, genus), genus)


def mod2_pairing(first: Iterable[int], second: Iterable[int]) -> int:
    """Algebraic Z/2 intersection number |I & J| mod 2."""
    a = set(_normalize_indices(first))
    b = set(_normalize_indices(second))
    return len(a & b) % 2


# twist and transposition symbols


@dataclass(frozen=True)
class TwistSymbol:
    direction_curve: CurveSymbol
    twist_curve: CurveSymbol
    exponent: int = 1

    def __post_init__(self):
        if self.direction_curve.two_sided:
            raise InvalidCurveError(f"direction curve {self.direction_curve} must be one-sided")
        if not self.twist_curve.two_sided:
            raise InvalidCurveError(f"twist curve {self.twist_curve} must be two-sided")
        if mod2_pairing(self.direction_curve.indices, self.twist_curve.indices) != 1:
            raise InvalidCurveError(
                f"{self.direction_curve} and {self.twist_curve} must meet once (odd pairing)"
            )
        if self.exponent == 0:
            raise ValueError("twist exponent must be nonzero")


def canonicalize_twist_symbol(t: TwistSymbol) -> TwistSymbol:
    """Move both orientations to +1.

    T_{mu,alpha} = T_{mu^-1,alpha^-1} = T^-1_{mu^-1,alpha} = T^-1_{mu,alpha^-1},
    so flipping one curve inverts the twist and flipping both changes nothing.
    """
    sign = t.direction_curve.orientation * t.twist_curve.orientation
    return TwistSymbol(t.direction_curve.unoriented(), t.twist_curve.unoriented(), t.exponent * sign)


@dataclass(frozen=True)
class TranspositionSymbol:
    direction_curve: CurveSymbol
    twist_curve: CurveSymbol
    support: frozenset[int] = field(default=frozenset())
    label: str | None = None

    def __post_init__(self):
        if self.direction_curve.two_sided or not self.twist_curve.two_sided:
            raise InvalidCurveError("transposition needs a one-sided and a two-sided curve")
        if mod2_pairing(self.direction_curve.indices, self.twist_curve.indices) != 1:
            raise InvalidCurveError("transposition curves must meet once")
        union = frozenset(self.direction_curve.indices) | frozenset(self.twist_curve.indices)
        if not self.support:
            object.__setattr__(self, "support", union)
        elif self.label is None and frozenset(self.support) != union:
            raise UnsupportedSpecError("support must be the crosscaps met by the two curves")
        else:
            object.__setattr__(self, "support", frozenset(self.support))

    def inverse(self) -> "TranspositionSymbol":
        """U^-1_{mu,alpha} = U_{mu^-1,alpha^-1}."""
        return TranspositionSymbol(
            self.direction_curve.reversed(), self.twist_curve.reversed(), self.support, self.label
        )


def canonicalize_transposition(t: TranspositionSymbol) -> tuple[TranspositionSymbol, int]:
    """Return (positively oriented symbol, exponent +-1)."""
    o1, o2 = t.direction_curve.orientation, t.twist_curve.orientation
    if o1 != o2:
        raise UnsupportedSpecError("mixed orientations have no single-transposition normal form")
    if o1 == 1:
        return t, 1
    return t.inverse(), -1


def canonical_transposition(name: str, genus: int) -> TranspositionSymbol:
    """Transposition symbols for u<i>, v, w and the conjugates s2, s3.

    s2 and s3 are conjugates of u2 and u3 by a3, so the recorded support is
    that of u2 and u3 (complement type is conjugation invariant).
    """
    m = re.fullmatch(r"u(\d+)", name)
    if m:
        i = int(m.group(1))
        if not 1 <= i <= genus - 1:
            raise InvalidCurveError(f"{name} needs 1 <= i <= {genus - 1}")
        return TranspositionSymbol(gamma(i + 1), gamma(i, i + 1), label=name)
    if name == "v":
        if genus < 5:
            raise UnsupportedGenusError("v needs genus >= 5")
        return TranspositionSymbol(gamma(4), gamma(1, 2, 3, 4), label="v")
    if name == "w":
        if genus < 7:
            raise UnsupportedGenusError("w needs genus >= 7")
        return TranspositionSymbol(gamma(6), gamma(3, 4, 5, 6), label="w")
    if name in ("s2", "s3"):
        base = canonical_transposition("u" + name[1], genus)
        return TranspositionSymbol(base.direction_curve, base.twist_curve, base.support, label=name)
    raise UnsupportedSpecError(f"no canonical transposition named {name!r}")


def _is_canonical_pair(t: TranspositionSymbol) -> bool:
    mu, al = t.direction_curve.indices, t.twist_curve.indices
    if len(al) == 2 and al[1] == al[0] + 1 and mu == (al[1],):
        return True
    return (mu, al) in {((4,), (1, 2, 3, 4)), ((6,), (3, 4, 5, 6))}


def complement_is_nonorientable(t: TranspositionSymbol, genus: int) -> bool:
    """Whether N minus (mu u alpha) is nonorientable, for the standard transpositions.

    The Klein-bottle neighbourhood absorbs every crosscap in the support, so a
    one-sided curve survives in the complement iff some crosscap is left over.
    This rule is only claimed for u_i, v, w and recorded conjugates s2, s3.
    """
    if t.label not in ("s2", "s3") and not _is_canonical_pair(t):
        raise UnsupportedSpecError(
            f"transposition on ({t.direction_curve}, {t.twist_curve}) is not a canonical spec"
        )
    if max(t.support) > genus:
        raise InvalidCurveError(f"support {sorted(t.support)} exceeds genus {genus}")
    return genus > len(t.support)


# disjointness fixtures


class Disjointness(str, Enum):
    DISJOINT = "disjoint"
    INTERSECTING = "intersecting"
    UNKNOWN = "unknown"


def _pair_key(a: CurveSymbol, b: CurveSymbol) -> frozenset:
    return frozenset((a.indices, b.indices))


@dataclass(frozen=True)
class DisjointnessFixture:
    pair: tuple[CurveSymbol, CurveSymbol]
    status: Disjointness
    anchor: str

    def __post_init__(self):
        a, b = self.pair
        if self.status is Disjointness.UNKNOWN:
            raise FixtureError("a fixture must be disjoint or intersecting")
        if a.indices == b.indices:
            raise FixtureError(f"fixture pairs a curve with itself: {a}")
        if self.status is Disjointness.DISJOINT and mod2_pairing(a.indices, b.indices):
            raise FixtureError(
                f"fixture {a} | {b} marked disjoint but mod-2 pairing is 1"
            )

    @property
    def tag(self) -> str:
        a, b = self.pair
        return f"fixture:{a.unoriented().name}|{b.unoriented().name}"

    @property
    def max_index(self) -> int:
        return max(self.pair[0].top, self.pair[1].top)


class FixtureTable:
    """Immutable lookup of curated disjointness facts, symmetric and orientation-blind."""

    def __init__(self, fixtures: Iterable[DisjointnessFixture] = ()):
        entries: dict[frozenset, DisjointnessFixture] = {}
        for fx in fixtures:
            key = _pair_key(*fx.pair)
            old = entries.get(key)
            if old is not None and old.status is not fx.status:
                raise FixtureError(f"conflicting fixtures for {fx.tag}")
            entries.setdefault(key, fx)
        self._entries = entries

    def __iter__(self) -> Iterator[DisjointnessFixture]:
        return iter(self._entries.values())

    def __len__(self):
        return len(self._entries)

    def lookup(self, a: CurveSymbol, b: CurveSymbol) -> DisjointnessFixture | None:
        return self._entries.get(_pair_key(a, b))

    def restrict(self, genus: int) -> "FixtureTable":
        return FixtureTable(fx for fx in self if fx.max_index <= genus)

    def without(self, tag: str) -> "FixtureTable":
        return FixtureTable(fx for fx in self if fx.tag != tag)

    def extended(self, fixtures: Iterable[DisjointnessFixture]) -> "FixtureTable":
        return FixtureTable([*self, *fixtures])

    def disjointness(self, a: CurveSymbol, b: CurveSymbol) -> Disjointness:
        if mod2_pairing(a.indices, b.indices):
            return Disjointness.INTERSECTING
        fx = self.lookup(a, b)
        return fx.status if fx is not None else Disjointness.UNKNOWN

    def dumps(self) -> str:
        lines = []
        for fx in self:
            a, b = fx.pair
            lines.append(
                f"{','.join(map(str, a.indices))} | {','.join(map(str, b.indices))}"
                f" | {fx.status.value} | {fx.anchor}"
            )
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "FixtureTable":
        """Parse ``I | J | disjoint|intersecting | anchor`` lines; ``#`` starts a comment."""
        fixtures = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split("|", 3)]
            if len(parts) != 4:
                raise FixtureError(f"line {lineno}: expected 4 '|'-separated fields")
            try:
                a = CurveSymbol(tuple(int(t) for t in parts[0].split(",")))
                b = CurveSymbol(tuple(int(t) for t in parts[1].split(",")))
                status = Disjointness(parts[2])
            except (ValueError, InvalidCurveError) as exc:
                raise FixtureError(f"line {lineno}: {exc}") from exc
            try:
                fixtures.append(DisjointnessFixture((a, b), status, parts[3]))
            except FixtureError as exc:
                raise FixtureError(f"line {lineno}: {exc}") from exc
        return cls(fixtures)

    @classmethod
    def load(cls, path: str | Path) -> "FixtureTable":
        return cls.loads(Path(path).read_text(encoding="utf-8"))


A3_COMMUTES = "a_3 commutes with u_1, u_5, u_6"
U4_COMMUTES = "u_4 commutes with a_2"
V_COMMUTES = "beta and mu_4 are disjoint from alpha_2"
LANTERN_SPHERE = "lantern sphere: boundary alpha_1, alpha_3, alpha_5, epsilon; interior beta, gamma, delta"

_BUILTIN = [
    ((3, 4), (1, 2), A3_COMMUTES),
    ((3, 4), (2,), A3_COMMUTES),
    ((3, 4), (5, 6), A3_COMMUTES),
    ((3, 4), (6,), A3_COMMUTES),
    ((3, 4), (6, 7), A3_COMMUTES),
    ((3, 4), (7,), A3_COMMUTES),
    ((2, 3), (4, 5), U4_COMMUTES),
    ((2, 3), (5,), U4_COMMUTES),
    ((1, 2, 3, 4), (2, 3), V_COMMUTES),
    ((4,), (2, 3), V_COMMUTES),
    ((1, 2), (3, 4), LANTERN_SPHERE),
    ((1, 2), (5, 6), LANTERN_SPHERE),
    ((1, 2), (1, 2, 3, 4, 5, 6), LANTERN_SPHERE),
    ((3, 4), (1, 2, 3, 4, 5, 6), LANTERN_SPHERE),
    ((5, 6), (1, 2, 3, 4, 5, 6), LANTERN_SPHERE),
    ((3, 4), (3, 4, 5, 6), LANTERN_SPHERE),
    ((3, 4), (1, 2, 5, 6), LANTERN_SPHERE),
    ((5, 6), (1, 2, 5, 6), LANTERN_SPHERE),
]

# pairs that must all be disjoint for the lantern configuration to be usable
LANTERN_BOUNDARY = [(1, 2), (3, 4), (5, 6), (1, 2, 3, 4, 5, 6)]


def builtin_fixtures() -> FixtureTable:
    return FixtureTable(
        DisjointnessFixture((CurveSymbol(a), CurveSymbol(b)), Disjointness.DISJOINT, anchor)
        for a, b, anchor in _BUILTIN
    )


def disjointness(
    c1: CurveSymbol, c2: CurveSymbol, table: FixtureTable | None = None
) -> Disjointness:
    return (table if table is not None else builtin_fixtures()).disjointness(c1, c2)
