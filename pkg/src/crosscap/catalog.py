"""Relation catalog, positional rewriting, transport instances and the abelianized check.

Every relation instance is checked in homology when it is built, so a forged
or mistyped relation fails before anything can use it. Commutations come only
from the disjointness fixture table; the lantern relation and every relation
that mentions the macro twists c, d, e or w carry the curve-mapping entries
that make those macros the intended twists.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from .errors import NoOccurrenceError, RelationCheckError, UnsupportedGenusError, UntransportableError
from .homology import evaluate
from .mappings import CurveMappingTable, MappingEntry, MappingStatus
from .snf import AbelianGroup, cokernel, smith_normal_form
from .surface import (
    LANTERN_BOUNDARY,
    CurveSymbol,
    Disjointness,
    FixtureTable,
    builtin_fixtures,
    gamma,
)
from .words import MACROS, Word, exponent_sums


@dataclass(frozen=True, order=True)
class Assumption:
    tag: str
    anchor: str


class Family(str, Enum):
    BRAID_U = "BraidU"
    CHAIN_UA = "ChainUA"
    BRAID_UV = "BraidUV"
    CHAIN_UVB = "ChainUVB"
    LANTERN = "Lantern"
    COMMUTE = "Commute"
    TRANSPORT = "Transport"
    UTU = "UTU"


@dataclass(frozen=True)
class RelationInstance:
    family: Family
    name: str
    lhs: Word
    rhs: Word
    anchor: str
    assumptions: tuple[Assumption, ...] = ()
    genus: int = 0

    def __post_init__(self):
        if self.lhs == self.rhs:
            raise RelationCheckError(f"{self.name}: both sides are the same word")
        if self.genus and evaluate(self.lhs, self.genus) != evaluate(self.rhs, self.genus):
            raise RelationCheckError(f"{self.name} fails in Z/2-homology at genus {self.genus}")

    @cached_property
    def lhs_base(self) -> Word:
        return MACROS.expand(self.lhs)

    @cached_property
    def rhs_base(self) -> Word:
        return MACROS.expand(self.rhs)

    @property
    def relator(self) -> Word:
        return self.lhs_base * self.rhs_base.inverse()

    def sides(self, direction: str) -> tuple[Word, Word]:
        """(source, replacement) for a rewrite direction.

        Directions are ``lhs->rhs`` and ``rhs->lhs``; suffix ``^-1`` rewrites
        with both sides inverted (lhs^-1 = rhs^-1 holds whenever lhs = rhs).
        """
        base, inv, _ = direction.partition("^-1")
        if inv and _:
            raise ValueError(f"bad direction {direction!r}")
        if base == "lhs->rhs":
            src, dst = self.lhs_base, self.rhs_base
        elif base == "rhs->lhs":
            src, dst = self.rhs_base, self.lhs_base
        else:
            raise ValueError(f"bad direction {direction!r}")
        if inv:
            src, dst = src.inverse(), dst.inverse()
        return src, dst

    def __str__(self):
        return f"{self.name}: {self.lhs} = {self.rhs}"


DIRECTIONS = ("lhs->rhs", "rhs->lhs", "lhs->rhs^-1", "rhs->lhs^-1")


def apply_relation(word: Word, relation: RelationInstance, position: int, direction: str = "lhs->rhs") -> Word:
    """Replace the literal occurrence of one side of ``relation`` at ``position``."""
    src, dst = relation.sides(direction)
    if not word.occurs_at(src, position):
        raise NoOccurrenceError(f"{relation.name} ({direction}) does not occur at position {position} of {word}")
    return word.splice(position, len(src), dst)


# letter supports: the curves each generator is supported on

def _letter_supports(genus: int) -> dict[str, tuple[CurveSymbol, ...]]:
    sup: dict[str, tuple[CurveSymbol, ...]] = {}
    for i in range(1, genus):
        sup[f"a{i}"] = (gamma(i, i + 1),)
        sup[f"u{i}"] = (gamma(i + 1), gamma(i, i + 1))
    if genus >= 5:
        sup["b"] = (gamma(1, 2, 3, 4),)
        sup["v"] = (gamma(4), gamma(1, 2, 3, 4))
    if genus >= 7:
        sup["c"] = (gamma(3, 4, 5, 6),)
        sup["d"] = (gamma(1, 2, 5, 6),)
        sup["e"] = (gamma(1, 2, 3, 4, 5, 6),)
        sup["w"] = (gamma(6), gamma(3, 4, 5, 6))
    return sup


_KIND_ORDER = {k: n for n, k in enumerate("abcdeuvw")}


def _letter_key(name: str) -> tuple[int, int]:
    return (_KIND_ORDER[name[0]], int(name[1:]) if name[1:] else 0)


# which mapping entries make a macro letter the intended twist or transposition
_MACRO_BACKING = {
    "c": ("map:x(beta)=gamma", "map:x(mu4)=mu6"),
    "w": ("map:x(beta)=gamma", "map:x(mu4)=mu6"),
    "d": ("map:q(delta)=beta", "map:q(mu6)=mu4"),
    "e": ("map:q(delta)=beta", "map:q(mu6)=mu4", "map:f(delta)=epsilon", "map:f(mu6)=mu6"),
}


def _macro_assumptions(names: Iterable[str], mappings: CurveMappingTable) -> tuple[Assumption, ...] | None:
    """Assumptions backing the macro letters in ``names``; None if any entry is missing or flagged."""
    out: list[Assumption] = []
    for name in sorted(set(names) & set(_MACRO_BACKING)):
        for tag in _MACRO_BACKING[name]:
            try:
                entry = mappings.by_tag(tag)
            except KeyError:
                return None
            if entry.status is not MappingStatus.PASS:
                return None
            out.append(Assumption(entry.tag, entry.anchor))
    return tuple(out)


@dataclass
class Catalog:
    genus: int
    instances: list[RelationInstance]
    warnings: list[str] = field(default_factory=list)

    def __iter__(self) -> Iterator[RelationInstance]:
        return iter(self.instances)

    def __len__(self):
        return len(self.instances)

    def __contains__(self, name: str):
        return any(r.name == name for r in self.instances)

    def get(self, name: str) -> RelationInstance:
        for r in self.instances:
            if r.name == name:
                return r
        raise KeyError(name)

    def families(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for r in self.instances:
            counts[r.family.value] = counts.get(r.family.value, 0) + 1
        return counts

    @property
    def restricted(self) -> bool:
        return bool(self.warnings)


def commute_instances(
    genus: int, fixtures: FixtureTable, mappings: CurveMappingTable | None = None
) -> list[RelationInstance]:
    """Commute(p, q) for every letter pair whose supports are fixture-disjoint."""
    if mappings is None:
        mappings = CurveMappingTable.standard(genus)
    fixtures = fixtures.restrict(genus)
    supports = _letter_supports(genus)
    names = sorted(supports, key=_letter_key)
    out = []
    for p, q in combinations(names, 2):
        used = []
        for c1 in supports[p]:
            for c2 in supports[q]:
                fx = fixtures.lookup(c1, c2)
                if fx is None or fx.status is not Disjointness.DISJOINT:
                    break
                used.append(fx)
            else:
                continue
            break
        else:
            backing = _macro_assumptions((p, q), mappings)
            if backing is None:
                continue
            assumptions = tuple(Assumption(fx.tag, fx.anchor) for fx in used) + backing
            out.append(
                RelationInstance(
                    Family.COMMUTE,
                    f"Commute({p},{q})",
                    Word.parse(f"{p} {q}"),
                    Word.parse(f"{q} {p}"),
                    f"{p} {q} = {q} {p} (disjoint supports)",
                    assumptions,
                    genus,
                )
            )
    return out


LANTERN_ANCHOR = "a_1 a_3 a_5 e = b c d"


def lantern_instance(genus: int, fixtures: FixtureTable, mappings: CurveMappingTable) -> RelationInstance | None:
    if genus < 7:
        return None
    used = []
    for c1, c2 in combinations(LANTERN_BOUNDARY, 2):
        fx = fixtures.lookup(CurveSymbol(c1), CurveSymbol(c2))
        if fx is None or fx.status is not Disjointness.DISJOINT:
            return None
        used.append(Assumption(fx.tag, fx.anchor))
    backing = _macro_assumptions("cde", mappings)
    if backing is None:
        return None
    return RelationInstance(
        Family.LANTERN,
        "Lantern",
        Word.parse("a1 a3 a5 e"),
        Word.parse("b c d"),
        LANTERN_ANCHOR,
        (Assumption("lantern-configuration", LANTERN_ANCHOR), *used, *backing),
        genus,
    )


def catalog(
    genus: int,
    fixtures: FixtureTable | None = None,
    mappings: CurveMappingTable | None = None,
) -> Catalog:
    """All catalog relation instances at this genus.

    Below genus 7 the lantern relation is omitted and a warning is recorded
    (and emitted through ``warnings``).
    """
    if genus < 2:
        raise UnsupportedGenusError(f"genus must be at least 2, got {genus}")
    if fixtures is None:
        fixtures = builtin_fixtures()
    if mappings is None:
        mappings = CurveMappingTable.standard(genus)
    out: list[RelationInstance] = []
    for i in range(1, genus - 1):
        j = i + 1
        out.append(RelationInstance(
            Family.BRAID_U, f"BraidU({i})",
            Word.parse(f"u{i} u{j} u{i}"), Word.parse(f"u{j} u{i} u{j}"),
            "u_i u_{i+1} u_i = u_{i+1} u_i u_{i+1}", (), genus,
        ))
        out.append(RelationInstance(
            Family.CHAIN_UA, f"ChainUA({i})",
            Word.parse(f"u{i} u{j} a{i}"), Word.parse(f"a{j} u{i} u{j}"),
            "u_i u_{i+1} a_i = a_{i+1} u_i u_{i+1}", (), genus,
        ))
    if genus >= 5:
        out.append(RelationInstance(
            Family.BRAID_UV, "BraidUV", Word.parse("u4 v u4"), Word.parse("v u4 v"),
            "u_4 v u_4 = v u_4 v", (), genus,
        ))
        out.append(RelationInstance(
            Family.CHAIN_UVB, "ChainUVB", Word.parse("u4 v a4"), Word.parse("b u4 v"),
            "u_4 v a_4 = b u_4 v", (), genus,
        ))
    notes = []
    lantern = lantern_instance(genus, fixtures, mappings)
    if lantern is not None:
        out.append(lantern)
    elif genus < 7:
        notes.append(f"genus {genus} < 7: lantern relation omitted, catalog restricted")
    else:
        notes.append("lantern relation omitted: configuration fixtures or mapping entries missing")
    out.extend(commute_instances(genus, fixtures, mappings))
    for note in notes:
        warnings.warn(note, stacklevel=2)
    return Catalog(genus, out, notes)


def utu_instances(genus: int) -> list[RelationInstance]:
    """U T U^-1 = T^-1 for each transposition and its own twist."""
    out = [
        RelationInstance(
            Family.UTU, f"UTU(u{i})", Word.parse(f"u{i} a{i} u{i}^-1"), Word.parse(f"a{i}^-1"),
            "U_{mu,alpha} T_{mu,alpha} U_{mu,alpha}^-1 = T_{mu,alpha}^-1", (), genus,
        )
        for i in range(1, genus)
    ]
    if genus >= 5:
        out.append(RelationInstance(
            Family.UTU, "UTU(v)", Word.parse("v b v^-1"), Word.parse("b^-1"),
            "U_{mu,alpha} T_{mu,alpha} U_{mu,alpha}^-1 = T_{mu,alpha}^-1", (), genus,
        ))
    return out


# transport: f T_{mu,alpha} f^-1 = T_{f(mu),f(alpha)}, likewise for U

_TWISTS = {"b": (4, (1, 2, 3, 4)), "c": (6, (3, 4, 5, 6)), "d": (6, (1, 2, 5, 6)), "e": (6, (1, 2, 3, 4, 5, 6))}
_TRANSPOSITIONS = {"v": (4, (1, 2, 3, 4)), "w": (6, (3, 4, 5, 6))}


def symbol_curves(name: str) -> tuple[str, int, tuple[int, ...]]:
    """(kind, direction index, twist-curve indices) for a twist or transposition letter."""
    if name[0] in "au" and name[1:].isdigit():
        i = int(name[1:])
        return ("twist" if name[0] == "a" else "transposition", i + 1, (i, i + 1))
    if name in _TWISTS:
        return ("twist",) + _TWISTS[name]
    if name in _TRANSPOSITIONS:
        return ("transposition",) + _TRANSPOSITIONS[name]
    raise UntransportableError(f"{name} has no curve data")


def symbol_for(kind: str, direction: int, twist: tuple[int, ...]) -> str | None:
    if len(twist) == 2 and twist[1] == twist[0] + 1 and direction == twist[1]:
        return ("a" if kind == "twist" else "u") + str(twist[0])
    table = _TWISTS if kind == "twist" else _TRANSPOSITIONS
    for name, data in table.items():
        if data == (direction, twist):
            return name
    return None


def transport_instance(
    f: Word | str,
    symbol: str,
    mappings: CurveMappingTable,
    genus: int,
    label: str | None = None,
) -> RelationInstance:
    """The instance f * symbol * f^-1 = image, using only homology-checked table entries."""
    fw = Word.parse(f) if isinstance(f, str) else f
    kind, direction, twist = symbol_curves(symbol)
    entries: list[MappingEntry] = []
    images = []
    for curve in (gamma(direction), CurveSymbol(twist)):
        entry = mappings.lookup(fw, curve)
        if entry is None:
            raise UntransportableError(f"no mapping entry for {fw}({curve.name})")
        if entry.status is not MappingStatus.PASS:
            raise UntransportableError(f"mapping entry {entry.tag} is flagged")
        entries.append(entry)
        images.append(entry.target)
    mu, alpha = images
    if len(mu.indices) != 1:
        raise UntransportableError(f"image of the direction curve {mu.name} is not a mu curve")
    image = symbol_for(kind, mu.indices[0], alpha.indices)
    if image is None:
        raise UntransportableError(f"image pair ({mu.name}, {alpha.name}) names no known generator")
    label = label or entries[0].f_label
    backing = _macro_assumptions((symbol, image), mappings) or ()
    return RelationInstance(
        Family.TRANSPORT,
        f"Transport({label}:{symbol}->{image})",
        fw * Word.parse(symbol) * fw.inverse(),
        Word.parse(image),
        "f T_{mu,alpha} f^-1 = T_{f(mu),f(alpha)}" if kind == "twist" else "f U_{mu,alpha} f^-1 = U_{f(mu),f(alpha)}",
        tuple(Assumption(e.tag, e.anchor) for e in entries) + backing,
        genus,
    )


# abelianization


def base_alphabet(genus: int) -> list[str]:
    names = [f"a{i}" for i in range(1, genus)]
    if genus >= 5:
        names.append("b")
    names += [f"u{i}" for i in range(1, genus)]
    if genus >= 5:
        names.append("v")
    return names


def relator_matrix(relations: Iterable[RelationInstance], alphabet: list[str]) -> list[list[int]]:
    col = {n: j for j, n in enumerate(alphabet)}
    rows = []
    for r in relations:
        row = [0] * len(alphabet)
        for name, k in exponent_sums(r.relator).items():
            row[col[name]] += k
        rows.append(row)
    return rows


@dataclass(frozen=True)
class AbelianizationReport:
    genus: int
    alphabet: tuple[str, ...]
    relator_count: int
    diagonal: tuple[int, ...]
    group: AbelianGroup
    generated_by_u1: bool
    images: dict[str, tuple[int, ...]]
    moduli: tuple[int, ...]

    @property
    def is_cyclic(self) -> bool:
        return self.group.is_cyclic

    def classes(self) -> list[list[str]]:
        """Generators grouped by equal image."""
        groups: dict[tuple[int, ...], list[str]] = {}
        for name in self.alphabet:
            groups.setdefault(self.images[name], []).append(name)
        return list(groups.values())

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "alphabet": list(self.alphabet),
            "relators": self.relator_count,
            "diagonal": list(self.diagonal),
            "abelianization": str(self.group),
            "free_rank": self.group.free_rank,
            "torsion": list(self.group.torsion),
            "cyclic": self.is_cyclic,
            "generated_by_u1": self.generated_by_u1,
            "moduli": list(self.moduli),
            "images": {k: list(v) for k, v in self.images.items()},
        }


def abelianize(relations: Iterable[RelationInstance], genus: int) -> AbelianizationReport:
    alphabet = base_alphabet(genus)
    rows = relator_matrix(relations, alphabet)
    n = len(alphabet)
    d, _, v = smith_normal_form(rows, n)
    diag = [d[i][i] for i in range(min(len(d), n))] if d else []
    nonzero = [x for x in diag if x]
    group = AbelianGroup(n - len(nonzero), tuple(x for x in nonzero if x > 1))
    # x -> x V sends the relator lattice to the diagonal lattice
    moduli = [x for x in nonzero] + [0] * (n - len(nonzero))
    keep = [i for i, m in enumerate(moduli) if m != 1]
    images = {
        name: tuple(v[j][i] % moduli[i] if moduli[i] else v[j][i] for i in keep)
        for j, name in enumerate(alphabet)
    }
    unit = [0] * n
    unit[alphabet.index("u1")] = 1
    spanned = cokernel(rows + [unit], n)
    return AbelianizationReport(
        genus, tuple(alphabet), len(rows), tuple(diag), group, spanned.is_trivial, images,
        tuple(moduli[i] for i in keep),
    )


def abelianize_catalog(genus: int, include_lantern: bool = True, **kwargs) -> AbelianizationReport:
    if genus < 7:
        raise UnsupportedGenusError(f"abelianized catalog check needs genus >= 7, got {genus}")
    cat = catalog(genus, **kwargs)
    rels = [r for r in cat if include_lantern or r.family is not Family.LANTERN]
    return abelianize(rels, genus)
