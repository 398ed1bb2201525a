"""Curve-mapping claims f(source) = target used to justify transported relations.

Each entry is checked in homology when the table is built. An entry that fails
is *flagged* and can never feed ``transport_instance``; if the claim holds with
the factors of f applied in the opposite order, the corrected word is kept for
reporting.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .homology import check_mapping_claim
from .surface import CurveSymbol, gamma
from .words import Word


class MappingStatus(str, Enum):
    PASS = "pass"
    FLAGGED = "flagged"


class MappingOrigin(str, Enum):
    CLAIM = "claim"  # stated outright in the construction of the a_1 word
    RELATION = "relation"  # the curve moves behind the braid/chain relations
    DERIVED = "derived"  # direction-curve companions, computed, not stated


@dataclass(frozen=True)
class MappingEntry:
    f: Word
    f_label: str
    source: CurveSymbol
    target: CurveSymbol
    anchor: str
    origin: MappingOrigin
    status: MappingStatus = MappingStatus.PASS
    corrected: Word | None = None

    @property
    def tag(self) -> str:
        return f"map:{self.f_label}({self.source.name})={self.target.name}"


def _build_entry(f, f_label, source, target, anchor, origin, genus) -> MappingEntry:
    word = Word.parse(f) if isinstance(f, str) else f
    if check_mapping_claim(word, source, target, genus):
        return MappingEntry(word, f_label, source, target, anchor, origin)
    flipped = Word(reversed(word.letters))
    corrected = flipped if check_mapping_claim(flipped, source, target, genus) else None
    return MappingEntry(word, f_label, source, target, anchor, origin, MappingStatus.FLAGGED, corrected)


BETA = gamma(1, 2, 3, 4)
GAMMA = gamma(3, 4, 5, 6)
DELTA = gamma(1, 2, 5, 6)
EPSILON = gamma(1, 2, 3, 4, 5, 6)
G1267 = gamma(1, 2, 6, 7)
G123457 = gamma(1, 2, 3, 4, 5, 7)

X_WORD = "x"
F_WORD = "u6 w u5^-1 u6^-1"
Q_WORD = "u4 u5 u3 u4"

# (f, label, source, target, anchor)
_CLAIMS = [
    (X_WORD, "x", BETA, GAMMA, "x(beta) = gamma"),
    (X_WORD, "x", gamma(3, 4), gamma(5, 6), "x(alpha_3) = alpha_5"),
    (X_WORD, "x", gamma(4), gamma(6), "x(mu_4) = mu_6"),
    ("w", "w", G1267, G123457, "w(gamma_{1,2,6,7}) = gamma_{1,2,3,4,5,7}"),
    ("u5 u6", "u5u6", G1267, DELTA, "u_5 u_6(gamma_{1,2,6,7}) = delta"),
    ("u6", "u6", G123457, EPSILON, "u_6(gamma_{1,2,3,4,5,7}) = epsilon"),
    (F_WORD, "f", DELTA, EPSILON, "u_6 w u_5^-1 u_6^-1(delta) = epsilon"),
    (Q_WORD, "q", DELTA, BETA, "u_4 u_5 u_3 u_4(delta) = beta"),
]

_DERIVED = [
    (Q_WORD, "q", gamma(6), gamma(4), "direction companion of q(delta) = beta"),
    (F_WORD, "f", gamma(6), gamma(6), "direction companion of f(delta) = epsilon"),
]


class CurveMappingTable:
    def __init__(self, entries: Iterable[MappingEntry]):
        self.entries = tuple(entries)
        self._index = {(e.f, e.source.indices): e for e in self.entries}

    def __iter__(self) -> Iterator[MappingEntry]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def lookup(self, f: Word, source: CurveSymbol) -> MappingEntry | None:
        return self._index.get((f, source.indices))

    def by_tag(self, tag: str) -> MappingEntry:
        for e in self.entries:
            if e.tag == tag:
                return e
        raise KeyError(tag)

    def without(self, tag: str) -> "CurveMappingTable":
        return CurveMappingTable(e for e in self.entries if e.tag != tag)

    def claims(self) -> list[MappingEntry]:
        return [e for e in self.entries if e.origin is MappingOrigin.CLAIM]

    @classmethod
    def standard(cls, genus: int) -> "CurveMappingTable":
        """All entries valid at this genus (the proof claims need g >= 7)."""
        out = []
        for i in range(1, genus - 1):
            f = f"u{i} u{i + 1}"
            anchor = f"u_{i} u_{i+1} takes alpha_{i} to alpha_{i+1} and mu_{i+1} to mu_{i+2}"
            out.append(_build_entry(f, f"u{i}u{i+1}", gamma(i, i + 1), gamma(i + 1, i + 2), anchor, MappingOrigin.RELATION, genus))
            out.append(_build_entry(f, f"u{i}u{i+1}", gamma(i + 1), gamma(i + 2), anchor, MappingOrigin.RELATION, genus))
        if genus >= 5:
            anchor = "u_4 v takes alpha_4 to beta and mu_5 to mu_4"
            out.append(_build_entry("u4 v", "u4v", gamma(4, 5), BETA, anchor, MappingOrigin.RELATION, genus))
            out.append(_build_entry("u4 v", "u4v", gamma(5), gamma(4), anchor, MappingOrigin.RELATION, genus))
        if genus >= 7:
            for f, label, src, dst, anchor in _CLAIMS:
                out.append(_build_entry(f, label, src, dst, anchor, MappingOrigin.CLAIM, genus))
            for f, label, src, dst, anchor in _DERIVED:
                out.append(_build_entry(f, label, src, dst, anchor, MappingOrigin.DERIVED, genus))
        return cls(out)
