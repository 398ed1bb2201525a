"""Free-group words over the named generators, and the macro table.

Token syntax is ``name`` or ``name^-1`` separated by spaces, e.g. ``u1 v a3^-1 s2``.
Base letters are ``a<i>`` and ``b`` (Dehn twists), ``u<i>`` and ``v`` (crosscap
transpositions) and ``y<i>``/``yv`` (crosscap slides). Macro letters ``x w c d e
s2 s3`` stand for fixed words and are expanded on demand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import UnknownSymbolError

_INDEXED = re.compile(r"([auy])(\d+)")
_BASE_FIXED = {"b", "v", "yv"}
MACRO_NAMES = ("x", "w", "c", "d", "e", "s2", "s3")


@dataclass(frozen=True, order=True)
class Letter:
    name: str
    exponent: int = 1

    def __post_init__(self):
        if self.exponent not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {self.exponent}")
        if not is_generator(self.name):
            raise UnknownSymbolError(f"unknown generator {self.name!r}")

    def inverse(self) -> "Letter":
        return Letter(self.name, -self.exponent)

    @property
    def is_macro(self) -> bool:
        return self.name in MACRO_NAMES

    @property
    def index(self) -> int | None:
        m = _INDEXED.fullmatch(self.name)
        return int(m.group(2)) if m else None

    def __str__(self):
        return self.name if self.exponent == 1 else f"{self.name}^-1"


def is_generator(name: str) -> bool:
    m = _INDEXED.fullmatch(name)
    if m:
        return int(m.group(2)) >= 1
    return name in _BASE_FIXED or name in MACRO_NAMES


def max_index_needed(name: str) -> int:
    """Smallest genus for which the letter makes sense."""
    m = _INDEXED.fullmatch(name)
    if m:
        return int(m.group(2)) + 1
    return {"b": 5, "v": 5, "yv": 5, "s2": 5, "s3": 5, "x": 6, "c": 6, "w": 6, "d": 6, "e": 7}[name]


class Word:
    """Immutable sequence of letters. Products are concatenation, not reduction."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        object.__setattr__(self, "letters", tuple(letters))

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def parse(cls, text: str) -> "Word":
        letters = []
        for tok in text.split():
            name, sep, power = tok.partition("^")
            if not sep:
                letters.append(Letter(name))
                continue
            try:
                n = int(power)
            except ValueError:
                raise UnknownSymbolError(f"bad exponent in token {tok!r}") from None
            if n == 0:
                continue
            letters.extend([Letter(name, 1 if n > 0 else -1)] * abs(n))
        return cls(letters)

    @classmethod
    def of(cls, *items: "str | Letter | Word") -> "Word":
        """Concatenate tokens, letters and words: ``Word.of("u4 v", w, "a3^-1")``."""
        out: list[Letter] = []
        for item in items:
            if isinstance(item, Word):
                out.extend(item.letters)
            elif isinstance(item, Letter):
                out.append(item)
            else:
                out.extend(cls.parse(item).letters)
        return cls(out)

    def inverse(self) -> "Word":
        return Word(l.inverse() for l in reversed(self.letters))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        return " ".join(map(str, self.letters))

    def __repr__(self):
        return f"Word({str(self)!r})"

    def names(self) -> set[str]:
        return {l.name for l in self.letters}

    def find(self, sub: "Word", start: int = 0) -> int:
        n, m = len(self.letters), len(sub.letters)
        for i in range(start, n - m + 1):
            if self.letters[i : i + m] == sub.letters:
                return i
        return -1

    def occurs_at(self, sub: "Word", position: int) -> bool:
        return 0 <= position and self.letters[position : position + len(sub)] == sub.letters

    def splice(self, position: int, length: int, replacement: "Word") -> "Word":
        return Word(self.letters[:position] + replacement.letters + self.letters[position + length :])


def free_reduce(word: Word) -> Word:
    stack: list[Letter] = []
    for l in word:
        if stack and stack[-1].name == l.name and stack[-1].exponent == -l.exponent:
            stack.pop()
        else:
            stack.append(l)
    return Word(stack)


def is_freely_trivial(word: Word) -> bool:
    return len(free_reduce(word)) == 0


def conjugate(by: Word, word: Word) -> Word:
    """by * word * by^-1, unreduced."""
    return by * word * by.inverse()


def exponent_sums(word: Word) -> dict[str, int]:
    sums: dict[str, int] = {}
    for l in word:
        sums[l.name] = sums.get(l.name, 0) + l.exponent
    return {k: v for k, v in sums.items() if v}


# macros

_X = "u2 u3 u4 u5 u1 u2 u3 u4"
_P = "u4 v u3 u4"
_Q = "u4 u5 u3 u4"
_F = "u6 w u5^-1 u6^-1"

MACRO_DEFINITIONS: dict[str, str] = {
    "x": _X,
    "w": "x v x^-1",
    "c": "x b x^-1",
    "d": f"{Word.parse(_Q).inverse()} {_P} a3 {Word.parse(_P).inverse()} {_Q}",
    "e": f"{_F} d {Word.parse(_F).inverse()}",
    "s2": "a3 u2 a3^-1",
    "s3": "a3 u3 a3^-1",
}


class MacroTable:
    """Macro name -> defining word; definitions may only use earlier macros."""

    def __init__(self, definitions: Mapping[str, str | Word]):
        table: dict[str, Word] = {}
        for name, body in definitions.items():
            w = body if isinstance(body, Word) else Word.parse(body)
            unresolved = {n for n in w.names() if n in MACRO_NAMES and n not in table}
            if unresolved or name in w.names():
                raise ValueError(f"macro {name} refers to undefined or later macros {sorted(unresolved)}")
            table[name] = w
        self._defs = table
        self._cache: dict[str, Word] = {}

    def __contains__(self, name):
        return name in self._defs

    def definition(self, name: str) -> Word:
        try:
            return self._defs[name]
        except KeyError:
            raise UnknownSymbolError(f"undefined macro {name!r}") from None

    def expansion(self, name: str) -> Word:
        if name not in self._cache:
            out: list[Letter] = []
            for l in self.definition(name):
                if l.is_macro:
                    sub = self.expansion(l.name)
                    out.extend(sub.letters if l.exponent == 1 else sub.inverse().letters)
                else:
                    out.append(l)
            self._cache[name] = Word(out)
        return self._cache[name]

    def expand(self, word: Word) -> Word:
        out: list[Letter] = []
        for l in word:
            if l.is_macro:
                sub = self.expansion(l.name)
                out.extend(sub.letters if l.exponent == 1 else sub.inverse().letters)
            else:
                out.append(l)
        return Word(out)


MACROS = MacroTable(MACRO_DEFINITIONS)


def expand_macros(word: Word | str, table: MacroTable = MACROS) -> Word:
    if isinstance(word, str):
        word = Word.parse(word)
    return table.expand(word)
