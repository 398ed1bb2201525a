"""Replayable certificates for the a_1 word, the generating set and normal generation.

A derivation is a list of elementary rewrites of a base-alphabet word. Each
step records its position, the window it removes (``before``), the window it
puts in (``after``), and its justification: a named relation instance applied
in one of four directions, or ``free`` insertion/cancellation of a freely
trivial window, plus a short digest of the whole word after the step so a
corrupted step is caught where it happens. Replay never consults the macro
table; it rebuilds the relation instances from the fixture and mapping tables
and checks every window literally.
"""

from __future__ import annotations

import dataclasses
import hashlib
import re
import time
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .catalog import (
    Assumption,
    RelationInstance,
    catalog,
    transport_instance,
    utu_instances,
)
from .errors import (
    CrosscapError,
    NotConjugateError,
    UnsupportedBoundaryError,
    UnsupportedGenusError,
    UnsupportedLetterError,
)
from .homology import evaluate
from .mappings import CurveMappingTable
from .surface import (
    FixtureTable,
    TranspositionSymbol,
    builtin_fixtures,
    canonical_transposition,
    complement_is_nonorientable,
)
from .words import MACROS, Letter, Word, is_freely_trivial

FREE = "free"
INSERT = "insert"
CANCEL = "cancel"

_FLIP = {
    "lhs->rhs": "rhs->lhs",
    "rhs->lhs": "lhs->rhs",
    "lhs->rhs^-1": "rhs->lhs^-1",
    "rhs->lhs^-1": "lhs->rhs^-1",
    INSERT: CANCEL,
    CANCEL: INSERT,
}

GENERATION_AXIOM = Assumption(
    "axiom:standard-generation",
    "M(N_{g,n}), n <= 1, is generated by a_i, u_i (1 <= i <= g-1) and b (external presentation result)",
)
NORMAL_GENERATION_AXIOM = Assumption(
    "axiom:normal-generation-a1-u1",
    "M(N_{g,n}), g >= 5, is normally generated by {a_1, u_1} (external result)",
)


@dataclass(frozen=True)
class DerivationStep:
    """One rewrite: at ``position`` the window ``before`` becomes ``after``."""

    position: int
    before: Word
    after: Word
    rule: str
    direction: str
    digest: str = ""  # of the whole word after the step; empty means unchecked

    def flipped(self) -> "DerivationStep":
        return DerivationStep(self.position, self.after, self.before, self.rule, _FLIP[self.direction])

    def shifted(self, offset: int) -> "DerivationStep":
        return DerivationStep(self.position + offset, self.before, self.after, self.rule, self.direction)

    def to_json(self) -> dict:
        return {
            "before": str(self.before),
            "after": str(self.after),
            "rule": self.rule,
            "position": self.position,
            "direction": self.direction,
            "digest": self.digest,
        }

    @classmethod
    def from_json(cls, data: dict) -> "DerivationStep":
        return cls(
            int(data["position"]),
            Word.parse(data["before"]),
            Word.parse(data["after"]),
            str(data["rule"]),
            str(data["direction"]),
            str(data.get("digest", "")),
        )


# rules


_TRANSPORT_RE = re.compile(r"Transport\((?P<label>[^:]+):(?P<symbol>\w+)->(?P<image>\w+)\)")


class Rulebook:
    """Relation instances a derivation may cite, rebuilt from the fixture and mapping tables."""

    def __init__(
        self,
        genus: int,
        fixtures: FixtureTable | None = None,
        mappings: CurveMappingTable | None = None,
    ):
        self.genus = genus
        self.fixtures = fixtures if fixtures is not None else builtin_fixtures()
        self.mappings = mappings if mappings is not None else CurveMappingTable.standard(genus)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            cat = catalog(genus, self.fixtures, self.mappings)
        self._rules = {r.name: r for r in cat}
        self._rules.update((r.name, r) for r in utu_instances(genus))

    def get(self, name: str) -> RelationInstance | None:
        if name in self._rules:
            return self._rules[name]
        m = _TRANSPORT_RE.fullmatch(name)
        if m is None:
            return None
        for entry in self.mappings:
            if entry.f_label != m["label"]:
                continue
            try:
                inst = transport_instance(entry.f, m["symbol"], self.mappings, self.genus, m["label"])
            except CrosscapError:
                return None
            if inst.name == name:
                self._rules[name] = inst
                return inst
            return None
        return None

    def __getitem__(self, name: str) -> RelationInstance:
        inst = self.get(name)
        if inst is None:
            raise KeyError(f"no relation {name!r} at genus {self.genus}")
        return inst


class StepError(Exception):
    pass


def word_digest(word: Word) -> str:
    return hashlib.sha256(str(word).encode()).hexdigest()[:16]


def replay_step(word: Word, step: DerivationStep, rules: Rulebook) -> Word:
    """Apply one step to ``word``; raise StepError if it does not replay exactly."""
    if not word.occurs_at(step.before, step.position) or step.position > len(word):
        raise StepError(f"window {step.before} not found at position {step.position}")
    if step.rule == FREE:
        if step.direction == INSERT:
            ok = len(step.before) == 0 and len(step.after) > 0 and is_freely_trivial(step.after)
        elif step.direction == CANCEL:
            ok = len(step.after) == 0 and len(step.before) > 0 and is_freely_trivial(step.before)
        else:
            ok = False
        if not ok:
            raise StepError(f"invalid free {step.direction} of {step.before!s} -> {step.after!s}")
    else:
        inst = rules.get(step.rule)
        if inst is None:
            raise StepError(f"no such relation: {step.rule}")
        try:
            src, dst = inst.sides(step.direction)
        except ValueError as exc:
            raise StepError(str(exc)) from None
        if src != step.before or dst != step.after:
            raise StepError(f"{step.rule} ({step.direction}) does not rewrite {step.before} to {step.after}")
    out = word.splice(step.position, len(step.before), step.after)
    if step.digest and word_digest(out) != step.digest:
        raise StepError("word after the step does not match the recorded digest")
    return out


class Derivation:
    """Forward builder: starts from a word and records each rewrite."""

    def __init__(self, start: Word | str, rules: Rulebook):
        self.start = Word.parse(start) if isinstance(start, str) else start
        self.word = self.start
        self.rules = rules
        self.steps: list[DerivationStep] = []

    def _push(self, step: DerivationStep) -> None:
        self.word = replay_step(self.word, step, self.rules)
        self.steps.append(step)

    def rewrite(self, rule: str, position: int, direction: str = "lhs->rhs") -> "Derivation":
        src, dst = self.rules[rule].sides(direction)
        self._push(DerivationStep(position, src, dst, rule, direction))
        return self

    def insert(self, position: int, trivial: Word | str) -> "Derivation":
        w = Word.parse(trivial) if isinstance(trivial, str) else trivial
        self._push(DerivationStep(position, Word(), w, FREE, INSERT))
        return self

    def cancel(self, position: int, length: int) -> "Derivation":
        self._push(DerivationStep(position, self.word[position : position + length], Word(), FREE, CANCEL))
        return self

    def embed(self, sub: "Derivation", position: int) -> "Derivation":
        """Run ``sub`` on the occurrence of its start word at ``position``."""
        if not self.word.occurs_at(sub.start, position):
            raise StepError(f"sub-derivation start {sub.start} not at position {position}")
        for step in sub.steps:
            self._push(step.shifted(position))
        return self

    def reversed(self) -> "Derivation":
        rev = Derivation(self.word, self.rules)
        rev.steps = [s.flipped() for s in reversed(self.steps)]
        rev.word = self.start
        return rev


def swap(a: Word, b: Word, rule: str, rules: Rulebook) -> Derivation:
    """Derivation of ``a b -> b a`` from a commutation p q = q p.

    ``a`` and ``b`` are each p or q (expanded) to the power +-1. Mixed signs go
    through a free insertion and cancellation.
    """
    inst = rules[rule]
    # sides are p q and q p
    p = MACROS.expand(inst.lhs[:1])
    q = MACROS.expand(inst.lhs[1:])
    d = Derivation(a * b, rules)

    def sign_of(x: Word) -> tuple[Word, int]:
        if x == p or x == q:
            return x, 1
        if x == p.inverse() or x == q.inverse():
            return x.inverse(), -1
        raise ValueError(f"{x} is not a side of {rule}")

    base_a, sa = sign_of(a)
    base_b, sb = sign_of(b)
    if sa == sb == 1:
        d.rewrite(rule, 0, "lhs->rhs" if base_a == p else "rhs->lhs")
    elif sa == sb == -1:
        # (q^-1 p^-1) <-> (p^-1 q^-1) are the inverted sides
        d.rewrite(rule, 0, "lhs->rhs^-1" if base_a == q else "rhs->lhs^-1")
    elif sa == -1:
        # a^-1 B -> a^-1 B a a^-1 -> a^-1 a B a^-1 -> B a^-1
        d.insert(len(a) + len(b), base_a * a)
        d.rewrite(rule, len(a), "lhs->rhs" if base_b == p else "rhs->lhs")
        d.cancel(0, 2 * len(a))
    else:
        # A b^-1 -> b^-1 b A b^-1 -> b^-1 A b b^-1 -> b^-1 A
        d.insert(0, b * base_b)
        d.rewrite(rule, len(b), "lhs->rhs" if base_b == p else "rhs->lhs")
        d.cancel(len(b) + len(a), 2 * len(b))
    return d




# building blocks

A3 = Word.parse("a3")
A3_INV = Word.parse("a3^-1")
_COMMUTES_WITH_A3 = ("u1", "u5", "u6")
_VIA_A2 = ("u4", "v")
SUPPORTED_A3_LETTERS = ("u1", "u2", "u3", "u4", "u5", "u6", "v")


def commute_rule(p: str, q: str) -> str:
    from .catalog import _letter_key

    a, b = sorted((p, q), key=_letter_key)
    return f"Commute({a},{b})"


def _as_letter(letter: Letter | str) -> Letter:
    if isinstance(letter, Letter):
        return letter
    w = Word.parse(letter)
    if len(w) != 1:
        raise UnsupportedLetterError(f"expected a single letter, got {letter!r}")
    return w[0]


def _a2_to_a3(sign: int, rules: Rulebook) -> Derivation:
    """a2^+-1 -> (u2 u3)^-1 a3^+-1 (u2 u3) via u2 u3 a2 = a3 u2 u3."""
    if sign == 1:
        d = Derivation("a2", rules)
        d.insert(0, "u3^-1 u2^-1 u2 u3")
        d.rewrite("ChainUA(2)", 2, "lhs->rhs")
    else:
        d = Derivation("a2^-1", rules)
        d.insert(1, "u3^-1 u2^-1 u2 u3")
        d.rewrite("ChainUA(2)", 0, "lhs->rhs^-1")
    return d


def a3_conjugate_expansion(letter: Letter | str, rules: Rulebook) -> tuple[Word, Derivation]:
    """Rewrite a3 l a3^-1 over {u_i, v, s2, s3}, with no a3 left in the macro word.

    u2, u3 become s2, s3 by definition; u1, u5, u6 commute with a3; u4 and v
    commute with a2 = (u2 u3)^-1 a3 (u2 u3), which gives
    a3 l a3^-1 = s3^-1 s2^-1 (u2 u3 l u3^-1 u2^-1) s2 s3.
    Returns the macro word and a derivation from ``a3 l a3^-1`` to its expansion.
    """
    l = _as_letter(letter)
    if l.name not in SUPPORTED_A3_LETTERS:
        raise UnsupportedLetterError(f"no a3-conjugate expansion for {l}")
    lw = Word([l])
    d = Derivation(A3 * lw * A3_INV, rules)
    if l.name in ("u2", "u3"):
        return Word([Letter("s" + l.name[1], l.exponent)]), d
    if l.name in _COMMUTES_WITH_A3:
        d.embed(swap(A3, lw, commute_rule("a3", l.name), rules), 0)
        d.cancel(1, 2)
        return lw, d
    # a3 l a3^-1 -> a3 a2^-1 a2 l a3^-1 -> a3 a2^-1 l a2 a3^-1
    d.insert(1, "a2^-1 a2")
    d.embed(swap(Word.parse("a2"), lw, commute_rule("a2", l.name), rules), 2)
    d.embed(_a2_to_a3(1, rules), 3)
    d.embed(_a2_to_a3(-1, rules), 1)
    # a3 u3^-1 u2^-1 a3^-1 u2 u3 l u3^-1 u2^-1 a3 u2 u3 a3^-1: split into s-letters
    d.insert(11, "a3^-1 a3")
    d.insert(2, "a3^-1 a3")
    macro = Word.of("s3^-1 s2^-1 u2 u3", lw, "u3^-1 u2^-1 s2 s3")
    return macro, d


def sandwich(inner: Word, rules: Rulebook) -> tuple[Word, Derivation]:
    """Normalize a3 Z a3^-1 = prod (a3 z a3^-1) over the letters z of Z.

    Free insertion of a3^-1 a3 between consecutive letters, then each block is
    replaced by its a3-conjugate expansion.
    """
    d = Derivation(A3 * inner * A3_INV, rules)
    k = len(inner)
    for i in range(k - 1, 0, -1):
        d.insert(1 + i, "a3^-1 a3")
    pieces = []
    for i in range(k - 1, -1, -1):
        macro, sub = a3_conjugate_expansion(inner[i], rules)
        d.embed(sub, 3 * i)
        pieces.append(macro)
    return Word.of(*reversed(pieces)), d


def swap_left(d: Derivation, position: int, block: Word, mover: Word, rule: str) -> None:
    """At ``position`` the word reads ``block mover``; make it ``mover block``."""
    d.embed(swap(block, mover, rule, d.rules), position)


X = MACROS.expansion("x")
P = Word.parse("u4 v u3 u4")
Q = Word.parse("u4 u5 u3 u4")
R = Q.inverse() * P
F = MACROS.expand(Word.parse("u6 w u5^-1 u6^-1"))


def b_substitution(rules: Rulebook) -> Derivation:
    """b -> (u4 v) a4 (u4 v)^-1 -> (u4 v u3 u4) a3 (u4 v u3 u4)^-1."""
    d = Derivation("b", rules)
    d.insert(1, "u4 v v^-1 u4^-1")
    d.rewrite("ChainUVB", 0, "rhs->lhs")
    d.insert(3, "u3 u4 u4^-1 u3^-1")
    d.rewrite("ChainUA(3)", 2, "rhs->lhs")
    return d


@dataclass
class LemmaConstruction:
    """Forward derivation a1 -> expanded word, with the macro form of the word."""

    expression: Word
    derivation: Derivation
    factors: dict[str, Word]


def _lemma_forward(rules: Rulebook) -> LemmaConstruction:
    C = MACROS.expansion("c")
    D = MACROS.expansion("d")
    E = MACROS.expansion("e")
    a5_inv = Word.parse("a5^-1")
    E_inv = E.inverse()

    d = Derivation("a1", rules)
    # a1 = (a1 a3 a5 e)(a3 a5 e)^-1 = b c d e^-1 a5^-1 a3^-1
    head = Word.of("a3 a5", E)
    d.insert(1, head * head.inverse())
    d.rewrite("Lantern", 0, "lhs->rhs")
    # b c d e^-1 a5^-1 a3^-1 -> b a3^-1 c a5^-1 d e^-1
    pos = 1 + len(C) + len(D) + len(E)
    swap_left(d, pos, a5_inv, A3_INV, commute_rule("a3", "a5"))
    pos -= len(E)
    swap_left(d, pos, E_inv, A3_INV, commute_rule("a3", "e"))
    pos -= len(D)
    swap_left(d, pos, D, A3_INV, commute_rule("a3", "d"))
    pos -= len(C)
    swap_left(d, pos, C, A3_INV, commute_rule("a3", "c"))
    pos = 2 + len(C) + len(D)
    swap_left(d, pos, E_inv, a5_inv, commute_rule("a5", "e"))
    pos -= len(D)
    swap_left(d, pos, D, a5_inv, commute_rule("a5", "d"))
    expected = Word.of("b a3^-1", C, "a5^-1", D, E_inv)
    assert d.word == expected

    # factor 1: b a3^-1 -> P a3 P^-1 a3^-1 -> P (a3 P^-1 a3^-1)
    d.embed(b_substitution(rules), 0)
    s1, sub = sandwich(P.inverse(), rules)
    d.embed(sub, len(P))
    f1 = P * s1
    pos = len(MACROS.expand(f1))

    # factor 2: c a5^-1 = x b x^-1 a5^-1 -> x b a3^-1 x^-1 -> x P (a3 P^-1 a3^-1) x^-1
    d.rewrite("Transport(x:a3->a5)", pos + len(C), "rhs->lhs^-1")
    d.cancel(pos + len(X) + 1, 2 * len(X))
    d.embed(b_substitution(rules), pos + len(X))
    s2, sub = sandwich(P.inverse(), rules)
    d.embed(sub, pos + len(X) + len(P))
    f2 = X * P * s2 * X.inverse()
    pos += len(MACROS.expand(f2))

    # factor 3: d e^-1 = R a3 R^-1 f R a3^-1 R^-1 f^-1 with d = R a3 R^-1, e = f d f^-1
    assert d.word[pos : pos + len(D) + len(E)] == Word.of(R, A3, R.inverse(), F, R, A3_INV, R.inverse(), F.inverse())
    s3, sub = sandwich(R.inverse() * F * R, rules)
    d.embed(sub, pos + len(R))
    f3 = R * s3 * R.inverse() * F.inverse()

    expression = f1 * f2 * f3
    assert d.word == MACROS.expand(expression)
    return LemmaConstruction(expression, d, {"b a3^-1": f1, "c a5^-1": f2, "d e^-1": f3})


def lemma_alphabet() -> tuple[str, ...]:
    return tuple(f"u{i}" for i in range(1, 7)) + ("v", "s2", "s3")


def theorem_alphabet(genus: int) -> tuple[str, ...]:
    return tuple(f"u{i}" for i in range(1, genus)) + ("v", "s2", "s3")


# certificates


@dataclass
class Certificate:
    """``expression`` equals ``target`` relative to the listed assumptions.

    ``steps`` rewrite ``expression_base`` (the macro-free form of
    ``expression``) into ``target``.
    """

    kind: str
    target: Word
    expression: Word
    expression_base: Word
    alphabet: tuple[str, ...]
    steps: tuple[DerivationStep, ...]
    assumptions: tuple[Assumption, ...]
    genus: int
    boundary: int = 0

    @property
    def lengths(self) -> dict[str, int]:
        return {
            "expression": len(self.expression),
            "expression_base": len(self.expression_base),
            "steps": len(self.steps),
        }

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "alphabet": list(self.alphabet),
            "expression": [str(l) for l in self.expression],
            "expression_base": [str(l) for l in self.expression_base],
            "steps": [s.to_json() for s in self.steps],
            "assumptions": [{"tag": a.tag, "anchor": a.anchor} for a in self.assumptions],
            "meta": {"kind": self.kind, "genus": self.genus, "boundary": self.boundary, "lengths": self.lengths},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        meta = data.get("meta", {})
        return cls(
            kind=meta.get("kind", "certificate"),
            target=Word.parse(data["target"]),
            expression=Word.parse(" ".join(data["expression"])),
            expression_base=Word.parse(" ".join(data.get("expression_base", data["expression"]))),
            alphabet=tuple(data["alphabet"]),
            steps=tuple(DerivationStep.from_json(s) for s in data["steps"]),
            assumptions=tuple(Assumption(a["tag"], a["anchor"]) for a in data["assumptions"]),
            genus=int(meta["genus"]),
            boundary=int(meta.get("boundary", 0)),
        )


@dataclass
class Verdict:
    accepted: bool
    failed_step: int | None = None
    reason: str = ""
    consumed: Counter = field(default_factory=Counter)
    anchors: dict[str, str] = field(default_factory=dict)

    def __str__(self):
        if self.accepted:
            return "accepted"
        where = f" at step {self.failed_step}" if self.failed_step is not None else ""
        return f"rejected{where}: {self.reason}"


def check_derivation(cert: Certificate, rules: Rulebook | None = None) -> Verdict:
    """Replay every step; accepted iff all steps replay and the endpoints match.

    The verdict carries the multiset of assumptions consumed by the cited relations.
    """
    rules = rules if rules is not None else Rulebook(cert.genus)
    consumed: Counter = Counter()
    anchors: dict[str, str] = {}
    word = cert.expression_base
    for i, step in enumerate(cert.steps):
        try:
            word = replay_step(word, step, rules)
        except StepError as exc:
            return Verdict(False, i, str(exc), consumed, anchors)
        if step.rule != FREE:
            for a in rules[step.rule].assumptions:
                consumed[a.tag] += 1
                anchors[a.tag] = a.anchor
    if word != cert.target:
        return Verdict(False, len(cert.steps), f"derivation ends at {word}, not {cert.target}", consumed, anchors)
    return Verdict(True, None, "", consumed, anchors)


def _assumptions_of(steps: Iterable[DerivationStep], rules: Rulebook) -> tuple[Assumption, ...]:
    seen: dict[str, Assumption] = {}
    for s in steps:
        if s.rule != FREE:
            for a in rules[s.rule].assumptions:
                seen.setdefault(a.tag, a)
    return tuple(sorted(seen.values()))


def _certificate(kind, target, expression, forward: Derivation, alphabet, genus, boundary=0, axioms=()) -> Certificate:
    back = forward.reversed()
    assert back.start == MACROS.expand(expression)
    word, steps = back.start, []
    for s in back.steps:
        word = word.splice(s.position, len(s.before), s.after)
        steps.append(dataclasses.replace(s, digest=word_digest(word)))
    return Certificate(
        kind,
        Word.parse(target) if isinstance(target, str) else target,
        expression,
        back.start,
        tuple(alphabet),
        tuple(steps),
        _assumptions_of(back.steps, forward.rules) + tuple(axioms),
        genus,
        boundary,
    )


def _require_genus(genus: int) -> None:
    if genus < 7:
        raise UnsupportedGenusError(f"construction needs genus >= 7, got {genus}")


def build_lemma_a1(genus: int = 7, rules: Rulebook | None = None) -> Certificate:
    """a1 as a word in u1..u6, v, s2 = a3 u2 a3^-1, s3 = a3 u3 a3^-1."""
    _require_genus(genus)
    rules = rules or Rulebook(genus)
    con = _lemma_forward(rules)
    return _certificate("lemma-a1", "a1", con.expression, con.derivation, lemma_alphabet(), genus)


def lemma_construction(genus: int = 7) -> LemmaConstruction:
    _require_genus(genus)
    return _lemma_forward(Rulebook(genus))


def _chain_conjugator(k: int) -> Word:
    """(u_{k-1} u_k)(u_{k-2} u_{k-1})...(u_1 u_2); empty for k = 1."""
    return Word.of(*[f"u{i} u{i + 1}" for i in range(k - 1, 0, -1)])


def _a_k_forward(k: int, lemma: LemmaConstruction, rules: Rulebook) -> tuple[Word, Derivation]:
    """a_k -> C a1 C^-1 -> C (lemma word) C^-1 with C = _chain_conjugator(k)."""
    d = Derivation(f"a{k}", rules)
    pos = 0
    for j in range(k, 1, -1):
        # a_j -> (u_{j-1} u_j) a_{j-1} (u_{j-1} u_j)^-1
        d.insert(pos + 1, f"u{j - 1} u{j} u{j}^-1 u{j - 1}^-1")
        d.rewrite(f"ChainUA({j - 1})", pos, "rhs->lhs")
        pos += 2
    d.embed(lemma.derivation, pos)
    c = _chain_conjugator(k)
    return c * lemma.expression * c.inverse(), d


@dataclass
class GeneratingSetBundle:
    genus: int
    boundary: int
    certificates: dict[str, Certificate]
    assumptions: tuple[Assumption, ...] = (GENERATION_AXIOM,)

    def to_json(self) -> dict:
        return {
            "kind": "theorem2",
            "genus": self.genus,
            "boundary": self.boundary,
            "alphabet": list(theorem_alphabet(self.genus)),
            "assumptions": [{"tag": a.tag, "anchor": a.anchor} for a in self.assumptions],
            "certificates": {k: c.to_json() for k, c in self.certificates.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "GeneratingSetBundle":
        return cls(
            int(data["genus"]),
            int(data["boundary"]),
            {k: Certificate.from_json(v) for k, v in data["certificates"].items()},
            tuple(Assumption(a["tag"], a["anchor"]) for a in data["assumptions"]),
        )


def standard_generators(genus: int) -> list[str]:
    return [f"a{i}" for i in range(1, genus)] + ["b"] + [f"u{i}" for i in range(1, genus)]


def build_theorem_main2(genus: int = 7, boundary: int = 0, rules: Rulebook | None = None) -> GeneratingSetBundle:
    """Certificates expressing every standard generator over {u_i, v, s2, s3}."""
    _require_genus(genus)
    if boundary not in (0, 1):
        raise UnsupportedBoundaryError(f"generating set is certified for 0 or 1 boundary components, got {boundary}")
    rules = rules or Rulebook(genus)
    lemma = _lemma_forward(rules)
    alphabet = theorem_alphabet(genus)
    certs: dict[str, Certificate] = {}
    for k in range(1, genus):
        expr, fwd = _a_k_forward(k, lemma, rules)
        certs[f"a{k}"] = _certificate("generator", f"a{k}", expr, fwd, alphabet, genus, boundary)
    # b = (u4 v) a4 (u4 v)^-1
    d = Derivation("b", rules)
    d.insert(1, "u4 v v^-1 u4^-1")
    d.rewrite("ChainUVB", 0, "rhs->lhs")
    expr4, fwd4 = _a_k_forward(4, lemma, rules)
    d.embed(fwd4, 2)
    uv = Word.parse("u4 v")
    certs["b"] = _certificate("generator", "b", uv * expr4 * uv.inverse(), d, alphabet, genus, boundary)
    for i in range(1, genus):
        certs[f"u{i}"] = _certificate("generator", f"u{i}", Word.parse(f"u{i}"), Derivation(f"u{i}", rules), alphabet, genus, boundary)
    return GeneratingSetBundle(genus, boundary, certs)


# conjugacy witnesses and normal generation


@dataclass(frozen=True)
class ConjugacyWitness:
    source: str
    target: str
    conjugator: Word


def require_same_class(t1: TranspositionSymbol, t2: TranspositionSymbol, genus: int) -> None:
    """Conjugate transpositions have complements of the same orientability."""
    if complement_is_nonorientable(t1, genus) != complement_is_nonorientable(t2, genus):
        raise NotConjugateError(
            f"{t1.label or t1.twist_curve} and {t2.label or t2.twist_curve} have complements"
            f" of different orientability at genus {genus}"
        )


def conjugacy_witness(target: str, genus: int = 7, base: str = "u1") -> ConjugacyWitness:
    """Conjugator c with c u1 c^-1 = target, for target in u2..u_{g-1}, v, s2, s3."""
    if base != "u1":
        raise UnsupportedLetterError("witnesses are built relative to u1")
    require_same_class(canonical_transposition(target, genus), canonical_transposition("u1", genus), genus)
    if target.startswith("u"):
        c = _chain_conjugator(int(target[1:]))
    elif target == "v":
        c = Word.parse("u4 v") * _chain_conjugator(4)
    elif target in ("s2", "s3"):
        c = A3 * _chain_conjugator(int(target[1]))
    else:
        raise UnsupportedLetterError(f"no witness for {target}")
    return ConjugacyWitness("u1", target, c)


def _witness_forward(target: str, sign: int, rules: Rulebook) -> Derivation:
    """c u1^sign c^-1 -> target^sign (target expanded for s2, s3)."""
    c = conjugacy_witness(target, rules.genus).conjugator
    u1 = Word([Letter("u1", sign)])
    d = Derivation(c * u1 * c.inverse(), rules)
    if target == "u1":
        return d
    if target in ("s2", "s3"):
        d.embed(_witness_forward("u" + target[1], sign, rules), 1)
        return d
    if target == "v":
        d.embed(_witness_forward("u4", sign, rules), 2)
        relation = "BraidUV"
        pair = ("u4", "v")
    else:
        k = int(target[1:])
        d.embed(_witness_forward(f"u{k - 1}", sign, rules), 2)
        relation = f"BraidU({k - 1})"
        pair = (f"u{k - 1}", f"u{k}")
    # x y x^s y^-1 x^-1 -> y^s
    if sign == 1:
        d.rewrite(relation, 0, "lhs->rhs")  # x y x -> y x y
        d.cancel(1, 4)
    else:
        d.rewrite(relation, 2, "lhs->rhs^-1")  # x^-1 y^-1 x^-1 -> y^-1 x^-1 y^-1
        d.cancel(0, 4)
    assert len(d.word) == 1 and d.word[0] == Letter(pair[1], sign)
    return d


@dataclass
class NormalGenerationCertificate:
    """a1 as a product of conjugates c u1^+-1 c^-1, with a replayable derivation."""

    base: str
    factorizations: dict[str, list[tuple[Word, int]]]
    certificate: Certificate

    @property
    def factor_count(self) -> int:
        return sum(len(v) for v in self.factorizations.values())

    def to_json(self) -> dict:
        out = self.certificate.to_json()
        out["base"] = self.base
        out["factors"] = {
            t: [{"conjugator": str(c), "exponent": e} for c, e in fs] for t, fs in self.factorizations.items()
        }
        return out

    @classmethod
    def from_json(cls, data: dict) -> "NormalGenerationCertificate":
        return cls(
            data["base"],
            {t: [(Word.parse(f["conjugator"]), int(f["exponent"])) for f in fs] for t, fs in data["factors"].items()},
            Certificate.from_json(data),
        )


def build_normal_generation(genus: int = 7, rules: Rulebook | None = None) -> NormalGenerationCertificate:
    _require_genus(genus)
    rules = rules or Rulebook(genus)
    lemma = _lemma_forward(rules)
    factors: list[tuple[Word, int]] = []
    pieces: list[Word] = []
    for l in lemma.expression:
        c = conjugacy_witness(l.name, genus).conjugator
        factors.append((c, l.exponent))
        pieces.append(c * Word([Letter("u1", l.exponent)]) * c.inverse())
    product = Word.of(*pieces)
    # forward: a1 -> lemma word (expanded) -> product of conjugates
    d = Derivation("a1", rules)
    d.embed(lemma.derivation, 0)
    pos = 0
    for l, piece in zip(lemma.expression, pieces):
        w = _witness_forward(l.name, l.exponent, rules).reversed()
        d.embed(w, pos)
        pos += len(piece)
    assert d.word == product
    alphabet = tuple(sorted(product.names()))
    cert = _certificate("normal-gen", "a1", product, d, alphabet, genus, axioms=(NORMAL_GENERATION_AXIOM,))
    return NormalGenerationCertificate("u1", {"a1": factors}, cert)


# verification


def _report(cert: Certificate, verdict: Verdict, problems: list[str], elapsed: float, genus: int) -> dict:
    declared = {a.tag: a.anchor for a in cert.assumptions}
    return {
        "kind": cert.kind,
        "target": str(cert.target),
        "verdict": "accepted" if verdict.accepted and not problems else "rejected",
        "failed_step": verdict.failed_step,
        "problems": ([str(verdict)] if not verdict.accepted else []) + problems,
        "assumptions": [{"tag": t, "anchor": declared.get(t, verdict.anchors.get(t, ""))} for t in sorted(set(declared) | set(verdict.consumed))],
        "consumed": dict(sorted(verdict.consumed.items())),
        "lengths": cert.lengths,
        "genus": genus,
        "elapsed_seconds": round(elapsed, 6),
    }


def verify_certificate(
    cert: Certificate,
    rules: Rulebook | None = None,
    alphabet: Sequence[str] | None = None,
    genus: int | None = None,
) -> dict:
    """Replay, check the homology shadow, the alphabet and the assumption list.

    ``alphabet`` overrides the declared alphabet the expression is held to;
    ``genus`` replays at a different genus than the one recorded.
    """
    t0 = time.perf_counter()
    genus = genus or cert.genus
    rules = rules or Rulebook(genus)
    verdict = check_derivation(cert, rules)
    problems: list[str] = []
    allowed = set(alphabet if alphabet is not None else cert.alphabet)
    stray = sorted(cert.expression.names() - allowed)
    if stray:
        problems.append(f"letters outside the declared alphabet: {stray}")
    try:
        if MACROS.expand(cert.expression) != cert.expression_base:
            problems.append("expression_base is not the expansion of expression")
        if evaluate(cert.expression, genus) != evaluate(cert.target, genus):
            problems.append("homology shadow of expression differs from the target")
    except CrosscapError as exc:
        problems.append(str(exc))
    declared = {a.tag for a in cert.assumptions}
    undeclared = sorted(set(verdict.consumed) - declared)
    if verdict.accepted and undeclared:
        problems.append(f"undeclared assumptions: {undeclared}")
    unused = sorted(t for t in declared - set(verdict.consumed) if not t.startswith("axiom:"))
    if verdict.accepted and unused:
        problems.append(f"declared but unused assumptions: {unused}")
    return _report(cert, verdict, problems, time.perf_counter() - t0, genus)


def is_conjugate_factor(word: Word, conjugator: Word, base: str, exponent: int) -> bool:
    return word == conjugator * Word([Letter(base, exponent)]) * conjugator.inverse()


def verify_normal_generation(ng: NormalGenerationCertificate, rules: Rulebook | None = None) -> dict:
    report = verify_certificate(ng.certificate, rules)
    problems = report["problems"]
    pieces = []
    for target, factors in ng.factorizations.items():
        if Word.parse(target) != ng.certificate.target:
            problems.append(f"factorization target {target} is not the certificate target")
        for c, e in factors:
            if e not in (1, -1):
                problems.append(f"factor exponent {e} is not +-1")
                continue
            pieces.append(c * Word([Letter(ng.base, e)]) * c.inverse())
    if Word.of(*pieces) != ng.certificate.expression:
        problems.append("expression is not the concatenation of the conjugate factors")
    if NORMAL_GENERATION_AXIOM.tag not in {a.tag for a in ng.certificate.assumptions}:
        problems.append("normal generation axiom for {a1, u1} is not listed")
    report["factors"] = ng.factor_count
    report["verdict"] = "accepted" if not problems else "rejected"
    return report


def verify_bundle(bundle: GeneratingSetBundle, rules: Rulebook | None = None) -> dict:
    rules = rules or Rulebook(bundle.genus)
    alphabet = theorem_alphabet(bundle.genus)
    reports = {name: verify_certificate(c, rules, alphabet) for name, c in bundle.certificates.items()}
    problems = []
    missing = [g for g in standard_generators(bundle.genus) if g not in bundle.certificates]
    if missing:
        problems.append(f"missing generators: {missing}")
    for name, c in bundle.certificates.items():
        if str(c.target) != name:
            problems.append(f"certificate {name} has target {c.target}")
    if bundle.boundary not in (0, 1):
        problems.append(f"boundary {bundle.boundary} outside {{0, 1}}")
    axiom_count = sum(a.tag == GENERATION_AXIOM.tag for a in bundle.assumptions)
    if axiom_count != 1:
        problems.append(f"generation axiom listed {axiom_count} times")
    rejected = [n for n, r in reports.items() if r["verdict"] != "accepted"]
    if rejected:
        problems.append(f"rejected certificates: {rejected}")
    return {
        "kind": "theorem2",
        "genus": bundle.genus,
        "boundary": bundle.boundary,
        "verdict": "accepted" if not problems else "rejected",
        "problems": problems,
        "assumptions": [{"tag": a.tag, "anchor": a.anchor} for a in bundle.assumptions],
        "certificates": reports,
    }


def load_any(data: dict):
    """Certificate, bundle or normal-generation certificate from its JSON form."""
    if data.get("kind") == "theorem2":
        return GeneratingSetBundle.from_json(data)
    if "factors" in data:
        return NormalGenerationCertificate.from_json(data)
    return Certificate.from_json(data)


def verify_any(obj, rules: Rulebook | None = None) -> dict:
    if isinstance(obj, GeneratingSetBundle):
        return verify_bundle(obj, rules)
    if isinstance(obj, NormalGenerationCertificate):
        return verify_normal_generation(obj, rules)
    return verify_certificate(obj, rules)
