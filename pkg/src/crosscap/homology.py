"""Z/2-homology shadow of words.

Twists and transpositions about a two-sided curve c act on H_1(N; Z/2) as the
transvection x -> x + <x,[c]>[c]; crosscap slides act trivially. Words compose
rightmost-first: ``evaluate("f g")`` applies g, then f.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InvalidTwistError, UnknownSymbolError
from .gf2 import F2Matrix, F2Vector
from .surface import CurveSymbol, gamma, homology_class
from .words import MACROS, Letter, MacroTable, Word, max_index_needed

BETA = gamma(1, 2, 3, 4)


def transvection(curve: CurveSymbol, genus: int) -> F2Matrix:
    if not curve.two_sided:
        raise InvalidTwistError(f"cannot twist about one-sided curve {curve}")
    c = homology_class(curve.indices, genus)
    # column j is e_j + <e_j, c> c
    cols = []
    for j in range(1, genus + 1):
        e = F2Vector.from_support([j], genus)
        cols.append(e + c if c.bits >> (j - 1) & 1 else e)
    return F2Matrix.from_columns(cols)


def twist_curve(name: str) -> CurveSymbol | None:
    """Curve whose transvection represents a base generator; None for slides."""
    if name in ("b", "v"):
        return BETA
    if name == "yv" or name.startswith("y"):
        return None
    i = Letter(name).index
    return gamma(i, i + 1)


@lru_cache(maxsize=None)
def _base_rep(name: str, genus: int) -> F2Matrix:
    if max_index_needed(name) > genus:
        raise UnknownSymbolError(f"generator {name} does not exist at genus {genus}")
    curve = twist_curve(name)
    if curve is None:
        return F2Matrix.identity(genus)
    return transvection(curve, genus)


def rep(name: str, genus: int, macros: MacroTable = MACROS) -> F2Matrix:
    """Matrix of a generator or macro letter (macros are expanded first)."""
    letter = Letter(name)
    if letter.is_macro:
        return evaluate(macros.expansion(name), genus)
    return _base_rep(name, genus)


def evaluate(word: Word | str, genus: int, macros: MacroTable = MACROS) -> F2Matrix:
    """Product of letter matrices, rightmost letter acting first.

    Inverse letters reuse the letter's matrix: every base matrix is an involution.
    """
    if isinstance(word, str):
        word = Word.parse(word)
    word = macros.expand(word)
    m = F2Matrix.identity(genus)
    for l in word:
        m = m @ _base_rep(l.name, genus)
    return m


def preserves_form(m: F2Matrix) -> bool:
    """M^T M = I, i.e. M lies in the orthogonal group of the diagonal form."""
    return (m.transpose() @ m).is_identity()


def apply_to_curve(word: Word | str, curve: CurveSymbol, genus: int) -> F2Vector:
    return evaluate(word, genus).apply(homology_class(curve.indices, genus))


def check_mapping_claim(f: Word | str, source: CurveSymbol, target: CurveSymbol, genus: int) -> bool:
    """Homology-consistency of the claim f(source) = target (necessary condition only)."""
    return apply_to_curve(f, source, genus) == homology_class(target.indices, genus)
