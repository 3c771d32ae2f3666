"""The free associative algebra on the letters 1..d.

A word is a tuple of integer letters; the empty tuple is the empty word e.
A :class:`Tensor` is a finite formal linear combination of words with
MultiPoly coefficients, i.e. a general (not necessarily homogeneous) element
of the tensor algebra. Products are the concatenation product, the shuffle
product, and the half shuffle, extended bilinearly from words.

Word-level shuffles are memoized; the cached dictionaries are shared and must
never be mutated by callers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .algebra import (
    RATIONALS,
    MultiPoly,
    ParseError,
    RingMismatchError,
    VariableTable,
    _PolyParser,
    tokenize,
)

Word = tuple[int, ...]

EMPTY_WORD: Word = ()


def as_word(letters: Iterable[int]) -> Word:
    word = tuple(int(i) for i in letters)
    if any(i < 1 for i in word):
        raise ValueError(f"letters must be positive integers: {word}")
    return word


def word_text(word: Word, compact: bool = False) -> str:
    """Bracket-array notation, e.g. [1, 2, 3] (or [1,2,3] when compact)."""
    sep = "," if compact else ", "
    return "[" + sep.join(str(i) for i in word) + "]"


class Tensor:
    """A formal linear combination of words with MultiPoly coefficients."""

    __slots__ = ("alphabet", "table", "terms")

    def __init__(self, alphabet: int, table: VariableTable, terms: dict):
        if alphabet < 1:
            raise ValueError("alphabet size must be positive")
        clean: dict[Word, MultiPoly] = {}
        for word, coeff in terms.items():
            word = as_word(word)
            if word and max(word) > alphabet:
                raise ValueError(f"letter out of range in {word} (alphabet {alphabet})")
            if isinstance(coeff, (int, Fraction)):
                coeff = MultiPoly.const(table, coeff)
            elif coeff.table != table:
                raise RingMismatchError("coefficient table differs from tensor table")
            if not coeff.is_zero():
                clean[word] = coeff
        self.alphabet = alphabet
        self.table = table
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(alphabet: int, table: VariableTable = RATIONALS) -> Tensor:
        return Tensor(alphabet, table, {})

    @staticmethod
    def word(letters: Iterable[int], alphabet: int, table: VariableTable = RATIONALS, coeff=1) -> Tensor:
        return Tensor(alphabet, table, {as_word(letters): coeff})

    @staticmethod
    def unit(alphabet: int, table: VariableTable = RATIONALS) -> Tensor:
        """The empty word with coefficient 1: the concatenation identity."""
        return Tensor(alphabet, table, {EMPTY_WORD: 1})

    # -- inspection ----------------------------------------------------------

    def coefficient(self, word: Iterable[int]) -> MultiPoly:
        return self.terms.get(as_word(word), MultiPoly.zero(self.table))

    def is_zero(self) -> bool:
        return not self.terms

    def levels(self) -> set[int]:
        return {len(w) for w in self.terms}

    def max_level(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.levels()) <= 1

    def level(self, k: int) -> Tensor:
        """Projection onto words of length exactly k."""
        return Tensor(
            self.alphabet, self.table, {w: c for w, c in self.terms.items() if len(w) == k}
        )

    def has_constant_coefficients(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def cast(self, table: VariableTable) -> Tensor:
        return Tensor(self.alphabet, table, {w: c.cast(table) for w, c in self.terms.items()})

    # -- linear structure ------------------------------------------------------

    def _check(self, other: Tensor):
        if self.alphabet != other.alphabet:
            raise RingMismatchError(
                f"tensors over different alphabets ({self.alphabet} vs {other.alphabet})"
            )
        if self.table != other.table:
            raise RingMismatchError("tensors over different coefficient tables")

    def __add__(self, other: Tensor) -> Tensor:
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return Tensor(self.alphabet, self.table, out)

    def __sub__(self, other: Tensor) -> Tensor:
        self._check(other)
        return self + (-other)

    def __neg__(self) -> Tensor:
        return Tensor(self.alphabet, self.table, {w: -c for w, c in self.terms.items()})

    def scale(self, factor) -> Tensor:
        """Multiply every coefficient by a scalar or MultiPoly factor."""
        if isinstance(factor, (int, Fraction)):
            factor = MultiPoly.const(self.table, factor)
        return Tensor(self.alphabet, self.table, {w: c * factor for w, c in self.terms.items()})

    def __mul__(self, factor) -> Tensor:
        if isinstance(factor, (int, Fraction, MultiPoly)):
            return self.scale(factor)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.table == other.table
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.alphabet, self.table, frozenset((w, hash(c)) for w, c in self.terms.items())))

    def sorted_words(self) -> list[Word]:
        """Words by descending (length, lexicographic) order, as printed."""
        return sorted(self.terms, key=lambda w: (len(w), w), reverse=True)

    def __str__(self) -> str:
        return format_tensor(self)

    def __repr__(self) -> str:
        return f"Tensor({format_tensor(self)})"


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def concat_product(a: Tensor, b: Tensor, max_level: int | None = None) -> Tensor:
    """Bilinear extension of word concatenation.

    With ``max_level`` set, words longer than the bound are discarded; this is
    the truncation used when folding segment signatures.
    """
    a._check(b)
    out: dict[Word, MultiPoly] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            if max_level is not None and len(wa) + len(wb) > max_level:
                continue
            w = wa + wb
            prod = ca * cb
            out[w] = out[w] + prod if w in out else prod
    return Tensor(a.alphabet, a.table, out)


@lru_cache(maxsize=None)
def shuffle_words(u: Word, v: Word) -> dict:
    """Shuffle of two words as a word -> integer-multiplicity map.

    Cached and shared: callers must treat the result as read-only.
    """
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict[Word, int] = {}
    for w, c in shuffle_words(u[:-1], v).items():
        w = w + (u[-1],)
        out[w] = out.get(w, 0) + c
    for w, c in shuffle_words(u, v[:-1]).items():
        w = w + (v[-1],)
        out[w] = out.get(w, 0) + c
    return out


def shuffle(a: Tensor, b: Tensor) -> Tensor:
    """The shuffle product, extended bilinearly from words."""
    a._check(b)
    out: dict[Word, MultiPoly] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            prod = ca * cb
            for w, mult in shuffle_words(wa, wb).items():
                inc = prod * mult
                out[w] = out[w] + inc if w in out else inc
    return Tensor(a.alphabet, a.table, out)


def shuffle_word_dicts(a: dict, b: dict) -> dict:
    """Shuffle two word -> rational-coefficient maps; zero terms pruned."""
    out: dict[Word, Fraction] = {}
    for u, cu in a.items():
        for v, cv in b.items():
            scale = cu * cv
            for w, mult in shuffle_words(u, v).items():
                out[w] = out.get(w, 0) + scale * mult
    return {w: c for w, c in out.items() if c != 0}


def half_shuffle_words(u: Word, v: Word) -> dict:
    """Half shuffle u > v of nonempty words: (u shuffled with v minus its
    last letter), with that letter appended."""
    if not u or not v:
        raise ValueError("half shuffle is undefined on the empty word")
    last = v[-1]
    return {w + (last,): c for w, c in shuffle_words(u, v[:-1]).items()}


def half_shuffle(a: Tensor, b: Tensor) -> Tensor:
    """The half-shuffle product; both arguments must avoid the empty word."""
    a._check(b)
    if EMPTY_WORD in a.terms or EMPTY_WORD in b.terms:
        raise ValueError("half shuffle is undefined on the empty word")
    out: dict[Word, MultiPoly] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            prod = ca * cb
            for w, mult in half_shuffle_words(wa, wb).items():
                inc = prod * mult
                out[w] = out[w] + inc if w in out else inc
    return Tensor(a.alphabet, a.table, out)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def format_tensor(t: Tensor) -> str:
    """Render as "c_1 [w_1] + c_2 [w_2] + ...".

    Words are ordered by descending (length, lexicographic) order. Unit
    coefficients are omitted on nonempty words; the empty word prints as
    "c []"; the zero tensor prints as "0". Multi-term coefficients are
    parenthesized so the text re-parses unambiguously.
    """
    if not t.terms:
        return "0"
    pieces = []
    for word in t.sorted_words():
        coeff = t.terms[word]
        sign = "+"
        if len(coeff.terms) == 1:
            mono, value = next(iter(coeff.terms.items()))
            if value < 0:
                sign = "-"
                coeff = -coeff
            body = str(coeff)
            if body == "1" and word:
                body = ""
        else:
            body = f"({coeff})"
        word_part = word_text(word)
        text = f"{body} {word_part}".strip()
        pieces.append((sign, text))
    sign, text = pieces[0]
    result = text if sign == "+" else f"-{text}"
    for sign, text in pieces[1:]:
        result += f" {sign} {text}"
    return result


def parse_tensor(text: str, alphabet: int, table: VariableTable = RATIONALS) -> Tensor:
    """Parse bracket-array tensor text; inverse of :func:`format_tensor`.

    Grammar: ``tensor := term (('+'|'-') term)* | '0'`` where each term is an
    optional coefficient (rational or polynomial text over the table) followed
    by a bracketed word. Whitespace-insensitive.
    """
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty tensor text", 0)
    if len(tokens) == 1 and tokens[0][:2] == ("int", "0"):
        return Tensor.zero(alphabet, table)

    # split into top-level terms at +/- outside parentheses
    groups: list[tuple[int, list]] = []
    current: list = []
    sign = 1
    depth = 0
    for tok in tokens:
        kind, value, pos = tok
        if kind == "sym" and value == "(":
            depth += 1
        elif kind == "sym" and value == ")":
            depth -= 1
        if kind == "sym" and value in "+-" and depth == 0:
            if current:
                groups.append((sign, current))
                current = []
                sign = 1 if value == "+" else -1
            else:
                sign = sign * (1 if value == "+" else -1)
            continue
        current.append(tok)
    if current:
        groups.append((sign, current))

    terms: dict[Word, MultiPoly] = {}
    for sign, toks in groups:
        bracket = next(
            (i for i, (k, v, _) in enumerate(toks) if k == "sym" and v == "["), None
        )
        if bracket is None:
            raise ParseError("tensor term without a bracketed word", toks[0][2])
        coeff_tokens = toks[:bracket]
        word_tokens = toks[bracket:]
        if coeff_tokens:
            parser = _PolyParser(coeff_tokens, table.names)
            coeff = MultiPoly(table, parser.parse_expr())
            if parser.i != len(coeff_tokens):
                raise ParseError("malformed coefficient", coeff_tokens[parser.i][2])
        else:
            coeff = MultiPoly.const(table, 1)
        word = _parse_word_tokens(word_tokens)
        if word and max(word) > alphabet:
            raise ParseError(f"letter out of range in {word_text(word)}", word_tokens[0][2])
        coeff = coeff if sign > 0 else -coeff
        terms[word] = terms[word] + coeff if word in terms else coeff
    return Tensor(alphabet, table, terms)


def _parse_word_tokens(tokens) -> Word:
    kind, value, pos = tokens[0]
    if not (kind == "sym" and value == "["):
        raise ParseError("expected '['", pos)
    if tokens[-1][:2] != ("sym", "]"):
        raise ParseError("expected ']'", tokens[-1][2])
    inner = tokens[1:-1]
    if not inner:
        return EMPTY_WORD
    letters = []
    expect_int = True
    for kind, value, pos in inner:
        if expect_int:
            if kind != "int":
                raise ParseError("expected a letter", pos)
            letters.append(int(value))
        else:
            if not (kind == "sym" and value == ","):
                raise ParseError("expected ','", pos)
        expect_int = not expect_int
    if expect_int:
        raise ParseError("trailing ',' in word", inner[-1][2])
    if any(i < 1 for i in letters):
        raise ParseError("letters must be >= 1", inner[0][2])
    return tuple(letters)


def parse_word(text: str) -> Word:
    """Parse a single bracketed word literal like "[1,2,3]"."""
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty word text", 0)
    return _parse_word_tokens(tokens)


def tensor_to_json(t: Tensor) -> dict:
    return {
        "alphabet": t.alphabet,
        "variables": list(t.table.names),
        "terms": [
            {"word": list(w), "coefficient": str(t.terms[w])} for w in t.sorted_words()
        ],
    }


def tensor_from_json(data: dict) -> Tensor:
    from .algebra import parse_poly

    table = VariableTable(tuple(data.get("variables", ())))
    terms: dict[Word, MultiPoly] = {}
    for item in data["terms"]:
        w = tuple(int(i) for i in item["word"])
        coeff = parse_poly(item["coefficient"], table)
        terms[w] = terms[w] + coeff if w in terms else coeff
    return Tensor(int(data["alphabet"]), table, terms)
