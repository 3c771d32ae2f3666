"""Signature tensors of piecewise polynomial paths.

Per-segment signatures come from the running-integral recursion: S_e(t) = 1
and S_(w.i)(t) is the integral from 0 to t of S_w * X_i'. Multi-segment
signatures are assembled with Chen's identity, folding the truncated
concatenation product of the segment series left to right. Everything is
exact.

The module also provides the core tensors of the canonical axis and monomial
paths, the truncated tensor exponential, the diagonal matrix action on
tensors, and the half-shuffle adjoint machinery for polynomial path
transformations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import factorial

from .algebra import (
    RATIONALS,
    DenseMatrix,
    MultiPoly,
    RingMismatchError,
    UniPoly,
    VariableTable,
    parse_poly,
    substitute,
)
from .paths import Path, PathSegment, poly_path, pw_lin_path
from .words import (
    EMPTY_WORD,
    Tensor,
    Word,
    as_word,
    concat_product,
    half_shuffle,
    shuffle_word_dicts,
)


# ---------------------------------------------------------------------------
# Segment signatures
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _segment_derivatives(segment: PathSegment) -> tuple[UniPoly, ...]:
    return tuple(c.derivative() for c in segment.coordinates)


@lru_cache(maxsize=None)
def _running_integral(segment: PathSegment, word: Word) -> UniPoly:
    """S_w(t) for the given segment: one integration per letter, sharing
    prefixes through the cache."""
    if not word:
        return UniPoly.const(segment.table, 1)
    prefix, last = word[:-1], word[-1]
    derivative = _segment_derivatives(segment)[last - 1]
    return (_running_integral(segment, prefix) * derivative).integrate()


@lru_cache(maxsize=None)
def _segment_value(segment: PathSegment, word: Word) -> MultiPoly:
    return _running_integral(segment, word).eval_at_one()


def segment_sig_word(segment: PathSegment, word) -> MultiPoly:
    """The iterated integral of one segment against one word."""
    w = as_word(word)
    if w and max(w) > segment.dimension:
        raise ValueError(f"letter out of range in {w} (dimension {segment.dimension})")
    return _segment_value(segment, w)


@lru_cache(maxsize=None)
def _segment_series(segment: PathSegment, k: int) -> Tensor:
    """All levels 0..k of one segment's signature, as a single tensor.

    Walks the word trie breadth-first; branches whose running integral is
    identically zero are pruned, which keeps axis-path segments cheap.
    """
    table = segment.table
    d = segment.dimension
    derivatives = _segment_derivatives(segment)
    terms: dict[Word, MultiPoly] = {EMPTY_WORD: MultiPoly.const(table, 1)}
    frontier: dict[Word, UniPoly] = {EMPTY_WORD: UniPoly.const(table, 1)}
    for _ in range(k):
        nxt: dict[Word, UniPoly] = {}
        for prefix, running in frontier.items():
            for letter in range(1, d + 1):
                extended = (running * derivatives[letter - 1]).integrate()
                if extended.is_zero():
                    continue
                nxt[prefix + (letter,)] = extended
        for w, running in nxt.items():
            terms[w] = running.eval_at_one()
        frontier = nxt
    return Tensor(d, table, terms)


# ---------------------------------------------------------------------------
# Path signatures via Chen's identity
# ---------------------------------------------------------------------------


def sig_word(path: Path, word) -> MultiPoly:
    """The signature of the path evaluated at one word.

    Chen dynamic programming: values[h] is the signature of the segments
    consumed so far against the length-h prefix of the word.
    """
    w = as_word(word)
    if w and max(w) > path.dimension:
        raise ValueError(f"letter out of range in {w} (dimension {path.dimension})")
    one = MultiPoly.const(path.table, 1)
    zero = MultiPoly.zero(path.table)
    values = [one] + [zero] * len(w)
    for segment in path.segments:
        new_values = []
        for i in range(len(w) + 1):
            acc = zero
            for h in range(i + 1):
                left = values[h]
                if left.is_zero():
                    continue
                acc = acc + left * segment_sig_word(segment, w[h:i])
            new_values.append(acc)
        values = new_values
    return values[-1]


def sig_apply(path: Path, tensor: Tensor) -> MultiPoly:
    """Pair the signature with a tensor: the linear extension of sig_word."""
    if tensor.table != path.table:
        raise RingMismatchError("tensor and path over different coefficient tables")
    if tensor.alphabet != path.dimension:
        raise RingMismatchError("tensor alphabet differs from path dimension")
    total = MultiPoly.zero(path.table)
    for w, coeff in tensor.terms.items():
        total = total + coeff * sig_word(path, w)
    return total


def sig_series(path: Path, k: int) -> Tensor:
    """The full signature through level k (levels 0..k)."""
    if k < 0:
        raise ValueError("level must be non-negative")
    series = Tensor.unit(path.dimension, path.table)
    for segment in path.segments:
        series = concat_product(series, _segment_series(segment, k), max_level=k)
    return series


def sig_level(path: Path, k: int) -> Tensor:
    """The level-k signature tensor (level 0 is the scalar 1 on e)."""
    return sig_series(path, k).level(k)


# ---------------------------------------------------------------------------
# Core tensors
# ---------------------------------------------------------------------------


def caxis_tensor(
    d: int, k: int, table: VariableTable = RATIONALS, method: str = "integrate"
) -> Tensor:
    """Level-k signature of the canonical axis path (d unit steps).

    The closed form (1 / product of letter-multiplicity factorials on weakly
    increasing words) is available as a fast path; it is validated against
    the integration route by the test suite before being trusted.
    """
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    if method == "integrate":
        return sig_level(pw_lin_path(DenseMatrix.identity(d, table)), k)
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    terms: dict[Word, Fraction] = {}
    for w in combinations_with_replacement(range(1, d + 1), k):
        coeff = Fraction(1)
        for letter in set(w):
            coeff /= factorial(w.count(letter))
        terms[w] = coeff
    return Tensor(d, table, terms)


def cmon_tensor(
    d: int, k: int, table: VariableTable = RATIONALS, method: str = "integrate"
) -> Tensor:
    """Level-k signature of the canonical monomial path t -> (t, ..., t^d).

    Closed form: the coefficient of [i_1, ..., i_k] is the product over j of
    i_j / (i_1 + ... + i_j); validated against integration by the tests.
    """
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    if method == "integrate":
        coords = [UniPoly.t(table, j) for j in range(1, d + 1)]
        return sig_level(poly_path(coords, table), k)
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    terms = {}
    for w in product(range(1, d + 1), repeat=k):
        coeff = Fraction(1)
        running = 0
        for letter in w:
            running += letter
            coeff *= Fraction(letter, running)
        terms[w] = coeff
    return Tensor(d, table, terms)


# ---------------------------------------------------------------------------
# Tensor exponential
# ---------------------------------------------------------------------------


def tensor_exp_series(L: Tensor, k: int) -> Tensor:
    """exp(L) truncated at level k, all levels 0..k."""
    if EMPTY_WORD in L.terms:
        raise ValueError("tensor exponential needs a level >= 1 argument")
    result = Tensor.unit(L.alphabet, L.table)
    term = Tensor.unit(L.alphabet, L.table)
    for n in range(1, k + 1):
        term = concat_product(term, L, max_level=k) * Fraction(1, n)
        if term.is_zero():
            break
        result = result + term
    return result


def tensor_exp(L: Tensor, k: int) -> Tensor:
    """The level-k component of the truncated tensor exponential."""
    return tensor_exp_series(L, k).level(k)


# ---------------------------------------------------------------------------
# Matrix action and path transformations
# ---------------------------------------------------------------------------


def matrix_action(matrix, tensor: Tensor) -> Tensor:
    """Diagonal action of a matrix on a tensor.

    The tensor's letters index the matrix rows; each letter i maps to the sum
    over columns j of A[i, j] * [j], multiplicatively over the letters of a
    word. The result lives over the column alphabet.
    """
    if not isinstance(matrix, DenseMatrix):
        matrix = DenseMatrix.from_rows(matrix, table=tensor.table)
    if matrix.table != tensor.table:
        raise RingMismatchError("matrix entries and tensor coefficients over different tables")
    if tensor.alphabet != matrix.rows:
        raise RingMismatchError(
            f"tensor alphabet {tensor.alphabet} differs from matrix row count {matrix.rows}"
        )
    out: dict[Word, MultiPoly] = {}
    for word, coeff in tensor.terms.items():
        partial: dict[Word, MultiPoly] = {EMPTY_WORD: coeff}
        for letter in word:
            nxt: dict[Word, MultiPoly] = {}
            for w, c in partial.items():
                for j in range(matrix.cols):
                    entry = matrix.at(letter - 1, j)
                    if entry.is_zero():
                        continue
                    grown = w + (j + 1,)
                    prod = c * entry
                    nxt[grown] = nxt[grown] + prod if grown in nxt else prod
            partial = nxt
        for w, c in partial.items():
            out[w] = out[w] + c if w in out else c
    return Tensor(matrix.cols, tensor.table, out)


def transform_path(matrix, path: Path) -> Path:
    """Apply a linear map segmentwise: row r of the new path is the matrix
    row against the old coordinates."""
    if not isinstance(matrix, DenseMatrix):
        matrix = DenseMatrix.from_rows(matrix, table=path.table)
    if matrix.cols != path.dimension:
        raise ValueError(
            f"matrix has {matrix.cols} columns but the path has dimension {path.dimension}"
        )
    if matrix.table != path.table:
        matrix = DenseMatrix(
            matrix.rows, matrix.cols, tuple(e.cast(path.table) for e in matrix.entries)
        )
    segments = []
    for seg in path.segments:
        coords = []
        for r in range(matrix.rows):
            coord = UniPoly.zero(path.table)
            for c in range(matrix.cols):
                entry = matrix.at(r, c)
                if not entry.is_zero():
                    coord = coord + seg.coordinates[c] * entry
            coords.append(coord)
        segments.append(PathSegment(matrix.rows, tuple(coords)))
    return Path(matrix.rows, path.table, tuple(segments))


def substitute_path(polys, path: Path) -> Path:
    """The path p(X) for a polynomial map p with p(0) = 0.

    Each segment is shifted to its true starting point, composed with p, and
    re-normalized by dropping the constant term; for single-segment paths
    this is plain substitution of the coordinates into p.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    source = polys[0].table
    for p in polys:
        if p.table != source:
            raise RingMismatchError("polynomials over different variable tables")
    if len(source) != path.dimension:
        raise ValueError(
            f"polynomials use {len(source)} variables but the path has dimension {path.dimension}"
        )
    base = [MultiPoly.zero(path.table) for _ in range(path.dimension)]
    segments = []
    for seg in path.segments:
        shifted = [
            UniPoly.const(path.table, base[i]) + seg.coordinates[i]
            for i in range(path.dimension)
        ]
        coords = tuple(substitute(p, shifted).drop_constant() for p in polys)
        segments.append(PathSegment(len(polys), coords))
        base = [base[i] + seg.coordinates[i].eval_at_one() for i in range(path.dimension)]
    return Path(len(polys), path.table, tuple(segments))


# ---------------------------------------------------------------------------
# Shuffle homomorphisms from polynomial maps
# ---------------------------------------------------------------------------


def phi_map(poly: MultiPoly, table: VariableTable = RATIONALS) -> Tensor:
    """The shuffle homomorphism sending the i-th source variable to the
    letter i and each monomial to the shuffle of its letters.

    Requires a zero constant term (the map is defined on maps fixing 0).
    """
    d = len(poly.table)
    if d < 1:
        raise ValueError("the polynomial must have at least one variable")
    if (0,) * d in poly.terms:
        raise ValueError("the polynomial must have zero constant term")
    out: dict[Word, Fraction] = {}
    for mono, coeff in poly.terms.items():
        letters = [i + 1 for i, e in enumerate(mono) for _ in range(e)]
        acc: dict[Word, Fraction] = {EMPTY_WORD: Fraction(1)}
        for letter in letters:
            acc = shuffle_word_dicts(acc, {(letter,): Fraction(1)})
        for w, mult in acc.items():
            out[w] = out.get(w, 0) + coeff * mult
    return Tensor(d, table, out)


def adjoint_word(word_or_tensor, polys, table: VariableTable = RATIONALS) -> Tensor:
    """Evaluate the half-shuffle homomorphism attached to a polynomial map.

    A word i_1 ... i_k over the target alphabet expands as the left-nested
    half shuffle of the letter images, each letter i replaced by the shuffle
    image of the i-th polynomial; linear combinations extend linearly.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    images = [phi_map(p, table) for p in polys]
    m = len(polys)

    def expand(word: Word) -> Tensor:
        if not word:
            raise ValueError("the adjoint map is undefined on the empty word")
        if max(word) > m:
            raise ValueError(f"letter out of range in {word} ({m} polynomials)")
        acc = images[word[0] - 1]
        for letter in word[1:]:
            acc = half_shuffle(acc, images[letter - 1])
        return acc

    if isinstance(word_or_tensor, Tensor):
        d = len(polys[0].table)
        total = Tensor.zero(d, table)
        for w, coeff in word_or_tensor.terms.items():
            total = total + expand(w).scale(coeff.cast(table))
        return total
    return expand(as_word(word_or_tensor))


# ---------------------------------------------------------------------------
# Result wrapper and JSON
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignatureResult:
    """A level-k signature tensor together with its provenance."""

    path: Path
    level: int
    tensor: Tensor

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be non-negative")
        if self.level == 0:
            if self.tensor != Tensor.unit(self.path.dimension, self.path.table):
                raise ValueError("level-0 signature must be the unit tensor")
        elif self.tensor.levels() - {self.level}:
            raise ValueError("tensor is not homogeneous of the stated level")

    def to_json(self) -> dict:
        return {
            "dimension": self.path.dimension,
            "level": self.level,
            "variables": list(self.tensor.table.names),
            "terms": [
                {"word": list(w), "coefficient": str(self.tensor.terms[w])}
                for w in self.tensor.sorted_words()
            ],
        }


def signature_result(path: Path, k: int) -> SignatureResult:
    return SignatureResult(path, k, sig_level(path, k))


def tensor_from_level_json(data: dict) -> Tensor:
    """Rebuild the tensor of a SignatureResult JSON document."""
    table = VariableTable(tuple(data.get("variables", ())))
    d = int(data["dimension"])
    terms = {}
    for item in data["terms"]:
        w = tuple(int(i) for i in item["word"])
        coeff = parse_poly(item["coefficient"], table)
        terms[w] = terms[w] + coeff if w in terms else coeff
    return Tensor(d, table, terms)
