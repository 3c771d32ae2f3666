"""Lyndon words, standard factorization, Lie bracketing, and the expression
of tensors as shuffle polynomials in Lyndon words.

Lyndon words freely generate the shuffle algebra, so every tensor with
rational coefficients decomposes uniquely as a polynomial in Lyndon words
under the shuffle product. The decomposition here is triangular elimination:
repeatedly strip the largest remaining word using the shuffle expansion of
its non-increasing Lyndon factorization, whose leading word is that word
itself with a known factorial coefficient. That leading-term fact is asserted
at runtime; if the assertion ever failed, the level would be re-solved
exactly against the full shuffle-monomial basis instead.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra import RATIONALS, VariableTable
from .words import Tensor, Word, concat_product, shuffle_word_dicts

#: A shuffle monomial: Lyndon words with positive exponents, sorted by word.
ShuffleMonomial = tuple[tuple[Word, int], ...]


def is_lyndon(word) -> bool:
    """True iff the word is strictly smaller than all of its proper suffixes
    (equivalently, than all of its proper rotations)."""
    w = tuple(word)
    if not w:
        raise ValueError("the empty word is not eligible")
    return all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(d: int, k: int) -> list[Word]:
    """All Lyndon words of length <= k on letters 1..d, lexicographically.

    Duval's generation algorithm: extend the current word periodically to
    length k, then strip maximal letters and increment.
    """
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    out: list[Word] = []
    w = [1]
    while w:
        out.append(tuple(w))
        w = [w[i % len(w)] for i in range(k)]
        while w and w[-1] == d:
            w.pop()
        if w:
            w[-1] += 1
    return out


def standard_factorization(word) -> tuple[Word, Word]:
    """Split a Lyndon word as l1 * l2 with l2 its longest proper Lyndon
    right factor; both factors are again Lyndon."""
    w = tuple(word)
    if len(w) < 2:
        raise ValueError("standard factorization needs length >= 2")
    if not is_lyndon(w):
        raise ValueError(f"{w} is not a Lyndon word")
    for start in range(1, len(w)):
        if is_lyndon(w[start:]):
            return w[:start], w[start:]
    raise AssertionError("unreachable: every Lyndon word has a Lyndon suffix")


def lie_basis(word, d: int, table: VariableTable = RATIONALS) -> Tensor:
    """The iterated bracketing of a Lyndon word, expanded in the tensor
    algebra with [x, y] = x*y - y*x; homogeneous with integer coefficients."""
    w = tuple(word)
    if not is_lyndon(w):
        raise ValueError(f"{w} is not a Lyndon word")
    if w and max(w) > d:
        raise ValueError(f"letter out of range in {w} (alphabet {d})")
    if len(w) == 1:
        return Tensor.word(w, d, table)
    left, right = standard_factorization(w)
    x = lie_basis(left, d, table)
    y = lie_basis(right, d, table)
    return concat_product(x, y) - concat_product(y, x)


def chen_fox_lyndon(word) -> list[Word]:
    """The unique non-increasing factorization into Lyndon words (Duval)."""
    w = tuple(word)
    out: list[Word] = []
    k = 0
    n = len(w)
    while k < n:
        i, j = k, k + 1
        while j < n and w[i] <= w[j]:
            i = k if w[i] < w[j] else i + 1
            j += 1
        while k <= i:
            out.append(w[k : k + j - i])
            k += j - i
    return out


class LyndonPolynomial:
    """A polynomial in Lyndon words under the shuffle product.

    ``terms`` maps shuffle monomials (sorted tuples of (Lyndon word, positive
    exponent) pairs) to nonzero rational coefficients. The empty monomial is
    the constant term.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        clean: dict[ShuffleMonomial, Fraction] = {}
        for monomial, coeff in terms.items():
            monomial = tuple(sorted((tuple(w), int(e)) for w, e in monomial))
            for w, e in monomial:
                if e <= 0:
                    raise ValueError("exponents must be positive")
                if not is_lyndon(w):
                    raise ValueError(f"{w} is not a Lyndon word")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[monomial] = clean.get(monomial, Fraction(0)) + coeff
        self.terms = {m: c for m, c in clean.items() if c != 0}

    def __eq__(self, other):
        if not isinstance(other, LyndonPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def expand(self, alphabet: int | None = None, table: VariableTable = RATIONALS) -> Tensor:
        """Evaluate the polynomial: replace each monomial by the shuffle
        product of its words with multiplicity."""
        if alphabet is None:
            letters = [max(w) for m in self.terms for w, _ in m if w]
            alphabet = max(letters, default=1)
        total: dict[Word, Fraction] = {}
        for monomial, coeff in self.terms.items():
            for w, c in _expand_monomial(monomial).items():
                total[w] = total.get(w, Fraction(0)) + coeff * c
        return Tensor(alphabet, table, total)

    def sorted_terms(self) -> list[tuple[ShuffleMonomial, Fraction]]:
        def key(monomial):
            return (sum(len(w) * e for w, e in monomial), monomial)

        return sorted(self.terms.items(), key=lambda kv: key(kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for monomial, coeff in self.sorted_terms():
            factors = " ".join(
                ("[" + ",".join(map(str, w)) + "]") + (f"^{e}" if e > 1 else "")
                for w, e in monomial
            )
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = factors
            else:
                body = f"{mag} {factors}"
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LyndonPolynomial({self})"

    def to_json(self) -> list:
        return [
            {
                "monomial": [{"word": list(w), "exponent": e} for w, e in monomial],
                "coefficient": str(coeff),
            }
            for monomial, coeff in self.sorted_terms()
        ]

    @staticmethod
    def from_json(data: list) -> LyndonPolynomial:
        terms: dict[ShuffleMonomial, Fraction] = {}
        for record in data:
            monomial = tuple(
                (tuple(item["word"]), int(item["exponent"])) for item in record["monomial"]
            )
            coeff = Fraction(record["coefficient"])
            terms[monomial] = terms.get(monomial, Fraction(0)) + coeff
        return LyndonPolynomial(terms)


def _expand_monomial(monomial: ShuffleMonomial) -> dict:
    out: dict[Word, Fraction] = {(): Fraction(1)}
    for w, e in monomial:
        for _ in range(e):
            out = shuffle_word_dicts(out, {w: Fraction(1)})
    return out


def _grouped_factorization(word: Word) -> list[tuple[Word, int]]:
    groups: list[tuple[Word, int]] = []
    for factor in chen_fox_lyndon(word):
        if groups and groups[-1][0] == factor:
            groups[-1] = (factor, groups[-1][1] + 1)
        else:
            groups.append((factor, 1))
    return groups


def lyndon_shuffle(tensor: Tensor) -> LyndonPolynomial:
    """Express a constant-coefficient tensor as a shuffle polynomial in
    Lyndon words; expanding the result reproduces the input exactly.

    An empty-word component becomes the constant term.
    """
    if not tensor.has_constant_coefficients():
        raise ValueError("lyndon_shuffle requires constant (rational) coefficients")
    remainder: dict[Word, Fraction] = {
        w: c.constant_value() for w, c in tensor.terms.items()
    }
    terms: dict[ShuffleMonomial, Fraction] = {}
    if () in remainder:
        terms[()] = remainder.pop(())
    order = lambda w: (len(w), w)
    while remainder:
        word = max(remainder, key=order)
        groups = _grouped_factorization(word)
        lead = 1
        for _, e in groups:
            lead *= factorial(e)
        expansion = _expand_monomial(tuple(groups))
        top = max(expansion, key=order)
        if top != word or expansion[top] != lead:
            # The classical leading-term property failed (it should not);
            # re-solve this whole level against the shuffle-monomial basis.
            level = len(word)
            level_part = {w: c for w, c in remainder.items() if len(w) == level}
            for monomial, coeff in _solve_level(level_part, tensor.alphabet).items():
                terms[monomial] = terms.get(monomial, Fraction(0)) + coeff
            for w in level_part:
                del remainder[w]
            continue
        coeff = remainder[word] / lead
        monomial = tuple(sorted(groups))
        terms[monomial] = terms.get(monomial, Fraction(0)) + coeff
        for w, c in expansion.items():
            value = remainder.get(w, Fraction(0)) - coeff * c
            if value:
                remainder[w] = value
            else:
                remainder.pop(w, None)
        if remainder:
            new_top = max(remainder, key=order)
            if order(new_top) >= order(word):
                raise AssertionError("elimination did not decrease the remainder")
    return LyndonPolynomial(terms)


def _monomials_of_weight(n: int, d: int) -> list[ShuffleMonomial]:
    """All multisets of Lyndon words on 1..d with total length n."""
    words = [w for w in lyndon_words(d, n)]
    out: list[ShuffleMonomial] = []

    def recurse(idx: int, remaining: int, chosen: list):
        if remaining == 0:
            out.append(tuple((w, e) for w, e in chosen))
            return
        for i in range(idx, len(words)):
            w = words[i]
            if len(w) > remaining:
                continue
            count = 1
            while count * len(w) <= remaining:
                recurse(i + 1, remaining - count * len(w), chosen + [(w, count)])
                count += 1

    recurse(0, n, [])
    return out


def _solve_level(component: dict, d: int) -> dict:
    """Exact fallback: solve the level against all shuffle monomials of that
    weight. The monomial expansions form a basis, so the solution is unique."""
    if not component:
        return {}
    level = len(next(iter(component)))
    monomials = _monomials_of_weight(level, d)
    expansions = [_expand_monomial(m) for m in monomials]
    words = sorted({w for exp in expansions for w in exp} | set(component))
    index = {w: i for i, w in enumerate(words)}
    # Gauss-Jordan on the augmented system (columns are monomials).
    rows = [[Fraction(0)] * (len(monomials) + 1) for _ in words]
    for j, exp in enumerate(expansions):
        for w, c in exp.items():
            rows[index[w]][j] = Fraction(c)
    for w, c in component.items():
        rows[index[w]][-1] = c
    pivots: list[int] = []
    r = 0
    for c in range(len(monomials)):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            raise AssertionError("inconsistent decomposition system")
    solution: dict[ShuffleMonomial, Fraction] = {}
    for row_idx, c in enumerate(pivots):
        if rows[row_idx][-1] != 0:
            solution[monomials[c]] = rows[row_idx][-1]
    return solution
