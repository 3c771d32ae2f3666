"""Exact coefficient arithmetic: rationals, multivariate polynomials, and
polynomials in the path parameter t.

Scalars are ``fractions.Fraction`` values (arbitrary precision, always stored
in lowest terms with a positive denominator). A :class:`MultiPoly` is a sparse
map from exponent tuples to nonzero Fractions over a fixed, ordered
:class:`VariableTable`; a :class:`UniPoly` is a sparse map from t-degree to
nonzero MultiPoly coefficients. Both are treated as immutable: no operation
mutates its inputs, and results never share term dictionaries with them.

Monomials are ordered graded-lexicographically in the table's variable order.
The order only fixes printing and iteration; no arithmetic depends on it.

The module also provides exact linear algebra over the rationals: rank and
nullspace dimension by fraction-free (Bareiss) elimination, and a reduced
row-echelon nullspace basis used by the variety-analysis layer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence, Union

try:
    from gmpy2 import mpz as _bigint  # much faster large-integer arithmetic
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _bigint = int

Scalar = Union[int, Fraction]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class RingMismatchError(ValueError):
    """Raised when two operands live over incompatible variable tables."""


class ParseError(ValueError):
    """Raised on malformed polynomial or tensor text; carries the offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class VariableTable:
    """An ordered tuple of distinct variable names, fixed at creation.

    Two tables with the same names in the same order are interchangeable.
    """

    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"variable names must be distinct: {self.names}")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name: {name!r}")

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r} in table {self.names}") from None


#: The empty variable table: coefficients are plain rational numbers.
RATIONALS = VariableTable(())


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational scalar, got {type(value).__name__}")


def grlex_key(exponents: tuple[int, ...]) -> tuple:
    """Sort key for graded-lexicographic monomial order (ascending)."""
    return (sum(exponents), exponents)


class MultiPoly:
    """A multivariate polynomial with Fraction coefficients, stored sparsely.

    ``terms`` maps exponent tuples (one entry per table variable) to nonzero
    Fractions. The zero polynomial has an empty term map. Instances are
    immutable by convention; do not mutate ``terms``.
    """

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: VariableTable, terms: dict):
        clean: dict[tuple[int, ...], Fraction] = {}
        width = len(table)
        for exponents, coeff in terms.items():
            exponents = tuple(exponents)
            if len(exponents) != width:
                raise ValueError(
                    f"exponent tuple {exponents} does not match table of {width} variables"
                )
            if any(e < 0 for e in exponents):
                raise ValueError(f"negative exponent in {exponents}")
            coeff = _as_fraction(coeff)
            if coeff != 0:
                clean[exponents] = coeff
        self.table = table
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, table: VariableTable, terms: dict) -> MultiPoly:
        """Trusted constructor: terms must already be canonical (valid
        exponent tuples, nonzero Fraction values). Skips validation."""
        poly = object.__new__(cls)
        poly.table = table
        poly.terms = terms
        poly._hash = None
        return poly

    @staticmethod
    def zero(table: VariableTable) -> MultiPoly:
        return MultiPoly(table, {})

    @staticmethod
    def const(table: VariableTable, value: Scalar) -> MultiPoly:
        return MultiPoly(table, {(0,) * len(table): _as_fraction(value)})

    @staticmethod
    def variable(table: VariableTable, name: str) -> MultiPoly:
        exps = [0] * len(table)
        exps[table.index(name)] = 1
        return MultiPoly(table, {tuple(exps): Fraction(1)})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in mono) for mono in self.terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; raises if non-constant."""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"polynomial is not constant: {self}")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.table != self.table:
                raise RingMismatchError(
                    f"incompatible variable tables {self.table.names} and {other.table.names}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.table, other)
        return None

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            if mono in out:
                value = out[mono] + coeff
                if value:
                    out[mono] = value
                else:
                    del out[mono]
            else:
                out[mono] = coeff
        return MultiPoly._raw(self.table, out)

    __radd__ = __add__

    def __sub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.table, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[tuple[int, ...], Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                if mono in out:
                    out[mono] += ca * cb
                else:
                    out[mono] = ca * cb
        return MultiPoly._raw(self.table, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(self.table, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                return self == MultiPoly.const(self.table, other)
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.table, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and evaluation -------------------------------------------

    def diff(self, name: str) -> MultiPoly:
        """Formal partial derivative with respect to a table variable."""
        idx = self.table.index(name)
        out: dict[tuple[int, ...], Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[idx]
            if e == 0:
                continue
            lowered = mono[:idx] + (e - 1,) + mono[idx + 1 :]
            out[lowered] = out.get(lowered, Fraction(0)) + coeff * e
        return MultiPoly(self.table, out)

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        """Exact evaluation at a rational point (one value per variable)."""
        values = [_as_fraction(v) for v in point]
        if len(values) != len(self.table):
            raise ValueError(
                f"point has {len(values)} coordinates, table has {len(self.table)} variables"
            )
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for e, v in zip(mono, values):
                if e:
                    term *= v**e
            total += term
        return total

    def cast(self, table: VariableTable) -> MultiPoly:
        """Re-express over another table; every used variable must exist there."""
        if table == self.table:
            return self
        positions = []
        for i, name in enumerate(self.table.names):
            if any(mono[i] for mono in self.terms):
                positions.append((i, table.index(name)))
        out: dict[tuple[int, ...], Fraction] = {}
        for mono, coeff in self.terms.items():
            exps = [0] * len(table)
            for src, dst in positions:
                exps[dst] = mono[src]
            out[tuple(exps)] = out.get(tuple(exps), Fraction(0)) + coeff
        return MultiPoly(table, out)

    # -- printing ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def _monomial_text(self, mono: tuple[int, ...]) -> str:
        parts = []
        for name, e in zip(self.table.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return " ".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, coeff in self.sorted_terms():
            var_text = self._monomial_text(mono)
            mag = abs(coeff)
            if not var_text:
                body = str(mag)
            elif mag == 1:
                body = var_text
            else:
                body = f"{mag} {var_text}"
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


class UniPoly:
    """A polynomial in the path parameter t with MultiPoly coefficients."""

    __slots__ = ("table", "coeffs", "_hash")

    def __init__(self, table: VariableTable, coeffs: dict):
        clean: dict[int, MultiPoly] = {}
        for degree, poly in coeffs.items():
            if not isinstance(degree, int) or degree < 0:
                raise ValueError(f"invalid t-degree {degree}")
            if isinstance(poly, (int, Fraction)):
                poly = MultiPoly.const(table, poly)
            if poly.table != table:
                raise RingMismatchError("coefficient table differs from UniPoly table")
            if not poly.is_zero():
                clean[degree] = poly
        self.table = table
        self.coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, table: VariableTable, coeffs: dict) -> UniPoly:
        """Trusted constructor: coefficients must be nonzero MultiPoly values
        over the same table, keyed by non-negative degrees."""
        poly = object.__new__(cls)
        poly.table = table
        poly.coeffs = coeffs
        poly._hash = None
        return poly

    @staticmethod
    def zero(table: VariableTable) -> UniPoly:
        return UniPoly(table, {})

    @staticmethod
    def const(table: VariableTable, value) -> UniPoly:
        return UniPoly(table, {0: value})

    @staticmethod
    def t(table: VariableTable, degree: int = 1) -> UniPoly:
        """The monomial t**degree with coefficient 1."""
        return UniPoly(table, {degree: MultiPoly.const(table, 1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def _coerce(self, other) -> UniPoly | None:
        if isinstance(other, UniPoly):
            if other.table != self.table:
                raise RingMismatchError("UniPoly operands over different tables")
            return other
        if isinstance(other, (int, Fraction, MultiPoly)):
            return UniPoly.const(self.table, other)
        return None

    def __add__(self, other) -> UniPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for d, p in other.coeffs.items():
            if d in out:
                value = out[d] + p
                if value.terms:
                    out[d] = value
                else:
                    del out[d]
            else:
                out[d] = p
        return UniPoly._raw(self.table, out)

    __radd__ = __add__

    def __sub__(self, other) -> UniPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> UniPoly:
        return UniPoly._raw(self.table, {d: -p for d, p in self.coeffs.items()})

    def __mul__(self, other) -> UniPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, MultiPoly] = {}
        for da, pa in self.coeffs.items():
            for db, pb in other.coeffs.items():
                d = da + db
                prod = pa * pb
                out[d] = out[d] + prod if d in out else prod
        return UniPoly._raw(self.table, {d: p for d, p in out.items() if p.terms})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.table == other.table and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.table, frozenset((d, hash(p)) for d, p in self.coeffs.items()))
            )
        return self._hash

    def integrate(self) -> UniPoly:
        """Antiderivative q with q(0) = 0: t**n maps to t**(n+1)/(n+1)."""
        return UniPoly._raw(
            self.table,
            {d + 1: p * Fraction(1, d + 1) for d, p in self.coeffs.items()},
        )

    def derivative(self) -> UniPoly:
        """Formal derivative with respect to t."""
        return UniPoly._raw(
            self.table, {d - 1: p * d for d, p in self.coeffs.items() if d > 0}
        )

    def eval_at_one(self) -> MultiPoly:
        """Value at t = 1: the sum of all t-coefficients."""
        total = MultiPoly.zero(self.table)
        for p in self.coeffs.values():
            total = total + p
        return total

    def constant_term(self) -> MultiPoly:
        return self.coeffs.get(0, MultiPoly.zero(self.table))

    def drop_constant(self) -> UniPoly:
        """The polynomial minus its t-degree-0 part."""
        return UniPoly(self.table, {d: p for d, p in self.coeffs.items() if d > 0})

    def compose(self, inner: UniPoly) -> UniPoly:
        """Substitute t := inner(t), by Horner evaluation."""
        if inner.table != self.table:
            raise RingMismatchError("composition operands over different tables")
        degrees = sorted(self.coeffs, reverse=True)
        if not degrees:
            return UniPoly.zero(self.table)
        result = UniPoly.const(self.table, self.coeffs[degrees[0]])
        for prev, cur in zip(degrees, degrees[1:]):
            for _ in range(prev - cur):
                result = result * inner
            result = result + self.coeffs[cur]
        for _ in range(degrees[-1]):
            result = result * inner
        return result

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for d in sorted(self.coeffs, reverse=True):
            poly = self.coeffs[d]
            t_text = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            if len(poly.terms) > 1:
                body = f"({poly}) {t_text}".strip()
                sign = "+"
            else:
                mono, coeff = next(iter(poly.terms.items()))
                sign = "-" if coeff < 0 else "+"
                var_text = poly._monomial_text(mono)
                mag = abs(coeff)
                factors = []
                if mag != 1 or (not var_text and not t_text):
                    factors.append(str(mag))
                if var_text:
                    factors.append(var_text)
                if t_text:
                    factors.append(t_text)
                body = " ".join(factors)
            pieces.append((sign, body))
        sign, body = pieces[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"UniPoly({self})"


def substitute(poly: MultiPoly, values: Sequence[UniPoly]) -> UniPoly:
    """Evaluate a MultiPoly at UniPoly arguments, one per variable.

    The result lives over the common table of the values; the input's own
    coefficients are rational constants attached to its monomials, so the
    input table only fixes the variable count.
    """
    if len(values) != len(poly.table):
        raise ValueError(
            f"need {len(poly.table)} substitution values, got {len(values)}"
        )
    if not values:
        return UniPoly.const(RATIONALS, poly.constant_value())
    table = values[0].table
    for v in values:
        if v.table != table:
            raise RingMismatchError("substitution values over different tables")
    total = UniPoly.zero(table)
    for mono, coeff in poly.terms.items():
        term = UniPoly.const(table, coeff)
        for e, v in zip(mono, values):
            for _ in range(e):
                term = term * v
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DenseMatrix:
    """A row-major dense matrix of MultiPoly entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @staticmethod
    def from_rows(rows: Sequence[Sequence], table: VariableTable | None = None) -> DenseMatrix:
        """Build from nested sequences; plain numbers become constants.

        The table is inferred from the first MultiPoly entry when not given.
        """
        rows = [list(r) for r in rows]
        if table is None:
            for r in rows:
                for x in r:
                    if isinstance(x, MultiPoly):
                        table = x.table
                        break
                if table is not None:
                    break
            else:
                table = RATIONALS
        flat = []
        for r in rows:
            if len(r) != len(rows[0]):
                raise ValueError("ragged rows")
            for x in r:
                if isinstance(x, MultiPoly):
                    if x.table != table:
                        raise RingMismatchError("matrix entries over different tables")
                    flat.append(x)
                else:
                    flat.append(MultiPoly.const(table, x))
        return DenseMatrix(len(rows), len(rows[0]), tuple(flat))

    @staticmethod
    def identity(n: int, table: VariableTable = RATIONALS) -> DenseMatrix:
        one = MultiPoly.const(table, 1)
        zero = MultiPoly.zero(table)
        return DenseMatrix(
            n, n, tuple(one if i == j else zero for i in range(n) for j in range(n))
        )

    @property
    def table(self) -> VariableTable:
        return self.entries[0].table

    def at(self, i: int, j: int) -> MultiPoly:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def transpose(self) -> DenseMatrix:
        return DenseMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )


# ---------------------------------------------------------------------------
# Exact linear algebra over the rationals
# ---------------------------------------------------------------------------


def _to_fraction_rows(matrix) -> list[list[Fraction]]:
    if isinstance(matrix, DenseMatrix):
        return [
            [matrix.at(i, j).constant_value() for j in range(matrix.cols)]
            for i in range(matrix.rows)
        ]
    return [[_as_fraction(x) for x in row] for row in matrix]


def _to_int_rows(matrix) -> list[list]:
    """Clear denominators and strip content row by row; rank-preserving."""
    out = []
    for row in _to_fraction_rows(matrix):
        scale = lcm(*(f.denominator for f in row)) if row else 1
        ints = [int(f * scale) for f in row]
        content = 0
        for x in ints:
            content = gcd(content, x)
        if content > 1:
            ints = [x // content for x in ints]
        out.append([_bigint(x) for x in ints])
    return out


def exact_rank(matrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Accepts nested sequences of Fraction/int or a DenseMatrix with constant
    entries. Deterministic, no tolerances. Intermediate entries stay bounded
    by minors of the input, and every division is checked to be exact.
    """
    rows = _to_int_rows(matrix)
    if not rows:
        return 0
    n_cols = len(rows[0])
    n_rows = len(rows)
    rank = 0
    prev = _bigint(1)
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][c]
        top = rows[r]
        for i in range(r + 1, n_rows):
            cur = rows[i]
            factor = cur[c]
            if factor:
                new_tail = [
                    divmod(piv * cur[j] - factor * top[j], prev)
                    for j in range(c + 1, n_cols)
                ]
            else:
                new_tail = [divmod(piv * cur[j], prev) for j in range(c + 1, n_cols)]
            if any(rem for _, rem in new_tail):
                raise ArithmeticError("fraction-free elimination lost exactness")
            cur[c] = _bigint(0)
            cur[c + 1 :] = [q for q, _ in new_tail]
        prev = piv
        rank += 1
        r += 1
        if r == n_rows:
            break
    return rank


def exact_nullspace_dim(matrix) -> int:
    """cols - rank, over the rationals."""
    rows = _to_fraction_rows(matrix)
    if not rows:
        return 0
    return len(rows[0]) - exact_rank(rows)


def nullspace_basis(matrix) -> list[list[Fraction]]:
    """An exact basis of the right nullspace {v : M v = 0}.

    Gauss-Jordan over Fractions; intended for modest sizes (the degree-1
    relation matrices of the variety layer).
    """
    rows = _to_fraction_rows(matrix)
    if not rows:
        return []
    n_cols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
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
        if r == len(rows):
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n_cols
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -rows[row_idx][fc]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# Polynomial text: tokenizer and parsers
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[-+*/^()\[\],]))"
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split text into (kind, value, position) tokens; kinds: int, name, sym."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        for kind in ("int", "name", "sym"):
            value = m.group(kind)
            if value is not None:
                tokens.append((kind, value, m.start(kind)))
                break
        pos = m.end()
    return tokens


class _PolyParser:
    """Recursive-descent parser for polynomial text over a known table.

    Grammar (whitespace-insensitive, '*' optional between factors):
        expr   := ['+'|'-'] term (('+'|'-') term)*
        term   := factor (['*'] factor)*
        factor := atom ['^' int]
        atom   := int ['/' int] | name | '(' expr ')'
    """

    def __init__(self, tokens, names: Sequence[str]):
        self.tokens = tokens
        self.i = 0
        self.names = list(names)
        self.width = len(self.names)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, -1)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message):
        kind, value, pos = self.peek()
        raise ParseError(message, pos if pos >= 0 else 0)

    def parse_expr(self) -> dict:
        sign = 1
        kind, value, _ = self.peek()
        if kind == "sym" and value in "+-":
            self.next()
            sign = -1 if value == "-" else 1
        result = self._scaled(self.parse_term(), sign)
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value in "+-":
                self.next()
                term = self.parse_term()
                result = self._add(result, self._scaled(term, -1 if value == "-" else 1))
            else:
                return result

    def parse_term(self) -> dict:
        result = self.parse_factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value == "*":
                self.next()
                result = self._mul(result, self.parse_factor())
            elif kind in ("int", "name") or (kind == "sym" and value == "("):
                result = self._mul(result, self.parse_factor())
            else:
                return result

    def parse_factor(self) -> dict:
        base = self.parse_atom()
        kind, value, _ = self.peek()
        if kind == "sym" and value == "^":
            self.next()
            kind, value, _ = self.next()
            if kind != "int":
                self.error("expected an integer exponent after '^'")
            power = {(0,) * self.width: Fraction(1)}
            for _ in range(int(value)):
                power = self._mul(power, base)
            return power
        return base

    def parse_atom(self) -> dict:
        kind, value, pos = self.next()
        if kind == "int":
            numerator = int(value)
            k2, v2, _ = self.peek()
            if k2 == "sym" and v2 == "/":
                self.next()
                k3, v3, p3 = self.next()
                if k3 != "int":
                    raise ParseError("expected an integer denominator", p3)
                return {(0,) * self.width: Fraction(numerator, int(v3))}
            return {(0,) * self.width: Fraction(numerator)}
        if kind == "name":
            if value not in self.names:
                raise ParseError(f"unknown variable {value!r}", pos)
            exps = [0] * self.width
            exps[self.names.index(value)] = 1
            return {tuple(exps): Fraction(1)}
        if kind == "sym" and value == "(":
            inner = self.parse_expr()
            kind, value, pos = self.next()
            if not (kind == "sym" and value == ")"):
                raise ParseError("expected ')'", pos)
            return inner
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input", pos)

    @staticmethod
    def _scaled(terms: dict, sign: int) -> dict:
        if sign == 1:
            return terms
        return {m: -c for m, c in terms.items()}

    @staticmethod
    def _add(a: dict, b: dict) -> dict:
        out = dict(a)
        for m, c in b.items():
            out[m] = out.get(m, Fraction(0)) + c
        return out

    def _mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                out[mono] = out.get(mono, Fraction(0)) + ca * cb
        return out


def parse_poly(text: str, table: VariableTable) -> MultiPoly:
    """Parse multivariate polynomial text over the table's variables."""
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text", 0)
    parser = _PolyParser(tokens, table.names)
    terms = parser.parse_expr()
    if parser.i != len(tokens):
        parser.error("trailing input after polynomial")
    return MultiPoly(table, terms)


def parse_unipoly(text: str, table: VariableTable, param: str = "t") -> UniPoly:
    """Parse polynomial text in the path parameter and the table variables."""
    if param in table:
        raise ValueError(f"parameter name {param!r} collides with a table variable")
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text", 0)
    names = list(table.names) + [param]
    parser = _PolyParser(tokens, names)
    terms = parser.parse_expr()
    if parser.i != len(tokens):
        parser.error("trailing input after polynomial")
    by_degree: dict[int, dict] = {}
    for mono, coeff in terms.items():
        degree = mono[-1]
        by_degree.setdefault(degree, {})[mono[:-1]] = coeff
    return UniPoly(table, {d: MultiPoly(table, ts) for d, ts in by_degree.items()})
