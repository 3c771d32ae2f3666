"""Polynomial parametrizations of universal and signature varieties.

A :class:`PolynomialMap` records a parametrization: a parameter ring (with
integer weights), one target coordinate per word of the relevant level, and
one polynomial entry per coordinate. Affine image dimensions come from exact
Jacobian ranks at random integer points; minimal ideal generators in degrees
one and two come from exact nullspaces of evaluation matrices at random
points. Randomness is seeded and all linear algebra is exact, so results are
deterministic for a fixed seed and wrong answers have probability zero in the
measure-theoretic sense only; no floating-point tolerances are involved
anywhere (a flagged float rank exists purely as a speedup and is always
cross-checked in the tests).

Kernel ideals, projective degrees, and Betti tables beyond the degree-two
generator counts are out of scope here: :func:`export_map` emits a
self-contained computer-algebra script for those.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .algebra import (
    DenseMatrix,
    MultiPoly,
    VariableTable,
    exact_rank,
    nullspace_basis,
    parse_poly,
)
from .lyndon import lie_basis, lyndon_words
from .signature import caxis_tensor, cmon_tensor, matrix_action, tensor_exp
from .words import Tensor, Word

#: Random integer coordinates are drawn uniformly from this symmetric range;
#: small enough to keep fraction-free elimination tractable, large enough to
#: make degenerate samples practically impossible.
COORDINATE_BOUND = 10_000


@dataclass(frozen=True)
class PolynomialMap:
    """An indexed family of polynomials over a common parameter ring."""

    parameters: VariableTable
    weights: tuple[int, ...]
    coordinates: tuple[Word, ...]
    entries: tuple[MultiPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "coordinates", tuple(tuple(w) for w in self.coordinates))
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.weights) != len(self.parameters):
            raise ValueError("one weight per parameter required")
        if len(self.coordinates) != len(self.entries):
            raise ValueError("one entry per coordinate required")
        for entry in self.entries:
            if entry.table != self.parameters:
                raise ValueError("entry over a different parameter ring")

    def weighted_degree_set(self) -> set[int]:
        """All weighted degrees appearing across entry monomials."""
        degrees = set()
        for entry in self.entries:
            for mono in entry.terms:
                degrees.add(sum(e * w for e, w in zip(mono, self.weights)))
        return degrees


def tensor_parametrization(tensor: Tensor, k: int | None = None) -> PolynomialMap:
    """The coordinate map of a homogeneous tensor: one entry per word of
    length k in lexicographic order, zero where the tensor has no term."""
    if k is None:
        levels = tensor.levels()
        if len(levels) != 1:
            raise ValueError("mixed-level tensor: pass the level explicitly")
        k = levels.pop()
    level_part = tensor.level(k)
    d = tensor.alphabet
    coordinates = tuple(product(range(1, d + 1), repeat=k))
    entries = tuple(level_part.coefficient(w) for w in coordinates)
    return PolynomialMap(tensor.table, (1,) * len(tensor.table), coordinates, entries)


def _lyndon_parameter_name(word: Word) -> str:
    joiner = "" if max(word) <= 9 else "_"
    return "y_" + joiner.join(str(i) for i in word)


def universal_variety_map(d: int, k: int) -> PolynomialMap:
    """The level-k exponential parametrization of the universal variety.

    One parameter per Lyndon word of length <= k, graded by word length; the
    entries are the level-k component of exp applied to the generic Lie
    element in the bracket basis.
    """
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    words = lyndon_words(d, k)
    table = VariableTable(tuple(_lyndon_parameter_name(w) for w in words))
    weights = tuple(len(w) for w in words)
    generic = Tensor.zero(d, table)
    for name, word in zip(table.names, words):
        generic = generic + lie_basis(word, d, table) * MultiPoly.variable(table, name)
    parametrization = tensor_parametrization(tensor_exp(generic, k), k)
    result = PolynomialMap(table, weights, parametrization.coordinates, parametrization.entries)
    if result.weighted_degree_set() - {k}:
        raise AssertionError("universal parametrization is not weighted-homogeneous")
    return result


def signature_variety_map(family: str, d: int, k: int, m: int) -> PolynomialMap:
    """The level-k signature parametrization of the family of piecewise
    linear paths with m pieces ("pl") or polynomial paths of degree m
    ("poly") in d dimensions: d*m parameters a_i_j, entries homogeneous of
    degree k."""
    if d < 1 or k < 1 or m < 1:
        raise ValueError("need d, k, m >= 1")
    family = family.lower()
    if family in ("pl", "piecewise-linear", "axis"):
        core = caxis_tensor
    elif family in ("poly", "polynomial", "monomial"):
        core = cmon_tensor
    else:
        raise ValueError(f"unknown family {family!r}")
    names = tuple(f"a_{i}_{j}" for i in range(1, d + 1) for j in range(1, m + 1))
    table = VariableTable(names)
    # action matrix: rows indexed by the pieces (the core alphabet), columns
    # by the ambient dimension, entry (j, i) the parameter a_i_j
    generic = DenseMatrix.from_rows(
        [
            [MultiPoly.variable(table, f"a_{i}_{j}") for i in range(1, d + 1)]
            for j in range(1, m + 1)
        ],
        table=table,
    )
    tensor = matrix_action(generic, core(m, k, table))
    result = tensor_parametrization(tensor, k)
    if result.weighted_degree_set() - {k}:
        raise AssertionError("signature parametrization is not homogeneous of degree k")
    return result


def variety_map(family: str, d: int, k: int, m: int | None = None) -> PolynomialMap:
    """Dispatch: "universal" ignores m; "pl" and "poly" require it."""
    if family.lower() == "universal":
        return universal_variety_map(d, k)
    if m is None:
        raise ValueError(f"family {family!r} needs the number of pieces m")
    return signature_variety_map(family, d, k, m)


# ---------------------------------------------------------------------------
# Dimension and ideal-generator counting
# ---------------------------------------------------------------------------


def _random_point(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-COORDINATE_BOUND, COORDINATE_BOUND)) for _ in range(n))


def _float_rank(rows) -> int:
    matrix = np.array([[float(x) for x in row] for row in rows], dtype=float)
    if matrix.size == 0:
        return 0
    singular = np.linalg.svd(matrix, compute_uv=False)
    if singular.size == 0 or singular[0] == 0.0:
        return 0
    return int((singular > 1e-8 * singular[0]).sum())


def affine_image_dimension(
    f: PolynomialMap, trials: int = 3, seed: int = 0, method: str = "exact"
) -> int:
    """The affine dimension of the closure of the image: the maximum exact
    Jacobian rank over `trials` random integer points.

    ``method="float"`` switches to an SVD rank with a relative 1e-8 threshold;
    it is a speedup for large instances only and is cross-checked against the
    exact path by the test suite.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if method not in ("exact", "float"):
        raise ValueError(f"unknown method {method!r}")
    rng = random.Random(seed)
    names = f.parameters.names
    jacobian = [[entry.diff(name) for name in names] for entry in f.entries]
    best = 0
    for _ in range(trials):
        point = _random_point(rng, len(names))
        rows = [[cell.eval(point) for cell in row] for row in jacobian]
        rank = _float_rank(rows) if method == "float" else exact_rank(rows)
        best = max(best, rank)
    return min(best, len(names), len(f.entries))


@dataclass(frozen=True)
class IdealCounts:
    """Exact counts of low-degree elements of the vanishing ideal."""

    linear: int
    quadrics: int | None
    linear_basis: tuple
    quadric_basis: tuple | None


def _pair_index(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n) for b in range(a, n)]


def low_degree_ideal_counts(
    f: PolynomialMap,
    max_degree: int = 2,
    samples: int | str = "auto",
    seed: int = 0,
    with_bases: bool = False,
) -> IdealCounts:
    """Count independent linear forms and minimal quadric generators of the
    ideal of the image closure, by exact nullspaces of evaluation matrices.

    The quadric count removes products of the linear forms with coordinates;
    those products are generically independent (checked by an exact rank
    computation, which doubles as the fallback when they are not).
    """
    if max_degree not in (1, 2):
        raise ValueError("max_degree must be 1 or 2")
    n = len(f.entries)
    n_pairs = len(_pair_index(n))
    required = n if max_degree == 1 else n + n_pairs
    if samples == "auto":
        samples = required + 10
    if samples < required:
        raise ValueError(
            f"insufficient samples: need at least {required} for degree <= {max_degree} "
            f"monomials in {n} coordinates; raise `samples`"
        )
    rng = random.Random(seed)
    points = [_random_point(rng, len(f.parameters)) for _ in range(samples)]
    values = [[entry.eval(point) for entry in f.entries] for point in points]

    linear_dim = n - exact_rank(values)
    linear_basis = tuple(tuple(v) for v in nullspace_basis(values)) if linear_dim else ()
    if max_degree == 1:
        return IdealCounts(linear_dim, None, linear_basis, None)

    pairs = _pair_index(n)
    degree_two = [
        [row[a] * row[b] for a, b in pairs]
        for row in values
    ]
    vanishing_quadrics = n_pairs - exact_rank(degree_two)

    # dimension of (linear forms) * (coordinates) inside the quadrics
    if linear_dim:
        pair_pos = {pair: idx for idx, pair in enumerate(pairs)}
        rows = []
        for vec in linear_basis:
            for i in range(n):
                row = [Fraction(0)] * n_pairs
                for a, coeff in enumerate(vec):
                    if coeff:
                        row[pair_pos[(min(a, i), max(a, i))]] += coeff
                rows.append(row)
        products_dim = exact_rank(rows)
    else:
        products_dim = 0
    new_quadrics = vanishing_quadrics - products_dim

    quadric_basis = None
    if with_bases:
        quadric_basis = tuple(tuple(v) for v in nullspace_basis(degree_two))
    return IdealCounts(linear_dim, new_quadrics, linear_basis, quadric_basis)


def evaluate_linear_form(vec: Sequence[Fraction], values: Sequence[Fraction]) -> Fraction:
    return sum((c * v for c, v in zip(vec, values)), Fraction(0))


def evaluate_quadric(vec: Sequence[Fraction], values: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for (a, b), coeff in zip(_pair_index(len(values)), vec):
        if coeff:
            total += coeff * values[a] * values[b]
    return total


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------


def polynomial_map_to_json(f: PolynomialMap) -> dict:
    return {
        "parameters": [
            {"name": name, "weight": weight}
            for name, weight in zip(f.parameters.names, f.weights)
        ],
        "coordinates": [list(w) for w in f.coordinates],
        "entries": [str(entry) for entry in f.entries],
    }


def polynomial_map_from_json(data) -> PolynomialMap:
    if isinstance(data, str):
        data = json.loads(data)
    table = VariableTable(tuple(p["name"] for p in data["parameters"]))
    weights = tuple(int(p["weight"]) for p in data["parameters"])
    coordinates = tuple(tuple(int(i) for i in w) for w in data["coordinates"])
    entries = tuple(parse_poly(text, table) for text in data["entries"])
    return PolynomialMap(table, weights, coordinates, entries)


def _script_names(f: PolynomialMap) -> tuple[list[str], list[str]]:
    params = [name.replace("_", "") for name in f.parameters.names]
    if len(set(params)) != len(params):
        params = [f"p{i}" for i in range(len(params))]
    coords = ["s" + "".join(str(i) for i in w) for w in f.coordinates]
    if len(set(coords)) != len(coords):
        coords = [f"s{i}" for i in range(len(coords))]
    return params, coords


def _m2_poly(poly: MultiPoly, names: Sequence[str]) -> str:
    if not poly.terms:
        return "0"
    pieces = []
    for mono, coeff in poly.sorted_terms():
        factors = []
        mag = abs(coeff)
        if mag != 1 or not any(mono):
            factors.append(str(mag))
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        pieces.append(("-" if coeff < 0 else "+", "*".join(factors)))
    sign, body = pieces[0]
    text = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        text += f"{sign}{body}"
    return text


def export_map(f: PolynomialMap, format: str = "cas-script") -> str:
    """Render the map as a self-contained Macaulay2 script (ring
    declarations, the ring map, and kernel/dimension/degree commands) or as
    the JSON schema. Output is byte-stable for identical inputs."""
    if format == "json":
        return json.dumps(polynomial_map_to_json(f), indent=2, sort_keys=True)
    if format != "cas-script":
        raise ValueError(f"unknown export format {format!r}")
    params, coords = _script_names(f)
    degrees = ", ".join(str(w) for w in f.weights)
    lines = [
        "-- exact polynomial parametrization; kernel/dimension/degree are",
        "-- delegated to this script for external verification",
        f"R = QQ[{', '.join(params)}, Degrees => {{{degrees}}}];",
        f"S = QQ[{', '.join(coords)}];",
        "f = map(R, S, {",
    ]
    for i, entry in enumerate(f.entries):
        comma = "," if i + 1 < len(f.entries) else ""
        lines.append(f"    {_m2_poly(entry, params)}{comma}")
    lines += [
        "});",
        "I = kernel f;",
        "dim I",
        "degree I",
        "betti mingens I",
    ]
    return "\n".join(lines) + "\n"
