import random
from fractions import Fraction

import pytest

from pathsig.algebra import (
    RATIONALS,
    DenseMatrix,
    MultiPoly,
    ParseError,
    RingMismatchError,
    UniPoly,
    VariableTable,
    exact_nullspace_dim,
    exact_rank,
    nullspace_basis,
    parse_poly,
    parse_unipoly,
    substitute,
)

X12 = VariableTable(("x_1", "x_2"))


def x(i):
    return MultiPoly.variable(X12, f"x_{i}")


def rand_fraction(rng, bound=20):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def rand_poly(rng, table, max_degree=3, n_terms=4):
    terms = {}
    for _ in range(n_terms):
        mono = tuple(rng.randint(0, max_degree) for _ in table.names)
        terms[mono] = rand_fraction(rng)
    return MultiPoly(table, terms)


def rand_unipoly(rng, table, max_degree=4):
    coeffs = {d: rand_poly(rng, table, max_degree=2, n_terms=2) for d in range(max_degree + 1)}
    return UniPoly(table, coeffs)


# -- rationals --------------------------------------------------------------


def test_fraction_normalization():
    f = Fraction(6, -4)
    assert f.denominator > 0
    assert (abs(f.numerator), f.denominator) == (3, 2)


def test_rational_field_axioms_random():
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (rand_fraction(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        s = a + b
        from math import gcd

        assert gcd(abs(s.numerator), s.denominator) == 1
        assert s.denominator > 0


# -- MultiPoly ring operations ----------------------------------------------


def test_add_cancellation():
    assert (x(1) + x(2)) + (x(1) - x(2)) == 2 * x(1)


def test_mul_basic():
    assert x(1) * x(2) == MultiPoly(X12, {(1, 1): 1})


def test_mul_then_scalar():
    p = (2 * x(1)) * (3 * x(2)) * Fraction(1, 2)
    assert p == 3 * x(1) * x(2)


def test_table_mismatch_errors():
    other = VariableTable(("y",))
    with pytest.raises(RingMismatchError):
        x(1) + MultiPoly.variable(other, "y")
    with pytest.raises(RingMismatchError):
        x(1) * MultiPoly.variable(other, "y")


def test_zero_coefficients_pruned():
    p = x(1) - x(1)
    assert p.is_zero()
    assert p.terms == {}


def test_equal_tables_interchangeable():
    t1 = VariableTable(("a", "b"))
    t2 = VariableTable(("a", "b"))
    assert MultiPoly.variable(t1, "a") == MultiPoly.variable(t2, "a")


# -- UniPoly calculus ---------------------------------------------------------


def test_integrate_t():
    t = UniPoly.t(RATIONALS)
    assert t.integrate() == UniPoly(RATIONALS, {2: Fraction(1, 2)})


def test_integrate_zero():
    assert UniPoly.zero(RATIONALS).integrate().is_zero()


def test_integrate_termwise():
    p = UniPoly(RATIONALS, {2: 3, 1: 2, 0: 1})
    assert p.integrate() == UniPoly(RATIONALS, {3: 1, 2: 1, 1: 1})


def test_integrate_starts_at_zero():
    rng = random.Random(2)
    for _ in range(50):
        q = rand_unipoly(rng, X12).integrate()
        assert 0 not in q.coeffs


def test_derivative_inverts_integrate():
    rng = random.Random(3)
    for _ in range(100):
        p = rand_unipoly(rng, X12)
        assert p.integrate().derivative() == p


def test_eval_at_one():
    assert UniPoly(RATIONALS, {2: Fraction(1, 2)}).eval_at_one() == MultiPoly.const(
        RATIONALS, Fraction(1, 2)
    )
    p = UniPoly(X12, {1: 3 * x(1), 2: x(2)})
    assert p.eval_at_one() == 3 * x(1) + x(2)


def test_integral_of_product_matches_known_entry():
    # antiderivative of (2 x_1)(3 x_2) t, evaluated at 1
    p = UniPoly(X12, {1: (2 * x(1)) * (3 * x(2))})
    assert p.integrate().eval_at_one() == 3 * x(1) * x(2)


def test_riemann_sums_bracket_monomial_integrals():
    # For c t^m with m >= 1 the integrand is monotone on [0, 1], so the left
    # and right Riemann sums bracket the exact integral and the bracket width
    # is |c|/n exactly.
    rng = random.Random(4)
    n = 64
    for _ in range(50):
        m = rng.randint(1, 6)
        c = abs(rand_fraction(rng)) + 1
        exact = UniPoly(RATIONALS, {m: c}).integrate().eval_at_one().constant_value()
        left = sum(c * Fraction(i, n) ** m for i in range(n)) / n
        right = sum(c * Fraction(i, n) ** m for i in range(1, n + 1)) / n
        assert left <= exact <= right
        assert right - left == c / n


def test_compose_affine():
    # p(t) = t^2 + t composed with t/2 gives t^2/4 + t/2
    p = UniPoly(RATIONALS, {2: 1, 1: 1})
    half_t = UniPoly(RATIONALS, {1: Fraction(1, 2)})
    assert p.compose(half_t) == UniPoly(RATIONALS, {2: Fraction(1, 4), 1: Fraction(1, 2)})


def test_compose_random_matches_eval():
    rng = random.Random(5)
    for _ in range(40):
        p = rand_unipoly(rng, RATIONALS, max_degree=3)
        q = rand_unipoly(rng, RATIONALS, max_degree=2)
        composed = p.compose(q)
        # evaluating at t=1 must agree with p evaluated at q(1)
        inner = q.eval_at_one().constant_value()
        direct = sum(
            (c.constant_value() * inner**d for d, c in p.coeffs.items()),
            Fraction(0),
        )
        assert composed.eval_at_one().constant_value() == direct


# -- differentiation / evaluation ---------------------------------------------


def test_diff_examples():
    p = MultiPoly(X12, {(2, 1): 1})  # x_1^2 x_2
    assert p.diff("x_1") == MultiPoly(X12, {(1, 1): 2})
    assert x(1).diff("x_2").is_zero()
    q = 3 * x(1) * x(2) + x(1) ** 2
    assert q.diff("x_1") == 3 * x(2) + 2 * x(1)


def test_diff_unknown_variable():
    with pytest.raises(ValueError):
        x(1).diff("z")


def test_diff_product_rule_random():
    rng = random.Random(6)
    for _ in range(100):
        p = rand_poly(rng, X12)
        q = rand_poly(rng, X12)
        for v in X12.names:
            assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)


def test_eval_examples():
    assert (x(1) * x(2)).eval([2, 3]) == 6
    const = MultiPoly.const(X12, Fraction(427, 10))
    assert const.eval([5, -7]) == Fraction(427, 10)
    # oracle: direct substitution of (9/2) x_2^2 at (0, 2) is (9/2) * 4 = 18
    p = Fraction(9, 2) * x(2) ** 2
    assert p.eval([0, 2]) == 18


def test_eval_length_mismatch():
    with pytest.raises(ValueError):
        x(1).eval([1])


def test_substitute_multipoly_at_unipolys():
    # p(x_1, x_2) = x_1^2 + x_2 at (t, t^2) -> t^2 + t^2 = 2 t^2
    p = x(1) ** 2 + x(2)
    t = UniPoly.t(RATIONALS)
    t2 = UniPoly.t(RATIONALS, 2)
    assert substitute(p, [t, t2]) == UniPoly(RATIONALS, {2: 2})


# -- exact linear algebra ------------------------------------------------------


def test_rank_identity():
    assert exact_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3


def test_rank_zero():
    assert exact_rank([[0, 0], [0, 0], [0, 0]]) == 0


def test_rank_proportional_rows():
    assert exact_rank([[1, 2], [2, 4]]) == 1


def test_rank_fractions():
    assert exact_rank([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]) == 1


def test_rank_transpose_random():
    rng = random.Random(7)
    for _ in range(100):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = [[rand_fraction(rng, 4) for _ in range(cols)] for _ in range(rows)]
        mt = [[m[i][j] for i in range(rows)] for j in range(cols)]
        assert exact_rank(m) == exact_rank(mt)


def test_rank_accepts_constant_dense_matrix():
    m = DenseMatrix.identity(3)
    assert exact_rank(m) == 3


def test_nullspace_dim_examples():
    assert exact_nullspace_dim([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 0
    assert exact_nullspace_dim([[0, 0, 0]]) == 3
    assert exact_nullspace_dim([[1, 1, 0], [0, 0, 1]]) == 1


def test_nullspace_basis_annihilates():
    rng = random.Random(8)
    for _ in range(50):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        m = [[rand_fraction(rng, 3) for _ in range(cols)] for _ in range(rows)]
        basis = nullspace_basis(m)
        assert len(basis) == exact_nullspace_dim(m)
        for vec in basis:
            for row in m:
                assert sum(a * b for a, b in zip(row, vec)) == 0


# -- dense matrices ------------------------------------------------------------


def test_dense_matrix_shape_and_transpose():
    m = DenseMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert (m.rows, m.cols) == (2, 3)
    assert m.transpose().at(2, 1).constant_value() == 6


def test_dense_matrix_rejects_ragged():
    with pytest.raises(ValueError):
        DenseMatrix.from_rows([[1, 2], [3]])


# -- text round-trips ----------------------------------------------------------


def test_poly_text_examples():
    assert str(3 * x(1) * x(2)) == "3 x_1 x_2"
    assert str(Fraction(9, 2) * x(2) ** 2) == "9/2 x_2^2"
    assert str(MultiPoly.zero(X12)) == "0"
    assert str(x(1) - x(2)) == "x_1 - x_2"


def test_parse_poly_examples():
    assert parse_poly("3 x_1 x_2", X12) == 3 * x(1) * x(2)
    assert parse_poly("9/2 x_2^2", X12) == Fraction(9, 2) * x(2) ** 2
    assert parse_poly("(x_1 + x_2)^2", X12) == (x(1) + x(2)) ** 2
    assert parse_poly("-x_1", X12) == -x(1)
    assert parse_poly("427/10", X12) == MultiPoly.const(X12, Fraction(427, 10))


def test_parse_poly_rejects_unknown_variable():
    with pytest.raises(ParseError):
        parse_poly("x_1 + z", X12)


def test_poly_text_round_trip_random():
    rng = random.Random(9)
    for _ in range(100):
        p = rand_poly(rng, X12)
        assert parse_poly(str(p), X12) == p


def test_unipoly_text_round_trip_random():
    rng = random.Random(10)
    for _ in range(100):
        p = rand_unipoly(rng, X12)
        assert parse_unipoly(str(p), X12) == p


def test_parse_unipoly_examples():
    p = parse_unipoly("3 t^3 + 2 t^2 + t", RATIONALS)
    assert p == UniPoly(RATIONALS, {3: 3, 2: 2, 1: 1})
    q = parse_unipoly("2 x_1 t", X12)
    assert q == UniPoly(X12, {1: 2 * x(1)})


def test_parse_error_reports_position():
    with pytest.raises(ParseError):
        parse_poly("x_1 + ", X12)
    with pytest.raises(ParseError):
        parse_poly("x_1 $ 2", X12)
