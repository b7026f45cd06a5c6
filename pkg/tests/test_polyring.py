from fractions import Fraction

import pytest
from hypothesis import given, settings

from singidx.errors import ContextMismatch, ParseError
from singidx.polyring import (GLOBAL, GT, LT, RingContext, compare_monomials,
                              format_poly, parse_many, parse_poly, poly_arith)

from conftest import polynomials

R2 = RingContext(("x", "y"))
R3 = RingContext(("x", "y", "z"))
G2 = R2.with_ordering(GLOBAL)


@pytest.mark.parametrize("text, expected", [
    ("3*x^2*y - 1/2*y", "3*x^2*y - 1/2*y"),
    ("y - 1/2*y + x^2*y*3", "3*x^2*y + 1/2*y"),
    ("-x", "-x"),
    ("x^2 + 2*x*y + y^2 - x*y", "x^2 + x*y + y^2"),
    ("0", "0"),
    ("2/4", "1/2"),
    ("x*x*x - x^3", "0"),
    ("- x^2 + y^2", "-x^2 + y^2"),
    ("  x  *  3 ", "3*x"),
])
def test_parse_and_print_global(text, expected):
    assert format_poly(parse_poly(text, G2)) == expected


def test_local_order_prints_lowest_degree_first():
    p = parse_poly("x^2 + y + 1", R2)
    assert format_poly(p) == "1 + y + x^2"
    assert p.leading_monomial == (0, 0)


def test_leading_term_tie_break_prefers_earlier_variable():
    p = parse_poly("y^2 + x*y + x^2", R2)
    assert p.leading_monomial == (2, 0)


@pytest.mark.parametrize("m1, m2, local, glob", [
    ((0, 0), (1, 0), GT, LT),
    ((1, 0), (0, 1), GT, GT),
    ((2, 0), (1, 1), GT, GT),
    ((0, 3), (2, 0), LT, GT),
    ((1, 1), (1, 1), 0, 0),
])
def test_compare_monomials(m1, m2, local, glob):
    assert compare_monomials(m1, m2, R2) == local
    assert compare_monomials(m1, m2, G2) == glob


@pytest.mark.parametrize("text, position", [
    ("x + w", 4),
    ("x +", 3),
    ("x ** 2", 3),
    ("(x + y)", 0),
    ("1/x", 2),
    ("x^y", 2),
])
def test_parse_errors_report_position(text, position):
    with pytest.raises(ParseError) as err:
        parse_poly(text, R3)
    assert err.value.position == position


def test_complex_scalar_rejected_with_explanation():
    with pytest.raises(ParseError, match="complex scalars"):
        parse_poly("x + I*y", R2)


def test_division_by_zero_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_poly("3/0*x", R2)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        parse_poly("x", R2) + parse_poly("x", R3)


def test_poly_arith_and_substitute():
    x, y = R2.gens()
    assert poly_arith("mul", x + y, x - y) == x ** 2 - y ** 2
    assert (x ** 2 + y).substitute({"x": y}) == y ** 2 + y
    assert parse_many(["x", "y"], R2) == (x, y)


def test_degree_order_and_truncate():
    p = parse_poly("1 + x*y + y^4", R2)
    assert p.degree() == 4 and p.order() == 0
    assert p.truncate(3) == parse_poly("1 + x*y", R2)
    assert p.constant_term() == 1


@given(polynomials(R3))
@settings(max_examples=150, deadline=None)
def test_print_parse_round_trip(p):
    assert parse_poly(format_poly(p), R3) == p
    q = p.in_context(R3.with_ordering(GLOBAL))
    assert parse_poly(format_poly(q), q.ctx) == q


@given(polynomials(R2), polynomials(R2), polynomials(R2))
@settings(max_examples=100, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R2.zero()
    assert a * R2.one() == a


@given(polynomials(R2), polynomials(R2))
@settings(max_examples=100, deadline=None)
def test_leibniz_rule(a, b):
    for v in range(2):
        assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)


@given(polynomials(R3))
@settings(max_examples=100, deadline=None)
def test_terms_sorted_descending(p):
    keys = [p.ctx.sort_key(e) for _, e in p.terms]
    assert keys == sorted(keys, reverse=True)
    assert all(c != 0 for c, _ in p.terms)


def test_coefficients_are_exact_rationals():
    p = parse_poly("1/3*x + 2/3*x", R2)
    assert p == R2.var("x")
    assert isinstance(p.leading_coefficient, Fraction)
