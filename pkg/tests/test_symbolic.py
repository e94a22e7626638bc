from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from paracontact.symbolic import (Expr, ExprSyntaxError, UndeclaredSymbolError, differentiate,
                                  evaluate_numeric, is_zero, parse_expr, to_string)

from conftest import chart_spec
from exprgen import build, central_difference, engine_to_sympy, to_sympy, to_text, trees

SPEC = chart_spec(("a",))


def P(text, spec=SPEC):
    return parse_expr(text, spec)


# -- worked examples -------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("x + x", "2*x"),
    ("(x + 1)^2 - x^2 - 2*x", "1"),
    ("exp(2*z^3) * exp(-2*z^3)", "1"),
    ("(x^2 - 1)/(x - 1)", "x + 1"),
    ("x*y/x", "y"),
    ("1/2 + 1/3", "5/6"),
    ("(x^3 - y^3)/(x - y)", "x^2 + x*y + y^2"),
    ("exp(x)^2", "exp(2*x)"),
    ("-(a - x)", "-a + x"),
])
def test_normal_form_examples(text, expected):
    assert P(text) == P(expected)


def test_quotient_compares_by_cross_multiplication():
    e = P("(x + y)/(x^2 + 1)")
    f = P("(2*x + 2*y)/(2*x^2 + 2)")
    assert e == f
    assert (e - f).is_zero()


def test_zero_division_rejected():
    with pytest.raises(ZeroDivisionError):
        P("x") / P("x - x")


def test_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as info:
        P("x + * y")
    assert info.value.position == 4


def test_undeclared_symbol_named():
    with pytest.raises(UndeclaredSymbolError) as info:
        P("x + w")
    assert info.value.name == "w"


def test_constants_have_zero_derivative():
    assert differentiate(P("a^3 + 2"), 0, SPEC).is_zero()


def test_free_function_partials_commute_in_chart():
    spec = chart_spec(())
    spec.add_free_function("f")
    f = P("f", spec)
    fxy = differentiate(differentiate(f, 0, spec), 1, spec)
    fyx = differentiate(differentiate(f, 1, spec), 0, spec)
    assert fxy == fyx
    assert str(fxy) == "f_xy"


def test_rule_symbol_derivatives():
    spec = chart_spec(())
    spec.add_rules({"E": ["0", "0", "6*z^2*E"]})
    E = P("E", spec)
    assert differentiate(E * E, 2, spec) == P("12*z^2*E^2", spec)


# -- sympy oracle ----------------------------------------------------------

@settings(max_examples=200)
@given(trees)
def test_arithmetic_agrees_with_sympy(t):
    e = build(t, SPEC)
    diff = sympy.simplify(engine_to_sympy(e) - to_sympy(t))
    assert diff == 0


@settings(max_examples=150)
@given(trees, st.integers(0, 2))
def test_derivative_agrees_with_sympy(t, i):
    e = build(t, SPEC)
    d = differentiate(e, i, SPEC)
    sym = sympy.Symbol("xyz"[i])
    assert sympy.simplify(engine_to_sympy(d) - sympy.diff(to_sympy(t), sym)) == 0


# -- idempotence and round trips -------------------------------------------

@settings(max_examples=1000)
@given(trees)
def test_normal_form_idempotent(t):
    """Normalizing an already normal expression changes nothing."""
    e = build(t, SPEC)
    again = Expr(dict(e.num), dict(e.den))
    assert again == e
    assert to_string(again) == to_string(e)
    assert P(to_string(e)) == e
    assert to_string(P(to_string(e))) == to_string(e)


@settings(max_examples=300)
@given(trees)
def test_parser_and_operators_agree(t):
    assert P(to_text(t)) == build(t, SPEC)


@settings(max_examples=300)
@given(trees, trees)
def test_ring_laws(s, t):
    a, b = build(s, SPEC), build(t, SPEC)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) - b == a
    assert a * (b + 1) == a * b + a


# -- zero test ---------------------------------------------------------------

@settings(max_examples=300)
@given(trees)
def test_zero_test_sound(t):
    e = build(t, SPEC)
    assert is_zero(e - e, verify=True)
    verdict = is_zero(e, verify=True)
    if not verdict:
        assert verdict.witness == e
        assert sympy.simplify(engine_to_sympy(e)) != 0
    else:
        assert sympy.simplify(to_sympy(t)) == 0


def test_zero_test_keeps_exponentials_independent():
    assert not is_zero(P("exp(x) - x - 1"), verify=True)
    assert is_zero(P("exp(x)*exp(y) - exp(x + y)"), verify=True)


# -- symbolic derivative against finite differences ------------------------

def _point(rng):
    return {s: Fraction(rng.randint(1, 40), rng.randint(1, 17)) + 2 for s in "xyza"}


@settings(max_examples=100)
@given(trees, st.integers(0, 2), st.randoms(use_true_random=False))
def test_derivative_matches_central_difference(t, i, rng):
    e = build(t, SPEC)
    d = differentiate(e, i, SPEC)
    name = "xyz"[i]
    point = _point(rng)
    try:
        exact = evaluate_numeric(d, point, digits=50)
        fd = central_difference(e, name, point)
    except ZeroDivisionError:
        return
    with mpmath.workdps(50):
        scale = max(abs(exact), mpmath.mpf(1))
        assert abs(fd - exact) / scale < mpmath.mpf(10) ** -20
