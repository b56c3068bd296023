import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ultrafun.errors import (DivisionByZero, EvaluationFailure, ExprSyntaxError,
                             NotDifferentiable, UnknownFunction)
from ultrafun.exprlang import (BinOp, Call, Const, Neg, Num, Poly, Var, eval_expr, parse,
                               symbolic_derivative, to_string)


@pytest.mark.parametrize("src, x, want", [
    ("exp(-x^2/2)", 0.0, 1.0),
    ("ramp(x)", -1.0, 0.0),
    ("ramp(x)", 2.0, 2.0),
    ("x^3 + 1", 2.0, 9.0),
    ("abs(x)", -3.0, 3.0),
    ("gauss(x)", 1.0, math.exp(-0.5)),
    ("poly(x, 1, -2, 3)", 2.0, 9.0),
    ("2^3^2", 0.0, 512.0),            # right-associative
    ("-x^2", 3.0, -9.0),              # power binds tighter than unary minus
    ("8 / 4 / 2", 0.0, 1.0),          # left-associative
    ("exp(i * pi)", 0.0, -1.0),
    ("  x*  (x -1 )", 3.0, 6.0),
])
def test_examples(src, x, want):
    assert eval_expr(parse(src), x) == pytest.approx(want)


def test_incomplete_input_reports_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse("x *")
    assert info.value.offset == 3
    assert "x" in info.value.expected and "(" in info.value.expected


def test_no_implicit_multiplication():
    with pytest.raises(ExprSyntaxError) as info:
        parse("2x")
    assert info.value.offset == 1
    assert "*" in info.value.expected


def test_unbalanced_parenthesis():
    with pytest.raises(ExprSyntaxError) as info:
        parse("(x + 1")
    assert ")" in info.value.expected


def test_offsets_are_bytes():
    with pytest.raises(ExprSyntaxError) as info:
        parse("x + é")
    assert info.value.offset == 4
    with pytest.raises(ExprSyntaxError) as info:
        parse("(é")
    assert info.value.offset == 1


def test_unknown_function():
    with pytest.raises(UnknownFunction) as info:
        parse("1 + tanh(x)")
    assert info.value.name == "tanh" and info.value.offset == 4


def test_unknown_variable():
    with pytest.raises(ExprSyntaxError):
        parse("y + 1")


def test_division_by_zero_names_the_point():
    with pytest.raises(DivisionByZero) as info:
        eval_expr(parse("1/x"), 0.0)
    assert info.value.x == 0.0
    with pytest.raises(DivisionByZero):
        eval_expr(parse("x^-1"), np.array([1.0, 0.0]))


def test_overflow_is_an_evaluation_failure():
    with pytest.raises(EvaluationFailure):
        eval_expr(parse("exp(x^2)"), 40.0)


def test_vectorised_and_real_for_real_trees():
    xs = np.linspace(-2, 2, 9)
    out = eval_expr(parse("sin(x) * x^2 + abs(x)"), xs)
    assert out.shape == xs.shape
    np.testing.assert_allclose(out.imag, 0)
    np.testing.assert_allclose(out.real, np.sin(xs) * xs ** 2 + np.abs(xs))


def test_derivative_examples():
    g = symbolic_derivative(parse("gauss(x)"))
    assert eval_expr(g, 0.0) == 0
    assert eval_expr(g, 1.0) == pytest.approx(-math.exp(-0.5))
    assert eval_expr(symbolic_derivative(parse("x^2")), 3.0) == pytest.approx(6.0)
    # the result is printable and reparses
    assert parse(to_string(g)) == g


@pytest.mark.parametrize("src", ["ramp(x)", "abs(x^2 - 1)", "x * ramp(x)"])
def test_kinks_are_not_differentiable(src):
    with pytest.raises(NotDifferentiable):
        symbolic_derivative(parse(src))


def test_constant_kink_argument_is_fine():
    assert eval_expr(symbolic_derivative(parse("abs(-2) * x")), 1.0) == pytest.approx(2.0)


SMOOTH = [
    "gauss(x)", "exp(-x^2/2)", "x * exp(-x^2)", "sin(x) * x^2", "cos(3 * x) / (2 + x^2)",
    "poly(x, 1, -2, 0.5, 0.25)", "exp(sin(x))", "(1 + x^2)^0.5", "log(2 + x^2)", "x^x^0.5",
    "exp(i * 2 * x)", "(x^2 + 1)^-2",
]


@pytest.mark.parametrize("src", SMOOTH)
def test_derivative_matches_central_differences(src, rng):
    e = parse(src)
    d = symbolic_derivative(e)
    xs = rng.uniform(0.2, 3.0, 100) if "x^x" in src else rng.uniform(-3, 3, 100)
    h = 1e-5
    fd = (eval_expr(e, xs + h) - eval_expr(e, xs - h)) / (2 * h)
    exact = eval_expr(d, xs)
    assert np.all(np.abs(exact - fd) <= 1e-6 * np.maximum(1.0, np.abs(exact)))


# -- parse/print fixpoint ------------------------------------------------------

_literals = st.one_of(st.integers(0, 1000).map(float),
                      st.floats(0, 1e6, allow_nan=False, allow_infinity=False),
                      st.sampled_from([1e-5, 2.5e-12, 3e20]))
_leaves = st.one_of(_literals.map(Num), st.just(Var()), st.sampled_from([Const("i"), Const("pi")]))


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.tuples(st.sampled_from("+-*/^"), children, children).map(lambda t: BinOp(*t)),
        st.tuples(st.sampled_from(["exp", "sin", "cos", "log", "abs", "ramp", "gauss"]), children)
          .map(lambda t: Call(*t)),
        st.tuples(children, st.lists(st.floats(-100, 100, allow_nan=False), min_size=1, max_size=4))
          .map(lambda t: Poly(t[0], tuple(t[1]))),
    )


trees = st.recursive(_leaves, _extend, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(trees)
def test_print_parse_fixpoint(e):
    text = to_string(e)
    again = parse(text)
    assert again == e
    assert to_string(again) == text
