import random
from fractions import Fraction

import pytest

from hahnseries.errors import ParseError
from hahnseries.fields import QQ, prime_field, rational_functions
from hahnseries.groups import INTEGERS, RATIONALS, TRIVIAL, lex_product
from hahnseries.parser import (
    Add,
    Coefficient,
    Inv,
    Mul,
    Negate,
    Sub,
    TPower,
    Trunc,
    ast_to_series,
    max_literal_exponent,
    parse_exponent_text,
    parse_expression,
    render_expression,
)
from hahnseries.series import Horizon, coefficients_up_to, render_terms

F5 = prime_field(5)
F3X = rational_functions(3)
LEX2 = lex_product(2)


def parse_q(text):
    return parse_expression(text, INTEGERS, QQ)


def test_inverse_with_sum():
    ast = parse_q("inv(1 - t^(1) - t^(2))")
    assert isinstance(ast, Inv)
    assert isinstance(ast.child, Sub)
    assert ast.witness is None


def test_trunc_node():
    ast = parse_q("trunc(1 + 2*t^(1) + 3*t^(2), 2)")
    assert isinstance(ast, Trunc)
    assert ast.cutoff == INTEGERS.element(2)


def test_syntax_error_column():
    with pytest.raises(ParseError) as info:
        parse_expression("t^(1/2", RATIONALS, QQ)
    assert info.value.column == 7
    with pytest.raises(ParseError) as info:
        parse_q("1 + * 2")
    assert info.value.column == 5


def test_witness_syntax():
    ast = parse_q("inv(t^(3); g0=3)")
    assert ast.witness == INTEGERS.element(3)


def test_exponent_forms():
    assert parse_exponent_text("-3", INTEGERS) == INTEGERS.element(-3)
    assert parse_exponent_text("5/2", RATIONALS) == RATIONALS.element(Fraction(5, 2))
    assert parse_exponent_text("-5/2", RATIONALS) == RATIONALS.element(Fraction(-5, 2))
    assert parse_exponent_text("(1,-2)", LEX2) == LEX2.element((1, -2))
    assert parse_exponent_text("0", TRIVIAL) == TRIVIAL.zero
    with pytest.raises(ParseError):
        parse_exponent_text("1", TRIVIAL)
    with pytest.raises(ParseError):
        parse_exponent_text("(1,2,3)", LEX2)
    with pytest.raises(ParseError):
        parse_exponent_text("1/2", INTEGERS)


def test_lex_monomial():
    ast = parse_expression("t^((1,-2))", LEX2, QQ)
    assert isinstance(ast, TPower)
    assert ast.exponent == LEX2.element((1, -2))
    assert render_expression(ast) == "t^((1,-2))"


def test_fp_coefficient_division():
    ast = parse_expression("2/3", INTEGERS, F5)
    assert isinstance(ast, Coefficient)
    # 2 * 3^-1 = 2 * 2 = 4 mod 5
    assert ast.value == F5.element(4)


def test_ratfunc_coefficients():
    ast = parse_expression("(x^2+1)/x", INTEGERS, F3X)
    assert isinstance(ast, Coefficient)
    assert str(ast.value) == "(x^2+1)/x"
    ast = parse_expression("x*t^(1) + 2*x^2*t^(2)", INTEGERS, F3X)
    s = ast_to_series(ast, INTEGERS, F3X)
    tl = coefficients_up_to(s, Horizon(INTEGERS.element(3)))
    assert [str(c) for _, c in tl.terms] == ["x", "2*x^2"]


def test_paren_disambiguation():
    # series grouping when the content is not a coefficient
    ast = parse_expression("(1 + t^(1))*(1 - t^(1))", INTEGERS, F3X)
    assert isinstance(ast, Mul)
    # coefficient when it is
    ast = parse_expression("(x+1)*t^(1)", INTEGERS, F3X)
    assert isinstance(ast, Mul)
    assert isinstance(ast.left, Coefficient)


def test_unary_minus():
    ast = parse_q("-t^(1) + 1")
    assert isinstance(ast, Add)
    assert isinstance(ast.left, Negate)


def test_render_roundtrip_examples():
    for text in (
        "inv(1 - t^(1) - t^(2))",
        "trunc(1 + 2*t^(1) + 3*t^(2), 2)",
        "inv(t^(3); g0=3)",
        "1 - 1*t^(1) + 2/3*t^(3)",
        "-1/2 + 3*t^(2)*t^(4)",
        "(1 + t^(1))*(1 - t^(2))",
    ):
        ast = parse_q(text)
        assert parse_q(render_expression(ast)) == ast


def _random_ast(rng, depth=0):
    if depth >= 3 or rng.random() < 0.4:
        if rng.random() < 0.5:
            return Coefficient(QQ.element(Fraction(rng.randint(1, 9), rng.randint(1, 9))))
        return TPower(INTEGERS.element(rng.randint(-9, 9)))
    kind = rng.choice(["add", "sub", "mul", "neg", "inv", "trunc"])
    if kind in ("add", "sub", "mul"):
        cls = {"add": Add, "sub": Sub, "mul": Mul}[kind]
        return cls(_random_ast(rng, depth + 1), _random_ast(rng, depth + 1))
    if kind == "neg":
        return Negate(_random_ast(rng, depth + 1))
    if kind == "inv":
        witness = INTEGERS.element(rng.randint(-3, 3)) if rng.random() < 0.4 else None
        return Inv(_random_ast(rng, depth + 1), witness)
    return Trunc(_random_ast(rng, depth + 1), INTEGERS.element(rng.randint(-5, 5)))


def test_render_roundtrip_random():
    rng = random.Random(20240817)
    for _ in range(300):
        ast = _random_ast(rng)
        text = render_expression(ast)
        assert parse_q(text) == ast, text


def test_rendered_termlist_reparses_and_reevaluates():
    rng = random.Random(7)
    h = Horizon(INTEGERS.element(12))
    for _ in range(50):
        pairs = [
            (INTEGERS.element(rng.randint(0, 9)),
             QQ.element(Fraction(rng.randint(-5, 5), rng.randint(1, 3))))
            for _ in range(4)
        ]
        from hahnseries.series import from_terms

        s = from_terms(INTEGERS, QQ, pairs)
        tl = coefficients_up_to(s, h)
        text = render_terms(tl)
        ast = parse_q(text)
        s2 = ast_to_series(ast, INTEGERS, QQ)
        assert coefficients_up_to(s2, h) == tl


def test_max_literal_exponent():
    ast = parse_q("1 + 2*t^(3) + t^(7)*t^(2)")
    assert max_literal_exponent(ast, INTEGERS) == INTEGERS.element(7)
