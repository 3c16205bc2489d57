from fractions import Fraction

import pytest
from hypothesis import given

from rieszlab.pl import ONE, Add, Const, Generator, Meet, Scale, Unit, evaluate, gen
from rieszlab.sexpr import TermSyntaxError, format_term, parse_term

from .conftest import terms


def test_parse_examples():
    t = parse_term("(meet (gen 0) (+ (unit) (scale (rat -1 1) (gen 0))))")
    assert t == Meet(Generator(0), Add(Unit(), Scale(Fraction(-1), Generator(0))))
    assert evaluate(t, (Fraction(1, 4),)) == Fraction(1, 4)
    assert parse_term("(unit)") == Unit()


def test_whitespace_is_free():
    a = parse_term("( join\n  (gen 0)\t(rat 3 6) )")
    assert format_term(a) == "(join (gen 0) (rat 1 2))"


@pytest.mark.parametrize("text, line, col", [
    ("(rat 1 0)", 1, 8),
    ("(gen 2)", 1, 6),
    ("(unit) (unit)", 1, 8),
    ("(frob (unit))", 1, 2),
    ("(+ (unit)\n  (gen x))", 2, 8),
    ("(+ (unit)", 1, 10),
])
def test_syntax_errors_carry_positions(text, line, col):
    with pytest.raises(TermSyntaxError) as info:
        parse_term(text, n=2)
    assert (info.value.line, info.value.col) == (line, col)


def test_zero_denominator_message():
    with pytest.raises(TermSyntaxError, match="zero denominator"):
        parse_term("(rat 1 0)")


@given(terms(3, max_leaves=12))
def test_round_trip(t):
    text = format_term(t)
    back = parse_term(text)
    assert back == t
    assert format_term(back) == text


def test_str_uses_the_text_format():
    assert str(gen(0) + ONE) == "(+ (gen 0) (unit))"
    assert format_term(Const(Fraction(-2, 4))) == "(rat -1 2)"
