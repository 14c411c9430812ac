import pytest

from randgen import F3
from wittforge.parse import ParseError, parse_elem, tokenize


def test_tokens_and_positions():
    kinds = [k for k, _, _ in tokenize("a*(b+12)^2")]
    assert kinds == ["name", "op", "op", "name", "op", "num", "op", "op", "num", "end"]


@pytest.mark.parametrize(
    "text, expected",
    [
        ("(a+b)*(a+b)", "a^2+b^2"),
        ("1/(b*c)", "1/(b*c)"),
        ("a*b + 1", "a*b+1"),
        ("3*a", "a"),
        ("a/b/c", "a*1/(b*c)"),
        ("(a + c) * 1/(a*c)", "(a+c)*1/(a*c)"),
    ],
)
def test_examples(text, expected):
    assert str(parse_elem(text, F3)) == expected


@pytest.mark.parametrize(
    "text, pos",
    [("a + x", 4), ("a +", 3), ("(a", 2), ("a ^ b", 4), ("a # b", 2), ("1/(a+a)", 1)],
)
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_elem(text, F3)
    assert exc.value.pos == pos
