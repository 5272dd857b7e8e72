import pytest
from hypothesis import given

from tests.strategies import trees
from treelattice.core.base import TreeSyntaxError
from treelattice.core.tree import LEAF, Y, format_tree, left_comb, right_comb
from treelattice.syntax.parser import parse_tree


def test_parse_basic_literals():
    assert parse_tree(".") == LEAF
    assert parse_tree("(..)") == Y
    assert parse_tree("(.(..))") == right_comb(2)
    assert parse_tree("(((..).).)") == left_comb(3)


@given(trees(max_degree=7))
def test_format_then_parse(t):
    assert parse_tree(format_tree(t)) == t


@pytest.mark.parametrize(
    "text, offset",
    [
        ("((.)", 3),
        ("", 0),
        ("(..", 3),
        ("(..))", 4),
        ("( ..)", 1),
        ("(.x)", 2),
        ("..", 1),
        (")", 0),
    ],
)
def test_parse_errors_carry_offset(text, offset):
    with pytest.raises(TreeSyntaxError) as err:
        parse_tree(text)
    assert err.value.offset == offset
    assert f"offset {offset}" in str(err.value)


def test_deep_comb_does_not_recurse():
    text = "(." * 5000 + "." + ")" * 5000
    t = parse_tree(text)
    assert t.degree == 5000
    assert format_tree(t) == text
