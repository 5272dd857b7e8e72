import pytest
from hypothesis import given

from tests.strategies import lincombs
from treelattice.core.base import DegreeError
from treelattice.core.dendriform import (
    LinComb,
    check_dendriform_axioms,
    check_star_associative,
    check_star_mirror,
    check_star_oracle,
    check_star_split,
    mirror_lin,
    over_lin,
    prec,
    star,
    star_recursive,
    succ,
    under_lin,
    unit,
    wedge_lin,
)
from treelattice.core.linalg import IntVector
from treelattice.core.tree import LEAF, Y, enumerate_trees, over, under, wedge
from treelattice.syntax.parser import parse_tree

y = LinComb.of(Y)
left2 = LinComb.of(over(Y, Y))
right2 = LinComb.of(under(Y, Y))


def test_lincomb_drops_zeros_and_validates_ranks():
    a = LinComb(2, {0: 3, 1: 0})
    assert len(a) == 1
    assert a.coefficient(under(Y, Y)) == 3
    assert a.coefficient(over(Y, Y)) == 0
    with pytest.raises(DegreeError):
        LinComb(2, {2: 1})


def test_lincomb_arithmetic():
    a = 2 * right2 - left2
    assert a == LinComb(2, {0: 2, 1: -1})
    assert a + (-a) == LinComb.zero(2)
    assert not LinComb.zero(2)
    assert a * 3 == 3 * a
    with pytest.raises(DegreeError):
        a + y


def test_lincomb_text_form():
    assert str(star(y, y)) == "1*((..).) + 1*(.(..))"
    assert str(-right2 + 2 * left2) == "2*((..).) + -1*(.(..))"
    assert str(LinComb.zero(3)) == "0"


def test_lincomb_vector_round_trip():
    a = LinComb(3, {0: 1, 4: -2})
    assert a.to_vector() == IntVector([1, 0, 0, 0, -2])
    assert LinComb.from_vector(3, a.to_vector()) == a
    assert LinComb.from_terms(2, [(over(Y, Y), 1), (over(Y, Y), 1)]) == 2 * left2


def test_star_examples():
    assert star(y, y) == left2 + right2
    for n in range(4):
        for t in enumerate_trees(n):
            a = LinComb.of(t)
            assert star(unit(), a) == a
            assert star(a, unit()) == a
    yyy = star(star(y, y), y)
    assert yyy == star(y, star(y, y))
    assert len(yyy) == 5
    assert all(c > 0 for _, c in yyy.items())


def test_star_recursive_examples():
    assert star_recursive(y, y) == star(y, y)
    assert star_recursive(unit(), unit()) == unit()


@given(lincombs(2), lincombs(3))
def test_star_bilinear(a, b):
    expected = LinComb.zero(5)
    for s, x in a.terms():
        for t, z in b.terms():
            expected = expected + x * z * star(LinComb.of(s), LinComb.of(t))
    assert star(a, b) == expected
    assert star_recursive(a, b) == expected


def test_half_products_on_y():
    assert succ(y, y) == left2
    assert prec(y, y) == right2


def test_half_products_reject_leaf():
    with pytest.raises(DegreeError):
        prec(unit(), y)
    with pytest.raises(DegreeError):
        succ(y, unit())


def test_grafts_lifted():
    assert under_lin(y, y) == right2
    assert over_lin(right2, unit()) == right2
    assert under_lin(2 * y, 3 * y) == 6 * right2
    assert wedge_lin(unit(), unit()) == y
    assert wedge_lin(y, unit()) == left2
    t = parse_tree("((..)(..))")
    assert mirror_lin(LinComb.of(t)) == LinComb.of(t)
    assert mirror_lin(left2) == right2


def test_wedge_lin_matches_tree_wedge():
    for s in enumerate_trees(2):
        for t in enumerate_trees(1):
            assert wedge_lin(LinComb.of(s), LinComb.of(t)) == LinComb.of(wedge(s, t))


@pytest.mark.parametrize("max_total", [3, 6])
def test_dendriform_axioms(max_total):
    report = check_dendriform_axioms(max_total)
    assert report.passed, report.summary()
    assert report.failed_equations == ()


def test_axioms_single_triple_at_degree_three():
    report = check_dendriform_axioms(3)
    # Eqs (1)-(3) on the single triple (Y, Y, Y)
    assert report.cases == 3


def test_corrupted_split_fails_eq2():
    report = check_dendriform_axioms(4, succ=prec)
    assert not report.passed
    assert "Eq(2)" in report.failed_equations
    assert report.counterexample is not None


def test_star_splits_into_half_products():
    report = check_star_split(6)
    assert report.passed, report.summary()


def test_star_oracle_exhaustive_and_random():
    report = check_star_oracle(6, random_pairs=500, random_degrees=(7, 8), seed=11)
    assert report.passed, report.summary()
    exhaustive = sum(
        len(enumerate_trees(a)) * len(enumerate_trees(t - a)) for t in range(7) for a in range(t + 1)
    )
    assert report.cases == exhaustive + 500


def test_star_associative():
    assert check_star_associative(6).passed


def test_star_mirror():
    assert check_star_mirror(6).passed


def test_leaf_combinations_are_scalars():
    three = 3 * unit()
    a = LinComb.of(parse_tree("(.(..))"))
    assert star(three, a) == 3 * a
    assert star(a, three) == 3 * a
    assert LinComb.of(LEAF) == unit()
