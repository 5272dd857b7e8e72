import pytest
from hypothesis import given
from hypothesis import strategies as st

from tests.strategies import lincombs
from treelattice.core.anticyclic import tau_matrix
from treelattice.core.base import DegreeError
from treelattice.core.coxeter import (
    check_corollaries,
    check_prop_6_4,
    check_prop_6_6,
    check_theta_order,
    coxeter_matrix,
    theta,
    theta_apply,
    theta_inv,
    theta_inv_apply,
    theta_squared,
    verify_theorem,
)
from treelattice.core.dendriform import LinComb, over_lin, star, under_lin
from treelattice.core.tree import LEAF, Y, enumerate_trees, over, under, wedge

y = LinComb.of(Y)
left2 = LinComb.of(over(Y, Y))
right2 = LinComb.of(under(Y, Y))


def test_small_coxeter_matrices():
    assert coxeter_matrix(0).theta.tolist() == [[-1]]
    assert coxeter_matrix(1).theta.tolist() == [[-1]]
    c2 = coxeter_matrix(2)
    assert c2.theta.tolist() == [[-1, 1], [-1, 0]]
    assert (c2.theta @ c2.theta).tolist() == [[0, -1], [1, -1]]
    assert c2.theta_inv.tolist() == [[0, -1], [1, -1]]


@pytest.mark.parametrize("n", range(8))
def test_theta_times_inverse(n):
    c = coxeter_matrix(n)
    assert (c.theta @ c.theta_inv).is_identity()
    assert (c.theta_inv @ c.theta).is_identity()


def test_theta_apply_examples():
    assert theta_apply(1, y) == -y
    assert theta_apply(2, right2) == -right2 - left2
    assert theta(LinComb.of(LEAF)) == -LinComb.of(LEAF)
    with pytest.raises(DegreeError):
        theta_apply(2, y)
    with pytest.raises(DegreeError):
        theta_inv_apply(1, right2)


@given(st.integers(1, 6).flatmap(lincombs))
def test_theta_inverse_round_trip(a):
    assert theta_inv(theta(a)) == a
    assert theta(theta_inv(a)) == a


@pytest.mark.parametrize("n", [1, 2])
def test_theorem_small(n):
    report = verify_theorem(n)
    assert report.passed
    assert report.equation == "Eq(14)"


def test_theorem_needs_positive_degree():
    with pytest.raises(DegreeError):
        verify_theorem(0)


@pytest.mark.parametrize("n", range(1, 8))
def test_theorem(n):
    report = verify_theorem(n)
    assert report.passed, report.summary()
    assert tau_matrix(n).matrix == coxeter_matrix(n).theta_squared()


def test_theorem_under_exact_integers(exact_integers):
    for n in range(1, 5):
        assert verify_theorem(n).passed


@pytest.mark.parametrize("n, order", [(1, 2), (2, 3)])
def test_theta_order_small(n, order):
    report = check_theta_order(n)
    assert report.passed
    assert report.detail == f"order {order}"


@pytest.mark.parametrize("n", range(1, 7))
def test_theta_order(n):
    report = check_theta_order(n)
    assert report.passed, report.summary()
    least = int(report.detail.split()[-1])
    assert (2 * n + 2) % least == 0


def test_eq21_at_degree_two():
    assert theta(star(y, y)) == -left2
    assert -over_lin(theta(y), theta(y)) == -left2


@pytest.mark.parametrize("max_total", [2, 6])
def test_prop_6_4(max_total):
    report = check_prop_6_4(max_total)
    assert report.passed, report.summary()


def test_prop_6_6_examples():
    # T = Y and T = |
    assert theta(LinComb.of(over(Y, Y))) == -under_lin(y, theta_inv(y))
    leaf = LinComb.of(LEAF)
    assert theta(LinComb.of(over(LEAF, Y))) == under_lin(y, theta_inv(leaf))
    assert theta(y) == -y


@pytest.mark.parametrize("max_degree", [0, 1, 5])
def test_prop_6_6(max_degree):
    report = check_prop_6_6(max_degree)
    assert report.passed, report.summary()


def test_eq32_at_y():
    assert theta_squared(left2) == -star(y, y)
    assert theta_squared(left2) == -left2 - right2


@pytest.mark.parametrize("max_total", [2, 6])
def test_corollaries(max_total):
    report = check_corollaries(max_total)
    assert report.passed, report.summary()


# ───────────────────────── induction route for theta(T/Y) ─────────────────────────


def _splits(max_degree):
    for n in range(1, max_degree + 1):
        for t in enumerate_trees(n):
            yield t, t.left, t.right


@pytest.mark.parametrize("t, t1, t2", list(_splits(5)))
def test_product_with_y_expands(t, t1, t2):
    # T * Y = T/Y + (T1/Y) \ (T2 * Y)
    lhs = star(LinComb.of(t), y)
    rhs = LinComb.of(over(t, Y)) + under_lin(LinComb.of(over(t1, Y)), star(LinComb.of(t2), y))
    assert lhs == rhs


@pytest.mark.parametrize("t, t1, t2", list(_splits(5)))
def test_theta_over_y_induction_chain(t, t1, t2):
    n1, n2 = t1.degree, t2.degree
    a, a1, a2 = LinComb.of(t), LinComb.of(t1), LinComb.of(t2)
    t1y = LinComb.of(over(t1, Y))
    t2_star_y = star(a2, y)
    y_under_inv1 = under_lin(y, theta_inv(a1))
    target = theta(LinComb.of(over(t, Y)))

    chain = [
        theta(star(a, y)) - theta(under_lin(t1y, t2_star_y)),
        over_lin(theta(a), y) + star(theta(t1y), theta(t2_star_y)),
        -over_lin(star(theta(t1y), theta(a2)), y) + star(theta(t1y), over_lin(theta(a2), y)),
        (-1) ** (n1 + 1) * over_lin(star(y_under_inv1, theta(a2)), y)
        + (-1) ** n1 * star(y_under_inv1, over_lin(theta(a2), y)),
        (-1) ** (n1 + n2)
        * under_lin(y, star(theta_inv(a1), theta_inv(LinComb.of(under(Y, t2))))),
        (-1) ** n1 * under_lin(y, star(theta_inv(a1), over_lin(theta(a2), y))),
    ]
    for step, value in enumerate(chain):
        assert value == target, f"step {step} for T={t}"
    assert t == wedge(t1, t2)
