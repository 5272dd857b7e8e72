import numpy as np
import pytest

from treelattice.core.anticyclic import (
    check_tau_order,
    check_tau_well_defined,
    tau,
    tau_basis,
    tau_matrix,
)
from treelattice.core.base import CapacityError, DegreeError
from treelattice.core.dendriform import LinComb, over_lin, star
from treelattice.core.tree import LEAF, Y, enumerate_trees, over, under
from treelattice.runtime import settings

y = LinComb.of(Y)
left2 = LinComb.of(over(Y, Y))
right2 = LinComb.of(under(Y, Y))


def test_tau_small_values():
    assert tau_basis(Y) == -y
    assert tau_basis(under(Y, Y)) == left2
    assert tau_basis(over(Y, Y)) == -left2 - right2


def test_tau_undefined_on_leaf():
    with pytest.raises(DegreeError):
        tau_basis(LEAF)
    with pytest.raises(DegreeError):
        tau_matrix(0)


def test_tau_matrices():
    assert tau_matrix(1).matrix.tolist() == [[-1]]
    m2 = tau_matrix(2).matrix
    assert m2.tolist() == [[0, -1], [1, -1]]
    assert int(np.trace(m2.data)) == -1
    assert m2[0, 0] * m2[1, 1] - m2[0, 1] * m2[1, 0] == 1
    assert m2.power(3).is_identity()
    m3 = tau_matrix(3).matrix
    assert m3.shape == (5, 5)
    assert m3.power(4).is_identity()


def test_degree_two_values_cycle():
    # one basis tree goes to the other, the other to minus their sum
    assert tau(right2) == left2
    assert tau(left2) == -(left2 + right2)
    assert tau(tau(tau(right2))) == right2


@pytest.mark.parametrize("n", range(1, 6))
def test_tau_relations_on_basis(n):
    for t in enumerate_trees(n):
        expected = -star(y, LinComb.of(t))
        assert tau_basis(over(t, Y)) == expected
    for t1 in enumerate_trees(n):
        for t2 in enumerate_trees(1):
            assert tau_basis(under(t1, t2)) == over_lin(tau_basis(t1), tau_basis(t2))


@pytest.mark.parametrize("n", range(1, 6))
def test_well_defined(n):
    report = check_tau_well_defined(n)
    assert report.passed, report.summary()


def test_well_defined_trivially_at_degree_two():
    report = check_tau_well_defined(2)
    # only the right comb splits, as Y \ Y
    assert report.cases == 1


@pytest.mark.parametrize("n, order", [(1, 2), (2, 3)])
def test_tau_order_small(n, order):
    report = check_tau_order(n)
    assert report.passed
    assert report.detail == f"order {order}"


@pytest.mark.parametrize("n", range(1, 8))
def test_tau_order_divides(n):
    report = check_tau_order(n)
    assert report.passed, report.summary()
    assert tau_matrix(n).matrix.power(n + 1).is_identity()


def test_tau_matrix_capacity():
    settings.configure(matrix_limit=3)
    with pytest.raises(CapacityError):
        tau_matrix(4)


def test_tau_linear():
    a = 2 * left2 - 3 * right2
    assert tau(a) == 2 * tau_basis(over(Y, Y)) - 3 * tau_basis(under(Y, Y))
