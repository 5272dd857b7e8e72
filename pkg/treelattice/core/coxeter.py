"""
Coxeter Transformation

On K0 of the Tamari poset of degree n, with the tree basis, the Coxeter map is

    theta     = -L (L^t)^-1
    theta^-1  = -L^t L^-1

where L is the zeta matrix. theta is a family indexed by degree: identities
that mix degrees send each factor through the matrix of its own degree.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

from treelattice.core.anticyclic import tau_matrix
from treelattice.core.base import CheckRecorder, CheckReport, DegreeError, VerificationError
from treelattice.core.dendriform import (
    LinComb,
    basis_pairs,
    over_lin,
    star,
    under_lin,
)
from treelattice.core.linalg import IntMatrix, matrix_order
from treelattice.core.poset import build, mobius_matrix, zeta_matrix
from treelattice.core.tree import LEAF, Y, enumerate_trees, format_tree, over, under
from treelattice.runtime import settings

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoxeterMap:
    degree: int
    theta: IntMatrix
    theta_inv: IntMatrix

    def theta_squared(self) -> IntMatrix:
        """(-1)^n theta^2, the right-hand side of tau = (-1)^n theta^2"""
        return (self.theta @ self.theta).scale((-1) ** self.degree)


def coxeter_matrix(n: int) -> CoxeterMap:
    settings.require_degree(n, settings.current.matrix_limit, "coxeter matrix")
    return _coxeter(n, settings.current.integers)


@lru_cache(maxsize=None)
def _coxeter(n: int, policy: settings.IntegerPolicy) -> CoxeterMap:
    p = build(n)
    zeta = zeta_matrix(p)
    mobius = mobius_matrix(p)
    theta = -(zeta @ mobius.T)
    theta_inv = -(zeta.T @ mobius)
    if not (theta @ theta_inv).is_identity():
        raise VerificationError(f"theta * theta^-1 != I on Y({n})")
    log.debug("coxeter matrices for degree %d ready (size %d)", n, theta.rows)
    return CoxeterMap(n, theta, theta_inv)


def _act(m: IntMatrix, n: int, a: LinComb) -> LinComb:
    if a.degree != n:
        raise DegreeError(f"degree {a.degree} combination given to the degree {n} map")
    return LinComb.from_vector(n, m.apply(a.to_vector()))


def theta_apply(n: int, a: LinComb) -> LinComb:
    return _act(coxeter_matrix(n).theta, n, a)


def theta_inv_apply(n: int, a: LinComb) -> LinComb:
    return _act(coxeter_matrix(n).theta_inv, n, a)


def theta(a: LinComb) -> LinComb:
    """theta at the degree of a"""
    return theta_apply(a.degree, a)


def theta_inv(a: LinComb) -> LinComb:
    return theta_inv_apply(a.degree, a)


def theta_squared(a: LinComb) -> LinComb:
    """(-1)^n theta^2(a)"""
    return (-1) ** a.degree * theta(theta(a))


# ═══════════════════════════════════════════════════════════
#  CHECKS
# ═══════════════════════════════════════════════════════════


def verify_theorem(n: int) -> CheckReport:
    """tau = (-1)^n theta^2 entrywise"""
    if n < 1:
        raise DegreeError(f"tau = (-1)^n theta^2 is stated for n >= 1, got {n}")
    rec = CheckRecorder("tau equals signed theta squared", "Eq(14)", (n,))
    lhs = tau_matrix(n).matrix
    rhs = coxeter_matrix(n).theta_squared()
    trees = enumerate_trees(n)
    for j, t in enumerate(trees):
        left, right = lhs.column(j), rhs.column(j)
        rec.expect(
            left == right,
            lambda: f"T={t}: tau(T)={LinComb.from_vector(n, left)}"
            f" but (-1)^n theta^2(T)={LinComb.from_vector(n, right)}",
        )
    return rec.finish()


def check_theta_order(n: int) -> CheckReport:
    rec = CheckRecorder("theta order", "Cor 6.2", (n,))
    m = coxeter_matrix(n).theta
    rec.expect(m.power(2 * n + 2).is_identity(), f"theta^{2 * n + 2} != Id on Y({n})")
    order = matrix_order(m, 2 * n + 2)
    return rec.finish(detail=f"order {order}" if order is not None else "")


def check_prop_6_4(max_total_degree: int) -> CheckReport:
    """The six relations of theta and theta^-1 with the grafts and the star product"""
    rec = CheckRecorder("theta against grafts", "Eqs(18)-(23)", (max_total_degree,))
    leaf, y = LinComb.of(LEAF), LinComb.of(Y)
    rec.expect(theta(leaf) == -leaf, lambda: f"theta(|)={theta(leaf)}", "Eq(18)")
    if max_total_degree >= 1:
        rec.expect(theta(y) == -y, lambda: f"theta(Y)={theta(y)}", "Eq(19)")

    for s, t in basis_pairs(max_total_degree):
        a, b = LinComb.of(s), LinComb.of(t)

        def witness(lhs, rhs):
            return lambda: f"T1={s} T2={t}: {lhs} != {rhs}"

        lhs, rhs = theta(under_lin(a, b)), -star(theta(a), theta(b))
        rec.expect(lhs == rhs, witness(lhs, rhs), "Eq(20)")

        lhs, rhs = theta(star(a, b)), -over_lin(theta(a), theta(b))
        rec.expect(lhs == rhs, witness(lhs, rhs), "Eq(21)")

        lhs, rhs = theta_inv(over_lin(a, b)), -star(theta_inv(a), theta_inv(b))
        rec.expect(lhs == rhs, witness(lhs, rhs), "Eq(22)")

        lhs, rhs = theta_inv(star(a, b)), -under_lin(theta_inv(a), theta_inv(b))
        rec.expect(lhs == rhs, witness(lhs, rhs), "Eq(23)")
    return rec.finish()


def check_prop_6_6(max_degree: int) -> CheckReport:
    """
    theta(T/Y)      = (-1)^n Y \\ theta^-1(T)
    theta^-1(Y\\T)   = (-1)^n theta(T) / Y
    for T of degree n <= max_degree.
    """
    rec = CheckRecorder("theta on grafts with Y", "Eq(25)", (max_degree,))
    y = LinComb.of(Y)
    for n in range(max_degree + 1):
        sign = (-1) ** n
        for t in enumerate_trees(n):
            a = LinComb.of(t)
            lhs = theta(LinComb.of(over(t, Y)))
            rhs = sign * under_lin(y, theta_inv(a))
            rec.expect(lhs == rhs, lambda: f"T={t}: theta(T/Y)={lhs} != {rhs}", "Eq(25) over")

            lhs = theta_inv(LinComb.of(under(Y, t)))
            rhs = sign * over_lin(theta(a), y)
            rec.expect(lhs == rhs, lambda: f"T={t}: theta^-1(Y\\T)={lhs} != {rhs}", "Eq(25) under")
    return rec.finish()


def check_corollaries(max_total_degree: int) -> CheckReport:
    """
    (-1)^n theta^2 turns \\ into / factorwise, and sends T/Y to -Y * T:
    the tau relations recovered from theta.
    """
    rec = CheckRecorder("signed theta squared on grafts", "Eqs(24),(32)", (max_total_degree,))
    for s, t in basis_pairs(max_total_degree):
        a, b = LinComb.of(s), LinComb.of(t)
        lhs = theta_squared(under_lin(a, b))
        rhs = over_lin(theta_squared(a), theta_squared(b))
        rec.expect(lhs == rhs, lambda: f"T1={s} T2={t}: {lhs} != {rhs}", "Eq(24)")

    y = LinComb.of(Y)
    for n in range(max_total_degree):
        for t in enumerate_trees(n):
            lhs = theta_squared(LinComb.of(over(t, Y)))
            rhs = -star(y, LinComb.of(t))
            rec.expect(
                lhs == rhs,
                lambda: f"T={format_tree(t)}: (-1)^(n+1) theta^2(T/Y)={lhs} != {rhs}",
                "Eq(32)",
            )
    return rec.finish()
