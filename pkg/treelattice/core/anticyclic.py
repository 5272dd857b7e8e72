"""
Anticyclic Map

tau acts on each kY(n), n >= 1, and is pinned down by

    tau(Y)           = -Y
    tau(T1 \\ T2)     = tau(T1) / tau(T2)      for T1, T2 of positive degree
    tau(T / Y)       = -Y * T

The recursion below always splits T = A v B canonically: B = | means T = A/Y,
otherwise T = (A v |) \\ B. Other splits are re-checked by
check_tau_well_defined().

tau of basis trees and whole tau matrices are memoized until clear_caches().
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

from treelattice.core.base import CheckRecorder, CheckReport, DegreeError
from treelattice.core.dendriform import LinComb, over_lin, star
from treelattice.core.linalg import IntMatrix, matrix_order
from treelattice.core.tree import LEAF, Y, Tree, enumerate_trees, right_spine_splits, wedge
from treelattice.runtime import settings

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TauMap:
    """Column j is tau of basis tree j"""

    degree: int
    matrix: IntMatrix


def tau_basis(t: Tree) -> LinComb:
    if t.degree < 1:
        raise DegreeError("tau is not defined on the degree-0 tree |")
    return _tau(t)


@lru_cache(maxsize=None)
def _tau(t: Tree) -> LinComb:
    a, b = t.left, t.right
    if b.is_leaf:  # type: ignore
        return -star(LinComb.of(Y), LinComb.of(a))  # type: ignore
    return over_lin(_tau(wedge(a, LEAF)), _tau(b))  # type: ignore


def tau(a: LinComb) -> LinComb:
    """tau extended linearly"""
    if a.degree < 1:
        raise DegreeError("tau is not defined on kY(0)")
    acc = LinComb.zero(a.degree)
    for t, c in a.terms():
        acc = acc + c * tau_basis(t)
    return acc


def tau_matrix(n: int) -> TauMap:
    if n < 1:
        raise DegreeError(f"tau matrix needs degree >= 1, got {n}")
    settings.require_degree(n, settings.current.matrix_limit, "tau matrix")
    return _tau_matrix(n, settings.current.integers)


@lru_cache(maxsize=None)
def _tau_matrix(n: int, policy: settings.IntegerPolicy) -> TauMap:
    columns = [tau_basis(t).to_vector() for t in enumerate_trees(n)]
    log.debug("assembled tau on Y(%d) from %d columns", n, len(columns))
    return TauMap(n, IntMatrix.from_columns(columns))


def clear_caches() -> None:
    _tau.cache_clear()
    _tau_matrix.cache_clear()


def check_tau_well_defined(n: int) -> CheckReport:
    """tau(T1 \\ T2) = tau(T1) / tau(T2) for every split along the right spine"""
    rec = CheckRecorder("tau independent of split", "Eq(16)", (n,))
    for t in enumerate_trees(n):
        expected = tau_basis(t)
        for t1, t2 in right_spine_splits(t):
            got = over_lin(tau_basis(t1), tau_basis(t2))
            rec.expect(
                got == expected,
                lambda: f"T={t} split {t1} \\ {t2}: {got} != {expected}",
            )
    return rec.finish()


def check_tau_order(n: int) -> CheckReport:
    rec = CheckRecorder("tau order", "tau^(n+1)=Id", (n,))
    m = tau_matrix(n).matrix
    order = matrix_order(m, n + 1)
    rec.expect(
        order is not None and (n + 1) % order == 0,
        lambda: f"tau^{n + 1} != Id on Y({n})",
    )
    return rec.finish(detail=f"order {order}" if order is not None else "")
