"""
Tamari Posets

T(n) orders Y(n) by upward rotations (A v B) v C -> A v (B v C). The left comb
is the minimum and the right comb the maximum. The order relation is kept as
packed rows (python int bitsets): up[v] has bit w set iff v <= w, down[w] has
bit v set iff v <= w.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import networkx as nx
import numpy as np

from treelattice.core.base import CheckRecorder, CheckReport, DegreeError
from treelattice.core.linalg import IntMatrix, inverse_unitriangular
from treelattice.core.tree import (
    Tree,
    basis,
    enumerate_trees,
    mirror,
    node,
    over,
    under,
)
from treelattice.runtime import settings

log = logging.getLogger(__name__)


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def covers_of(t: Tree) -> list[Tree]:
    """All trees one upward rotation above T"""
    if t.is_leaf:
        return []
    a, b = t.left, t.right
    out = []
    if not a.is_leaf:  # type: ignore
        out.append(node(a.left, node(a.right, b)))  # type: ignore
    out.extend(node(x, b) for x in covers_of(a))  # type: ignore
    out.extend(node(a, y) for y in covers_of(b))  # type: ignore
    return out


@dataclass(frozen=True)
class TamariPoset:
    """
    The Tamari poset of one degree.
    Immutable after build(); every query is read-only.
    """

    degree: int
    basis: tuple[Tree, ...]
    index: dict
    up: tuple[int, ...]
    down: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    linear_extension: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.basis)

    def rank(self, t: Tree) -> int:
        if t.degree != self.degree:
            raise DegreeError(f"tree of degree {t.degree} queried in T({self.degree})")
        return self.index[t]

    def leq_ranks(self, v: int, w: int) -> bool:
        return bool(self.up[v] >> w & 1)

    def interval_mask(self, lo: int, hi: int) -> int:
        return self.up[lo] & self.down[hi]

    def graph(self) -> nx.DiGraph:
        """Covering digraph on ranks"""
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.basis)))
        g.add_edges_from(self.edges)
        return g

    def relation(self) -> np.ndarray:
        """Dense boolean matrix M with M[v, w] = (v <= w)"""
        size = len(self.basis)
        nbytes = (size + 7) // 8
        rows = np.zeros((size, size), dtype=bool)
        for v, mask in enumerate(self.up):
            raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
            rows[v] = np.unpackbits(raw, bitorder="little")[:size].astype(bool)
        return rows


@lru_cache(maxsize=None)
def _build(n: int) -> TamariPoset:
    trees = enumerate_trees(n)
    index = basis(n).index
    edges = []
    for v, t in enumerate(trees):
        for c in covers_of(t):
            edges.append((v, index[c]))
    edges.sort()

    g = nx.DiGraph()
    g.add_nodes_from(range(len(trees)))
    g.add_edges_from(edges)
    order = tuple(nx.lexicographical_topological_sort(g))

    up = [0] * len(trees)
    for v in reversed(order):
        mask = 1 << v
        for w in g.successors(v):
            mask |= up[w]
        up[v] = mask
    down = [0] * len(trees)
    for w in order:
        mask = 1 << w
        for v in g.predecessors(w):
            mask |= down[v]
        down[w] = mask

    log.debug("built T(%d): %d elements, %d covering edges", n, len(trees), len(edges))
    return TamariPoset(
        degree=n,
        basis=trees,
        index=index,
        up=tuple(up),
        down=tuple(down),
        edges=tuple(edges),
        linear_extension=order,
    )


def build(n: int) -> TamariPoset:
    settings.require_degree(n, settings.current.poset_limit, "poset")
    return _build(n)


def _same_degree(p: TamariPoset, *trees: Tree) -> None:
    for t in trees:
        if t.degree != p.degree:
            raise DegreeError(f"tree of degree {t.degree} queried in T({p.degree})")


def leq(p: TamariPoset, s: Tree, t: Tree) -> bool:
    _same_degree(p, s, t)
    return p.leq_ranks(p.index[s], p.index[t])


def min_element(p: TamariPoset) -> Tree:
    return p.basis[p.linear_extension[0]]


def max_element(p: TamariPoset) -> Tree:
    return p.basis[p.linear_extension[-1]]


def interval(p: TamariPoset, s: Tree, t: Tree) -> list[Tree]:
    """All U with S <= U <= T in canonical order; empty when S is not below T"""
    _same_degree(p, s, t)
    return [p.basis[u] for u in iter_bits(p.interval_mask(p.index[s], p.index[t]))]


def join(p: TamariPoset, s: Tree, t: Tree) -> Optional[Tree]:
    _same_degree(p, s, t)
    common = p.up[p.index[s]] & p.up[p.index[t]]
    for u in iter_bits(common):
        if p.up[u] == common:
            return p.basis[u]
    return None


def meet(p: TamariPoset, s: Tree, t: Tree) -> Optional[Tree]:
    _same_degree(p, s, t)
    common = p.down[p.index[s]] & p.down[p.index[t]]
    for u in iter_bits(common):
        if p.down[u] == common:
            return p.basis[u]
    return None


def is_lattice(p: TamariPoset) -> bool:
    size = len(p.basis)
    for v in range(size):
        for w in range(v + 1, size):
            s, t = p.basis[v], p.basis[w]
            if join(p, s, t) is None or meet(p, s, t) is None:
                return False
    return True


def zeta_matrix(p: TamariPoset) -> IntMatrix:
    """L[v][w] = 1 iff v <= w, in canonical basis order"""
    settings.require_degree(p.degree, settings.current.matrix_limit, "zeta matrix")
    return IntMatrix(p.relation().astype(np.int64))


def mobius_matrix(p: TamariPoset) -> IntMatrix:
    """Exact inverse of the zeta matrix, unitriangular along the linear extension"""
    settings.require_degree(p.degree, settings.current.matrix_limit, "mobius matrix")
    return _mobius(p.degree, settings.current.integers)


@lru_cache(maxsize=None)
def _mobius(n: int, policy: settings.IntegerPolicy) -> IntMatrix:
    p = build(n)
    return inverse_unitriangular(zeta_matrix(p), p.linear_extension)


# ═══════════════════════════════════════════════════════════
#  ZETA OPERATORS ON LINEAR COMBINATIONS
# ═══════════════════════════════════════════════════════════


def lower_operator(a):
    """L(T) = sum of v <= T, extended linearly"""
    from treelattice.core.dendriform import LinComb

    p = build(a.degree)
    acc: dict[int, int] = {}
    for r, c in a.items():
        for v in iter_bits(p.down[r]):
            acc[v] = acc.get(v, 0) + c
    return LinComb(a.degree, acc)


def upper_operator(a):
    """L^t(T) = sum of v >= T, extended linearly"""
    from treelattice.core.dendriform import LinComb

    p = build(a.degree)
    acc: dict[int, int] = {}
    for r, c in a.items():
        for v in iter_bits(p.up[r]):
            acc[v] = acc.get(v, 0) + c
    return LinComb(a.degree, acc)


# ═══════════════════════════════════════════════════════════
#  CHECKS
# ═══════════════════════════════════════════════════════════


def check_poset_axioms(n: int) -> CheckReport:
    rec = CheckRecorder("poset axioms", "T(n)", (n,))
    p = build(n)
    m = p.relation()
    rec.expect(bool(np.all(np.diagonal(m))), "relation is not reflexive")
    rec.expect(
        not np.any(m & m.T & ~np.eye(len(p), dtype=bool)),
        "relation is not antisymmetric",
    )
    closed = (m.astype(np.int64) @ m.astype(np.int64)) > 0
    rec.expect(not np.any(closed & ~m), "relation is not transitive")
    lo, hi = min_element(p), max_element(p)
    rec.expect(
        p.up[p.index[lo]] == (1 << len(p)) - 1,
        lambda: f"{lo} is not below every element",
    )
    rec.expect(
        p.down[p.index[hi]] == (1 << len(p)) - 1,
        lambda: f"{hi} is not above every element",
    )
    return rec.finish(detail=f"relations={int(m.sum())}")


def check_lattice(n: int) -> CheckReport:
    rec = CheckRecorder("lattice", "T(n)", (n,))
    p = build(n)
    for v in range(len(p)):
        for w in range(v + 1, len(p)):
            s, t = p.basis[v], p.basis[w]
            rec.expect(
                join(p, s, t) is not None and meet(p, s, t) is not None,
                lambda: f"{s} and {t} lack a meet or a join",
            )
    return rec.finish()


def check_mirror_antiautomorphism(n: int) -> CheckReport:
    rec = CheckRecorder("mirror anti-automorphism", "T(n)", (n,))
    p = build(n)
    m = p.relation()
    image = [p.index[mirror(t)] for t in p.basis]
    conjugated = m[np.ix_(image, image)].T
    rec.expect(bool(np.array_equal(m, conjugated)), "mirror does not reverse the order")
    rec.expect(int(m.sum()) == int(conjugated.sum()), "relation count changes under mirror")
    return rec.finish()


def check_lemma_2_1(n1: int, n2: int) -> CheckReport:
    """(s1, s2) -> s1 \\ s2 is a bijection [T1, 1] x [T2, 1] -> [T1 \\ T2, 1]"""
    rec = CheckRecorder("upper intervals factor", "Lemma 2.1", (n1, n2))
    p1, p2, p = build(n1), build(n2), build(n1 + n2)
    for t1 in p1.basis:
        upper1 = [p1.basis[u] for u in iter_bits(p1.up[p1.index[t1]])]
        for t2 in p2.basis:
            upper2 = [p2.basis[u] for u in iter_bits(p2.up[p2.index[t2]])]
            image = [p.index[under(s1, s2)] for s1 in upper1 for s2 in upper2]
            target = p.up[p.index[under(t1, t2)]]
            image_mask = 0
            for r in image:
                image_mask |= 1 << r
            rec.expect(
                len(set(image)) == len(image) and image_mask == target,
                lambda: f"T1={t1} T2={t2}: image has {len(set(image))} of {len(image)} distinct,"
                f" target size {bin(target).count('1')}",
            )
    return rec.finish()


def check_lemma_3_3(n1: int, n2: int) -> CheckReport:
    """
    The intervals [s1/s2, s1\\s2] for s1 <= T1, s2 <= T2 partition [0, T1\\T2];
    in operator form L(a \\ b) = L(a) * L(b).
    """
    from treelattice.core.dendriform import LinComb, star, under_lin

    rec = CheckRecorder("lower intervals partition", "Lemma 3.3", (n1, n2))
    p1, p2, p = build(n1), build(n2), build(n1 + n2)
    for t1 in p1.basis:
        lower1 = [p1.basis[u] for u in iter_bits(p1.down[p1.index[t1]])]
        for t2 in p2.basis:
            lower2 = [p2.basis[u] for u in iter_bits(p2.down[p2.index[t2]])]
            covered = 0
            disjoint = True
            for s1 in lower1:
                for s2 in lower2:
                    block = p.interval_mask(p.index[over(s1, s2)], p.index[under(s1, s2)])
                    if covered & block:
                        disjoint = False
                    covered |= block
            target = p.down[p.index[under(t1, t2)]]
            rec.expect(
                disjoint and covered == target,
                lambda: f"T1={t1} T2={t2}: intervals overlap or miss [0, T1\\T2]",
                equation="Lemma 3.3 partition",
            )
            a, b = LinComb.of(t1), LinComb.of(t2)
            lhs = lower_operator(under_lin(a, b))
            rhs = star(lower_operator(a), lower_operator(b))
            rec.expect(
                lhs == rhs,
                lambda: f"T1={t1} T2={t2}: L(a\\b)={lhs} but L(a)*L(b)={rhs}",
                equation="Lemma 3.3 operator",
            )
    return rec.finish()


def check_upper_operator(n1: int, n2: int) -> CheckReport:
    """L^t(a \\ b) = L^t(a) \\ L^t(b) on basis pairs"""
    from treelattice.core.dendriform import LinComb, under_lin

    rec = CheckRecorder("upper operator preserves under", "Lemma 2.1 operator", (n1, n2))
    for t1 in enumerate_trees(n1):
        for t2 in enumerate_trees(n2):
            a, b = LinComb.of(t1), LinComb.of(t2)
            lhs = upper_operator(under_lin(a, b))
            rhs = under_lin(upper_operator(a), upper_operator(b))
            rec.expect(lhs == rhs, lambda: f"T1={t1} T2={t2}: {lhs} != {rhs}")
    return rec.finish()


def relation_count(n: int) -> int:
    """Number of pairs v <= w in T(n)"""
    p = build(n)
    return sum(bin(mask).count("1") for mask in p.up)
