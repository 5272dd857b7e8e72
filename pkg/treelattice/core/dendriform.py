"""
Free Dendriform Algebra on Planar Binary Trees

Elements are integer linear combinations of trees of one degree. The products
are extended bilinearly from basis trees:

    S * T  = sum of U over the Tamari interval [S/T, S\\T]
    x > y  = (x * Y1) v Y2          for y = Y1 v Y2
    x < y  = X1 v (X2 * y)          for x = X1 v X2

star_recursive() computes * by the wedge recursion instead of intervals and
serves as an independent oracle for star().

Basis products are memoized per tree pair and kept for the life of the process;
clear_caches() releases them.
"""

import logging
import random
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Optional

from treelattice.core.base import CheckRecorder, CheckReport, DegreeError
from treelattice.core.linalg import IntVector
from treelattice.core.poset import build, iter_bits
from treelattice.core.tree import (
    LEAF,
    Tree,
    basis,
    catalan,
    enumerate_trees,
    format_tree,
    mirror,
    over,
    tree_at,
    under,
    wedge,
)

log = logging.getLogger(__name__)


class LinComb:
    """
    Element of kY(n): map from rank in Y(n) to a nonzero integer.
    Immutable; arithmetic returns new combinations.
    """

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Optional[Mapping[int, int]] = None):
        size = catalan(degree)
        clean = {}
        for r, c in (terms or {}).items():
            if not 0 <= r < size:
                raise DegreeError(f"rank {r} is not a basis index of Y({degree})")
            if c:
                clean[r] = int(c)
        self.degree = degree
        self._terms = clean

    @classmethod
    def of(cls, t: Tree, coeff: int = 1) -> "LinComb":
        return cls(t.degree, {basis(t.degree).rank(t): coeff})

    @classmethod
    def zero(cls, degree: int) -> "LinComb":
        return cls(degree)

    @classmethod
    def from_terms(cls, degree: int, pairs: Iterable[tuple[Tree, int]]) -> "LinComb":
        b = basis(degree)
        acc: dict[int, int] = {}
        for t, c in pairs:
            r = b.rank(t)
            acc[r] = acc.get(r, 0) + c
        return cls(degree, acc)

    @classmethod
    def from_vector(cls, degree: int, x: IntVector) -> "LinComb":
        if len(x) != catalan(degree):
            raise DegreeError(f"vector of length {len(x)} is not in kY({degree})")
        return cls(degree, {r: int(c) for r, c in enumerate(x.data) if c})

    def to_vector(self) -> IntVector:
        coords = [0] * catalan(self.degree)
        for r, c in self._terms.items():
            coords[r] = c
        return IntVector(coords)

    def items(self) -> Iterator[tuple[int, int]]:
        """(rank, coefficient) pairs in canonical order"""
        for r in sorted(self._terms):
            yield r, self._terms[r]

    def terms(self) -> Iterator[tuple[Tree, int]]:
        trees = basis(self.degree).trees
        for r, c in self.items():
            yield trees[r], c

    def coefficient(self, t: Tree) -> int:
        if t.degree != self.degree:
            return 0
        return self._terms.get(basis(self.degree).rank(t), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "LinComb") -> None:
        if self.degree != other.degree:
            raise DegreeError(f"cannot add degree {self.degree} to degree {other.degree}")

    def __add__(self, other: "LinComb") -> "LinComb":
        self._check(other)
        acc = dict(self._terms)
        for r, c in other._terms.items():
            acc[r] = acc.get(r, 0) + c
        return LinComb(self.degree, acc)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __neg__(self) -> "LinComb":
        return LinComb(self.degree, {r: -c for r, c in self._terms.items()})

    def __mul__(self, k: int) -> "LinComb":
        return LinComb(self.degree, {r: k * c for r, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self._terms.items())))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = sorted((format_tree(t), c) for t, c in self.terms())
        return " + ".join(f"{c}*{text}" for text, c in parts)

    def __repr__(self) -> str:
        return f"LinComb({self.degree}, '{self}')"


Basis = Callable[[Tree, Tree], LinComb]


def _bilinear(a: LinComb, b: LinComb, degree: int, op: Basis) -> LinComb:
    acc: dict[int, int] = {}
    right = list(b.terms())
    for s, x in a.terms():
        for t, y in right:
            for r, c in op(s, t).items():
                acc[r] = acc.get(r, 0) + x * y * c
    return LinComb(degree, acc)


# ═══════════════════════════════════════════════════════════
#  GRAFTS, LIFTED
# ═══════════════════════════════════════════════════════════


def _graft(op: Callable[[Tree, Tree], Tree], a: LinComb, b: LinComb, degree: int) -> LinComb:
    index = basis(degree).index
    acc: dict[int, int] = {}
    right = list(b.terms())
    for s, x in a.terms():
        for t, y in right:
            r = index[op(s, t)]
            acc[r] = acc.get(r, 0) + x * y
    return LinComb(degree, acc)


def under_lin(a: LinComb, b: LinComb) -> LinComb:
    return _graft(under, a, b, a.degree + b.degree)


def over_lin(a: LinComb, b: LinComb) -> LinComb:
    return _graft(over, a, b, a.degree + b.degree)


def wedge_lin(a: LinComb, b: LinComb) -> LinComb:
    return _graft(wedge, a, b, a.degree + b.degree + 1)


def mirror_lin(a: LinComb) -> LinComb:
    return LinComb.from_terms(a.degree, ((mirror(t), c) for t, c in a.terms()))


# ═══════════════════════════════════════════════════════════
#  PRODUCTS
# ═══════════════════════════════════════════════════════════


@lru_cache(maxsize=None)
def _star_basis(s: Tree, t: Tree) -> LinComb:
    n = s.degree + t.degree
    p = build(n)
    mask = p.interval_mask(p.index[over(s, t)], p.index[under(s, t)])
    return LinComb(n, {u: 1 for u in iter_bits(mask)})


def star(a: LinComb, b: LinComb) -> LinComb:
    """Interval-sum product"""
    return _bilinear(a, b, a.degree + b.degree, _star_basis)


@lru_cache(maxsize=None)
def _star_recursive_basis(s: Tree, t: Tree) -> LinComb:
    if s.is_leaf:
        return LinComb.of(t)
    if t.is_leaf:
        return LinComb.of(s)
    first = wedge_lin(_star_recursive_basis(s, t.left), LinComb.of(t.right))  # type: ignore
    second = wedge_lin(LinComb.of(s.left), _star_recursive_basis(s.right, t))  # type: ignore
    return first + second


def star_recursive(a: LinComb, b: LinComb) -> LinComb:
    """Product by the wedge recursion with | as unit"""
    return _bilinear(a, b, a.degree + b.degree, _star_recursive_basis)


def clear_caches() -> None:
    _star_basis.cache_clear()
    _star_recursive_basis.cache_clear()


def _half_product_degrees(a: LinComb, b: LinComb, name: str) -> None:
    if a.degree < 1 or b.degree < 1:
        raise DegreeError(f"{name} is not defined on the degree-0 tree |")


def _prec_basis(x: Tree, y: Tree) -> LinComb:
    return wedge_lin(LinComb.of(x.left), _star_basis(x.right, y))  # type: ignore


def _succ_basis(x: Tree, y: Tree) -> LinComb:
    return wedge_lin(_star_basis(x, y.left), LinComb.of(y.right))  # type: ignore


def prec(a: LinComb, b: LinComb) -> LinComb:
    """x < y"""
    _half_product_degrees(a, b, "prec")
    return _bilinear(a, b, a.degree + b.degree, _prec_basis)


def succ(a: LinComb, b: LinComb) -> LinComb:
    """x > y"""
    _half_product_degrees(a, b, "succ")
    return _bilinear(a, b, a.degree + b.degree, _succ_basis)


# ═══════════════════════════════════════════════════════════
#  CHECKS
# ═══════════════════════════════════════════════════════════


def _positive_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_compositions(total - first, parts - 1):
            yield (first,) + rest


def basis_triples(max_total_degree: int) -> Iterator[tuple[Tree, Tree, Tree]]:
    """All triples of positive-degree trees with total degree <= max"""
    for total in range(3, max_total_degree + 1):
        for d1, d2, d3 in _positive_compositions(total, 3):
            for x in enumerate_trees(d1):
                for y in enumerate_trees(d2):
                    for z in enumerate_trees(d3):
                        yield x, y, z


def basis_pairs(max_total_degree: int, min_degree: int = 0) -> Iterator[tuple[Tree, Tree]]:
    for total in range(2 * min_degree, max_total_degree + 1):
        for d1 in range(min_degree, total - min_degree + 1):
            for s in enumerate_trees(d1):
                for t in enumerate_trees(total - d1):
                    yield s, t


def check_dendriform_axioms(
    max_total_degree: int,
    succ: Callable[[LinComb, LinComb], LinComb] = succ,
    prec: Callable[[LinComb, LinComb], LinComb] = prec,
) -> CheckReport:
    """Eqs (1)-(3) on every basis triple, evaluated literally"""
    rec = CheckRecorder("dendriform axioms", "Eqs(1)-(3)", (max_total_degree,))
    triples = [tuple(LinComb.of(t) for t in triple) for triple in basis_triples(max_total_degree)]

    for x, y, z in triples:
        lhs = prec(prec(x, y), z)
        rhs = prec(x, prec(y, z)) + prec(x, succ(y, z))
        rec.expect(lhs == rhs, lambda: f"x={x} y={y} z={z}: {lhs} != {rhs}", "Eq(1)")
    for x, y, z in triples:
        lhs = succ(x, prec(y, z))
        rhs = prec(succ(x, y), z)
        rec.expect(lhs == rhs, lambda: f"x={x} y={y} z={z}: {lhs} != {rhs}", "Eq(2)")
    for x, y, z in triples:
        lhs = succ(x, succ(y, z))
        rhs = succ(succ(x, y), z) + succ(prec(x, y), z)
        rec.expect(lhs == rhs, lambda: f"x={x} y={y} z={z}: {lhs} != {rhs}", "Eq(3)")
    return rec.finish()


def check_star_split(max_total_degree: int) -> CheckReport:
    """x * y = x < y + x > y on positive-degree basis pairs"""
    rec = CheckRecorder("star splits into half products", "Eq(4)", (max_total_degree,))
    for s, t in basis_pairs(max_total_degree, min_degree=1):
        x, y = LinComb.of(s), LinComb.of(t)
        total = prec(x, y) + succ(x, y)
        rec.expect(total == star(x, y), lambda: f"S={s} T={t}: {total} != {star(x, y)}")
    return rec.finish()


def check_star_oracle(
    max_total_degree: int,
    random_pairs: int = 0,
    random_degrees: tuple[int, ...] = (7, 8),
    seed: int = 0,
) -> CheckReport:
    """Interval-sum product against the recursive product"""
    rec = CheckRecorder("star oracle", "Eq(4)=Eq(5)", (max_total_degree,))
    for s, t in basis_pairs(max_total_degree):
        x, y = LinComb.of(s), LinComb.of(t)
        a, b = star(x, y), star_recursive(x, y)
        rec.expect(a == b, lambda: f"S={s} T={t}: intervals give {a}, recursion gives {b}")

    rng = random.Random(seed)
    for _ in range(random_pairs):
        total = rng.choice(random_degrees)
        d1 = rng.randint(0, total)
        s = tree_at(d1, rng.randrange(catalan(d1)))
        t = tree_at(total - d1, rng.randrange(catalan(total - d1)))
        x, y = LinComb.of(s), LinComb.of(t)
        a, b = star(x, y), star_recursive(x, y)
        rec.expect(a == b, lambda: f"S={s} T={t}: intervals give {a}, recursion gives {b}")
    return rec.finish()


def check_star_associative(max_total_degree: int) -> CheckReport:
    rec = CheckRecorder("star associativity", "Eq(5)", (max_total_degree,))
    for s, t, u in basis_triples(max_total_degree):
        x, y, z = LinComb.of(s), LinComb.of(t), LinComb.of(u)
        lhs, rhs = star(star(x, y), z), star(x, star(y, z))
        rec.expect(lhs == rhs, lambda: f"S={s} T={t} U={u}: {lhs} != {rhs}")
    return rec.finish()


def check_star_mirror(max_total_degree: int) -> CheckReport:
    rec = CheckRecorder("star mirror symmetry", "Eq(5)", (max_total_degree,))
    for s, t in basis_pairs(max_total_degree):
        x, y = LinComb.of(s), LinComb.of(t)
        lhs = mirror_lin(star(x, y))
        rhs = star(mirror_lin(y), mirror_lin(x))
        rec.expect(lhs == rhs, lambda: f"S={s} T={t}: {lhs} != {rhs}")
    return rec.finish()


def unit() -> LinComb:
    """The tree | as an element of kY(0)"""
    return LinComb.of(LEAF)
