"""
Planar Binary Trees

A tree is either the leaf `|` or a node with a left and a right subtree.
Degree counts internal nodes. Trees are immutable and compared structurally,
so they can serve as basis keys everywhere.

Canonical order of Y(n): write T = A v B and sort by degree(A) ascending,
then by rank(A), then by rank(B). This order fixes every matrix basis.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from treelattice.core.base import CapacityError, CheckRecorder, CheckReport, DegreeError
from treelattice.runtime import settings


class Tree:
    """Leaf when both children are None, otherwise an internal node"""

    __slots__ = ("left", "right", "degree", "_hash")

    def __init__(self, left: Optional["Tree"] = None, right: Optional["Tree"] = None):
        if (left is None) != (right is None):
            raise ValueError("a node needs both children")
        self.left = left
        self.right = right
        if left is None:
            self.degree = 0
            self._hash = hash(("leaf",))
        else:
            self.degree = left.degree + right.degree + 1  # type: ignore
            self._hash = hash((left._hash, right._hash))  # type: ignore

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        if self._hash != other._hash or self.degree != other.degree:
            return False
        if self.left is None:
            return other.left is None
        return self.left == other.left and self.right == other.right

    def __hash__(self) -> int:
        return self._hash

    def __setattr__(self, name, value):
        if hasattr(self, "_hash"):
            raise AttributeError("trees are immutable")
        object.__setattr__(self, name, value)

    def __str__(self) -> str:
        return format_tree(self)

    def __repr__(self) -> str:
        return f"Tree('{format_tree(self)}')"


LEAF = Tree()
Y = Tree(LEAF, LEAF)


def node(left: Tree, right: Tree) -> Tree:
    return Tree(left, right)


def format_tree(t: Tree) -> str:
    """Canonical literal: "." for the leaf, "(" left right ")" otherwise"""
    parts: list[str] = []
    stack: list[object] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif item.is_leaf:  # type: ignore
            parts.append(".")
        else:
            parts.append("(")
            stack.append(")")
            stack.append(item.right)  # type: ignore
            stack.append(item.left)  # type: ignore
    return "".join(parts)


# ═══════════════════════════════════════════════════════════
#  GRAFTING CALCULUS
# ═══════════════════════════════════════════════════════════


def wedge(s: Tree, t: Tree) -> Tree:
    """S v T: new root with children S and T"""
    return Tree(s, t)


def over(s: Tree, t: Tree) -> Tree:
    """S / T: root of S grafted on the leftmost leaf of T"""
    if t.is_leaf:
        return s
    return Tree(over(s, t.left), t.right)  # type: ignore


def under(s: Tree, t: Tree) -> Tree:
    """S \\ T: root of T grafted on the rightmost leaf of S"""
    if s.is_leaf:
        return t
    return Tree(s.left, under(s.right, t))  # type: ignore


def mirror(t: Tree) -> Tree:
    if t.is_leaf:
        return t
    return Tree(mirror(t.right), mirror(t.left))  # type: ignore


def decompose(t: Tree) -> tuple[Tree, Tree]:
    """The unique pair (A, B) with T = A v B"""
    if t.is_leaf:
        raise DegreeError("the leaf has no decomposition A v B")
    return t.left, t.right  # type: ignore


def left_comb(n: int) -> Tree:
    t = LEAF
    for _ in range(n):
        t = Tree(t, LEAF)
    return t


def right_comb(n: int) -> Tree:
    t = LEAF
    for _ in range(n):
        t = Tree(LEAF, t)
    return t


def right_spine_splits(t: Tree) -> Iterator[tuple[Tree, Tree]]:
    """
    Every way to write T = T1 \\ T2 with both factors of positive degree.
    T2 is a subtree hanging on the right spine below the root.
    """
    spine: list[Tree] = []
    cur = t
    while not cur.is_leaf:
        spine.append(cur.left)  # type: ignore
        cur = cur.right  # type: ignore
    # T = a1 v (a2 v (... v (ak v |))); cutting after position i keeps a1..ai in T1
    for i in range(1, len(spine)):
        head = LEAF
        for a in reversed(spine[:i]):
            head = Tree(a, head)
        tail = LEAF
        for a in reversed(spine[i:]):
            tail = Tree(a, tail)
        yield head, tail


# ═══════════════════════════════════════════════════════════
#  ENUMERATION & RANKING
# ═══════════════════════════════════════════════════════════


def catalan(n: int) -> int:
    if n < 0:
        raise DegreeError(f"catalan: degree must be nonnegative, got {n}")
    value = math.comb(2 * n, n) // (n + 1)
    if (
        settings.current.integers == settings.IntegerPolicy.CHECKED
        and value > settings.INT64_MAX
    ):
        raise CapacityError(f"catalan({n}) does not fit in 64 bits")
    return value


class TreeBasis:
    """Canonical enumeration of Y(n) with its inverse index"""

    def __init__(self, degree: int, trees: tuple[Tree, ...]):
        self.degree = degree
        self.trees = trees
        self.index = {t: r for r, t in enumerate(trees)}

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self) -> Iterator[Tree]:
        return iter(self.trees)

    def rank(self, t: Tree) -> int:
        if t.degree != self.degree:
            raise DegreeError(f"tree of degree {t.degree} is not in Y({self.degree})")
        return self.index[t]


@lru_cache(maxsize=None)
def _basis(n: int) -> TreeBasis:
    if n == 0:
        return TreeBasis(0, (LEAF,))
    trees = []
    for k in range(n):
        lefts = _basis(k).trees
        rights = _basis(n - 1 - k).trees
        for a in lefts:
            for b in rights:
                trees.append(Tree(a, b))
    return TreeBasis(n, tuple(trees))


def basis(n: int) -> TreeBasis:
    settings.require_degree(n, settings.current.enumeration_limit, "enumerate")
    return _basis(n)


def enumerate_trees(n: int) -> tuple[Tree, ...]:
    """All trees of degree n in canonical order"""
    return basis(n).trees


def rank_of(t: Tree) -> int:
    return basis(t.degree).rank(t)


def tree_at(n: int, rank: int) -> Tree:
    trees = basis(n).trees
    if not 0 <= rank < len(trees):
        raise DegreeError(f"rank {rank} out of range for Y({n})")
    return trees[rank]


@dataclass(frozen=True)
class TreeId:
    """Position of a tree in the canonical enumeration of its degree"""

    degree: int
    rank: int

    @classmethod
    def of(cls, t: Tree) -> "TreeId":
        return cls(t.degree, rank_of(t))

    def to_tree(self) -> Tree:
        return tree_at(self.degree, self.rank)


def check_enumeration(n: int) -> CheckReport:
    """|Y(n)| = catalan(n) and the enumeration has no repeats"""
    rec = CheckRecorder("enumeration count", "c(n)", (n,))
    trees = enumerate_trees(n)
    rec.expect(
        len(trees) == catalan(n),
        lambda: f"Y({n}) has {len(trees)} trees, catalan({n}) = {catalan(n)}",
    )
    rec.expect(len(set(trees)) == len(trees), f"Y({n}) lists a tree twice")
    rec.expect(all(t.degree == n for t in trees), f"Y({n}) holds a tree of another degree")
    return rec.finish(detail=f"size {len(trees)}")
