"""
Tree Literal Parser

Parses the bit-exact tree literal grammar:

    t := "." | "(" t t ")"

No whitespace is accepted; format_tree() is the exact inverse.
"""

from treelattice.core.base import TreeSyntaxError
from treelattice.core.tree import LEAF, Tree


class Parser:
    """
    Top-down parser for tree literals.

    Keeps an explicit stack of open nodes instead of recursing, so deep
    combs do not hit the interpreter recursion limit.
    """

    def __init__(self):
        self.text = ""

    def parse(self, text: str) -> Tree:
        """Parse one complete literal"""
        self.text = text
        tree, i = self._parse_tree(0)
        if i != len(text):
            raise TreeSyntaxError(f"unexpected {text[i]!r} after complete tree", i)
        return tree

    def _parse_tree(self, start: int) -> tuple[Tree, int]:
        text = self.text
        # each frame holds the children parsed so far for one open "("
        frames: list[list[Tree]] = []
        i = start
        while True:
            if i >= len(text):
                raise TreeSyntaxError("unexpected end of input, expected tree", i)
            c = text[i]
            if c == "(":
                frames.append([])
                i += 1
                continue
            if c != ".":
                raise TreeSyntaxError(f"expected '.' or '(', found {c!r}", i)

            # a leaf completes a subtree; close every node it finishes
            done: Tree = LEAF
            i += 1
            while True:
                if not frames:
                    return done, i
                frames[-1].append(done)
                if len(frames[-1]) < 2:
                    break
                if i >= len(text):
                    raise TreeSyntaxError("unexpected end of input, expected ')'", i)
                if text[i] != ")":
                    raise TreeSyntaxError(f"expected ')', found {text[i]!r}", i)
                left, right = frames.pop()
                done = Tree(left, right)
                i += 1


def parse_tree(text: str) -> Tree:
    """Parse a tree literal such as "(.(..))" """
    return Parser().parse(text)
