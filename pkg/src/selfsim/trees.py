"""Free non-empty binary trees over the single symbol ``x``.

Trees are the objects shared by the posetal tree categories and the
freely generated category of a self-similar object.  The textual form is::

    T ::= "x" | "(" T "*" T ")"
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Union


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class Leaf:
    def __str__(self):
        return "x"


@dataclass(frozen=True)
class Pair:
    left: "Tree"
    right: "Tree"

    def __str__(self):
        return f"({self.left}*{self.right})"


Tree = Union[Leaf, Pair]

LEAF = Leaf()

_meta_counter = itertools.count()


@dataclass(frozen=True)
class MetaVar:
    """A unification variable standing for an unknown tree."""

    id: object

    def __str__(self):
        return f"?{self.id}"


@dataclass(frozen=True)
class PPair:
    left: "TreePattern"
    right: "TreePattern"

    def __str__(self):
        return f"({self.left}*{self.right})"


TreePattern = Union[Leaf, PPair, MetaVar]


def fresh_var(prefix: str = "v") -> MetaVar:
    return MetaVar(f"{prefix}{next(_meta_counter)}")


def rank(t) -> int:
    """Number of leaves of a tree (or pattern; variables count as zero)."""
    if isinstance(t, Leaf):
        return 1
    if isinstance(t, (Pair, PPair)):
        return rank(t.left) + rank(t.right)
    return 0


def depth(t) -> int:
    if isinstance(t, (Pair, PPair)):
        return 1 + max(depth(t.left), depth(t.right))
    return 0


@lru_cache(maxsize=None)
def _enumerate(r: int) -> tuple:
    if r == 1:
        return (LEAF,)
    out = []
    for left_rank in range(1, r):
        for left in _enumerate(left_rank):
            for right in _enumerate(r - left_rank):
                out.append(Pair(left, right))
    return tuple(out)


def enumerate_trees(r: int) -> list:
    """All trees of rank ``r``, ordered by left-subtree rank ascending."""
    if r < 1:
        raise ValueError(f"rank must be positive, got {r}")
    return list(_enumerate(r))


def left_comb(r: int) -> Tree:
    if r < 1:
        raise ValueError(f"rank must be positive, got {r}")
    t = LEAF
    for _ in range(r - 1):
        t = Pair(t, LEAF)
    return t


def right_comb(r: int) -> Tree:
    if r < 1:
        raise ValueError(f"rank must be positive, got {r}")
    t = LEAF
    for _ in range(r - 1):
        t = Pair(LEAF, t)
    return t


def print_tree(t) -> str:
    return str(t)


class _TreeParser:
    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise TreeSyntaxError(f"expected {ch!r}, found {found!r}", self.text, self.pos)
        self.pos += 1

    def tree(self) -> Tree:
        self.skip_ws()
        if self.pos >= len(self.text):
            raise TreeSyntaxError("unexpected end of input", self.text, self.pos)
        ch = self.text[self.pos]
        if ch == "x":
            self.pos += 1
            return LEAF
        if ch == "(":
            self.pos += 1
            left = self.tree()
            self.expect("*")
            right = self.tree()
            self.expect(")")
            return Pair(left, right)
        raise TreeSyntaxError(f"unexpected character {ch!r}", self.text, self.pos)


def parse_tree_prefix(text: str, pos: int = 0) -> tuple:
    """Parse a tree starting at ``pos``; return ``(tree, end_position)``."""
    p = _TreeParser(text, pos)
    t = p.tree()
    return t, p.pos


def parse_tree(text: str) -> Tree:
    p = _TreeParser(text)
    t = p.tree()
    p.skip_ws()
    if p.pos != len(text):
        raise TreeSyntaxError("trailing input", text, p.pos)
    return t


def to_pattern(t: Tree) -> TreePattern:
    if isinstance(t, Pair):
        return PPair(to_pattern(t.left), to_pattern(t.right))
    return t


def to_tree(p: TreePattern, default: Tree | None = None) -> Tree:
    """Coerce a pattern to a tree; variables become ``default`` (error if None)."""
    if isinstance(p, PPair):
        return Pair(to_tree(p.left, default), to_tree(p.right, default))
    if isinstance(p, MetaVar):
        if default is None:
            raise ValueError(f"pattern still contains variable {p}")
        return default
    return p
