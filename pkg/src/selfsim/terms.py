"""Formal arrow syntax.

Two sorts of terms live here:

* ``ArrowTerm`` -- typed arrows of the category freely generated by a
  self-similar object, with tree objects;
* ``MonoidTerm`` -- untyped arrows of its endomorphism monoid with the
  induced tensor ``*`` (written ``#`` in the surface syntax).

``flatten`` sends the first sort to the second: objects collapse, tensor
becomes the monoid tensor, the associator becomes ``Alpha`` and every
code/decode arrow becomes ``One``.

Composition is always written "g after f": ``Compose(g, f)`` and ``g . f``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from selfsim.trees import LEAF, Leaf, Pair, Tree, left_comb, parse_tree_prefix, rank


class TermTypeError(TypeError):
    pass


class TermSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


XX = Pair(LEAF, LEAF)


# -- typed arrows -----------------------------------------------------------

@dataclass(frozen=True)
class Id:
    obj: Tree


@dataclass(frozen=True)
class Tau:
    a: Tree
    b: Tree
    c: Tree


@dataclass(frozen=True)
class TauInv:
    a: Tree
    b: Tree
    c: Tree


@dataclass(frozen=True)
class Code:
    """Generalised code ``u -> x``; ``Code(x*x)`` is the code isomorphism itself."""

    obj: Tree


@dataclass(frozen=True)
class Decode:
    obj: Tree


@dataclass(frozen=True)
class Atom:
    name: str
    src: Tree
    tgt: Tree
    invertible: bool = True


@dataclass(frozen=True)
class Tensor:
    f: "ArrowTerm"
    g: "ArrowTerm"


@dataclass(frozen=True)
class Compose:
    g: "ArrowTerm"
    f: "ArrowTerm"


@dataclass(frozen=True)
class Inv:
    f: "ArrowTerm"


ArrowTerm = Union[Id, Tau, TauInv, Code, Decode, Atom, Tensor, Compose, Inv]
ARROW_TYPES = (Id, Tau, TauInv, Code, Decode, Atom, Tensor, Compose, Inv)


# -- monoid arrows ----------------------------------------------------------

@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Alpha:
    pass


@dataclass(frozen=True)
class AlphaInv:
    pass


@dataclass(frozen=True)
class AtomM:
    name: str
    invertible: bool = True


@dataclass(frozen=True)
class Star:
    f: "MonoidTerm"
    g: "MonoidTerm"


@dataclass(frozen=True)
class MCompose:
    g: "MonoidTerm"
    f: "MonoidTerm"


@dataclass(frozen=True)
class MInv:
    f: "MonoidTerm"


MonoidTerm = Union[One, Alpha, AlphaInv, AtomM, Star, MCompose, MInv]
MONOID_TYPES = (One, Alpha, AlphaInv, AtomM, Star, MCompose, MInv)

ONE = One()
ALPHA = Alpha()
ALPHA_INV = AlphaInv()


def is_arrow_term(t) -> bool:
    return isinstance(t, ARROW_TYPES)


def is_monoid_term(t) -> bool:
    return isinstance(t, MONOID_TYPES)


# -- typing -----------------------------------------------------------------

def typeof(f: ArrowTerm) -> tuple:
    """Return ``(src, tgt)`` of a typed arrow, raising ``TermTypeError``."""
    if isinstance(f, Id):
        return f.obj, f.obj
    if isinstance(f, Tau):
        return Pair(f.a, Pair(f.b, f.c)), Pair(Pair(f.a, f.b), f.c)
    if isinstance(f, TauInv):
        return Pair(Pair(f.a, f.b), f.c), Pair(f.a, Pair(f.b, f.c))
    if isinstance(f, Code):
        return f.obj, LEAF
    if isinstance(f, Decode):
        return LEAF, f.obj
    if isinstance(f, Atom):
        return f.src, f.tgt
    if isinstance(f, Tensor):
        fs, ft = typeof(f.f)
        gs, gt = typeof(f.g)
        return Pair(fs, gs), Pair(ft, gt)
    if isinstance(f, Compose):
        fs, ft = typeof(f.f)
        gs, gt = typeof(f.g)
        if ft != gs:
            raise TermTypeError(
                f"cannot compose {print_term(f.g)} after {print_term(f.f)}: "
                f"{ft} != {gs}"
            )
        return fs, gt
    if isinstance(f, Inv):
        if not invertible(f.f):
            raise TermTypeError(f"inv() of non-invertible term {print_term(f.f)}")
        s, t = typeof(f.f)
        return t, s
    raise TypeError(f"not an arrow term: {f!r}")


def src(f: ArrowTerm) -> Tree:
    return typeof(f)[0]


def tgt(f: ArrowTerm) -> Tree:
    return typeof(f)[1]


def invertible(f) -> bool:
    if isinstance(f, (Atom, AtomM)):
        return f.invertible
    if isinstance(f, (Tensor, Star)):
        return invertible(f.f) and invertible(f.g)
    if isinstance(f, (Compose, MCompose)):
        return invertible(f.g) and invertible(f.f)
    if isinstance(f, (Inv, MInv)):
        return invertible(f.f)
    return True


def atoms(f) -> set:
    """Names of all atoms occurring in a term of either sort."""
    if isinstance(f, (Atom, AtomM)):
        return {f.name}
    if isinstance(f, (Tensor, Star)):
        return atoms(f.f) | atoms(f.g)
    if isinstance(f, (Compose, MCompose)):
        return atoms(f.g) | atoms(f.f)
    if isinstance(f, (Inv, MInv)):
        return atoms(f.f)
    return set()


# -- canonical builders -----------------------------------------------------

def code_term(u: Tree) -> ArrowTerm:
    if isinstance(u, Leaf):
        return Id(LEAF)
    if u == XX:
        return Code(XX)
    return Compose(Code(XX), Tensor(code_term(u.left), code_term(u.right)))


def decode_term(u: Tree) -> ArrowTerm:
    if isinstance(u, Leaf):
        return Id(LEAF)
    if u == XX:
        return Decode(XX)
    return Compose(Tensor(decode_term(u.left), decode_term(u.right)), Decode(XX))


def xsub(u: Tree, v: Tree) -> ArrowTerm:
    """The self-similarity arrow ``u -> v``: decode into ``v`` after coding ``u``."""
    return Compose(decode_term(v), code_term(u))


def formal_inverse(f: ArrowTerm) -> ArrowTerm:
    """Structural inverse; only atoms are wrapped in ``Inv``."""
    if isinstance(f, Id):
        return f
    if isinstance(f, Tau):
        return TauInv(f.a, f.b, f.c)
    if isinstance(f, TauInv):
        return Tau(f.a, f.b, f.c)
    if isinstance(f, Code):
        return Decode(f.obj)
    if isinstance(f, Decode):
        return Code(f.obj)
    if isinstance(f, Tensor):
        return Tensor(formal_inverse(f.f), formal_inverse(f.g))
    if isinstance(f, Compose):
        return Compose(formal_inverse(f.f), formal_inverse(f.g))
    if isinstance(f, Inv):
        return f.f
    return Inv(f)


def _then(first: ArrowTerm, second: ArrowTerm) -> ArrowTerm:
    if isinstance(first, Id):
        return second
    if isinstance(second, Id):
        return first
    return Compose(second, first)


def _comb_root(s: Tree) -> ArrowTerm:
    # rotate at the root while the right child is a pair, then recurse left
    if isinstance(s, Leaf):
        return Id(s)
    a, b = s.left, s.right
    if isinstance(b, Leaf):
        inner = _comb_root(a)
        return Id(s) if isinstance(inner, Id) else Tensor(inner, Id(LEAF))
    step = Tau(a, b.left, b.right)
    return _then(step, _comb_root(Pair(Pair(a, b.left), b.right)))


def _comb_left_first(s: Tree) -> ArrowTerm:
    # normalise the left child before rotating at the root
    if isinstance(s, Leaf):
        return Id(s)
    a, b = s.left, s.right
    inner = _comb_left_first(a)
    lc = left_comb(rank(a))
    first = Id(s) if isinstance(inner, Id) else Tensor(inner, Id(b))
    if isinstance(b, Leaf):
        return first
    step = Tau(lc, b.left, b.right)
    return _then(_then(first, step), _comb_left_first(Pair(Pair(lc, b.left), b.right)))


_STRATEGIES = {"root": _comb_root, "left-first": _comb_left_first}


def to_left_comb(s: Tree, strategy: str = "root") -> ArrowTerm:
    return _STRATEGIES[strategy](s)


def wsub(s: Tree, t: Tree, strategy: str = "root"):
    """A canonical associativity arrow ``s -> t``, or ``None`` if ranks differ."""
    if rank(s) != rank(t):
        return None
    if s == t:
        return Id(s)
    there = to_left_comb(s, strategy)
    back = formal_inverse(to_left_comb(t, strategy))
    return _then(there, back)


def alpha_expansion() -> ArrowTerm:
    """The associator of the monoid tensor, spelled out with code and decode."""
    return Compose(
        Code(XX),
        Compose(
            Tensor(Code(XX), Id(LEAF)),
            Compose(
                Tau(LEAF, LEAF, LEAF),
                Compose(Tensor(Id(LEAF), Decode(XX)), Decode(XX)),
            ),
        ),
    )


# -- flattening -------------------------------------------------------------

def flatten(f: ArrowTerm) -> MonoidTerm:
    if isinstance(f, (Id, Code, Decode)):
        return ONE
    if isinstance(f, Tau):
        return ALPHA
    if isinstance(f, TauInv):
        return ALPHA_INV
    if isinstance(f, Atom):
        return AtomM(f.name, f.invertible)
    if isinstance(f, Tensor):
        return Star(flatten(f.f), flatten(f.g))
    if isinstance(f, Compose):
        return MCompose(flatten(f.g), flatten(f.f))
    if isinstance(f, Inv):
        return MInv(flatten(f.f))
    raise TypeError(f"not an arrow term: {f!r}")


def count_alphas(m: MonoidTerm) -> int:
    if isinstance(m, (Alpha, AlphaInv)):
        return 1
    if isinstance(m, (Star, MCompose)):
        a, b = (m.f, m.g)
        return count_alphas(a) + count_alphas(b)
    if isinstance(m, MInv):
        return count_alphas(m.f)
    return 0


# -- printing ---------------------------------------------------------------

def print_term(f) -> str:
    return _print(f, 0)


# precedence: 0 = compose level, 1 = tensor level, 2 = atomic
def _print(f, ctx: int) -> str:
    if isinstance(f, (Compose, MCompose)):
        s = f"{_print(f.g, 1)} . {_print(f.f, 0)}"
        return f"({s})" if ctx > 0 else s
    if isinstance(f, (Tensor, Star)):
        s = f"{_print(f.f, 1)} # {_print(f.g, 2)}"
        return f"({s})" if ctx > 1 else s
    if isinstance(f, Id):
        return f"id({f.obj})"
    if isinstance(f, Tau):
        return f"tau({f.a},{f.b},{f.c})"
    if isinstance(f, TauInv):
        return f"inv(tau({f.a},{f.b},{f.c}))"
    if isinstance(f, Code):
        return f"code({f.obj})"
    if isinstance(f, Decode):
        return f"decode({f.obj})"
    if isinstance(f, (Atom, AtomM)):
        return f.name
    if isinstance(f, (Inv, MInv)):
        inner = _print(f.f, 0)
        # keep inv of a bare generator distinct from the inverse generator
        return f"inv(({inner}))" if isinstance(f.f, (Tau, Alpha)) else f"inv({inner})"
    if isinstance(f, One):
        return "one"
    if isinstance(f, Alpha):
        return "alpha"
    if isinstance(f, AlphaInv):
        return "inv(alpha)"
    raise TypeError(f"not a term: {f!r}")


# -- parsing ----------------------------------------------------------------

_TYPED_KEYWORDS = {"id", "tau", "code", "decode", "inv"}
_MONOID_KEYWORDS = {"one", "alpha", "inv"}


class _TermParser:
    def __init__(self, text: str, typed: bool, atom_table: dict):
        self.text = text
        self.pos = 0
        self.typed = typed
        self.atom_table = atom_table

    def error(self, message):
        raise TermSyntaxError(message, self.text, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos or self.text[start].isdigit():
            self.pos = start
            self.error("expected identifier")
        return self.text[start:self.pos]

    def _tree(self):
        self.skip_ws()
        try:
            t, self.pos = parse_tree_prefix(self.text, self.pos)
        except ValueError as e:
            raise TermSyntaxError(f"bad tree ({e})", self.text, self.pos) from None
        return t

    def tree(self):
        # keyword arguments may drop the outer parentheses: code(x*x)
        t = self._tree()
        if self.peek() == "*":
            self.pos += 1
            t = Pair(t, self._tree())
        return t

    def compose(self):
        g = self.tensor()
        if self.peek() == ".":
            self.pos += 1
            f = self.compose()
            return Compose(g, f) if self.typed else MCompose(g, f)
        return g

    def tensor(self):
        f = self.atomic()
        while self.peek() == "#":
            self.pos += 1
            g = self.atomic()
            f = Tensor(f, g) if self.typed else Star(f, g)
        return f

    def atomic(self):
        if self.peek() == "(":
            self.pos += 1
            f = self.compose()
            self.expect(")")
            return f
        start = self.pos
        name = self.ident()
        if self.typed and name in _TYPED_KEYWORDS and self.peek() == "(":
            self.pos += 1
            if name == "inv":
                # the bare literal inv(tau(..)) is the inverse generator itself
                bare = self.peek() != "("
                inner = self.compose()
                out = TauInv(inner.a, inner.b, inner.c) if bare and isinstance(inner, Tau) else Inv(inner)
            elif name == "tau":
                a = self.tree()
                self.expect(",")
                b = self.tree()
                self.expect(",")
                c = self.tree()
                out = Tau(a, b, c)
            else:
                out = {"id": Id, "code": Code, "decode": Decode}[name](self.tree())
            self.expect(")")
            return out
        if not self.typed:
            if name == "one":
                return ONE
            if name == "alpha":
                return ALPHA
            if name == "inv" and self.peek() == "(":
                self.pos += 1
                bare = self.peek() != "("
                inner = self.compose()
                out = ALPHA_INV if bare and isinstance(inner, Alpha) else MInv(inner)
                self.expect(")")
                return out
        if name in (_TYPED_KEYWORDS if self.typed else _MONOID_KEYWORDS):
            self.pos = start
            self.error(f"keyword {name!r} used as an atom")
        entry = self.atom_table.get(name)
        if self.typed:
            if entry is None:
                self.pos = start
                self.error(f"undeclared atom {name!r}")
            s, t, inv = entry
            return Atom(name, s, t, inv)
        inv = True if entry is None else entry[-1]
        return AtomM(name, inv)

    def parse(self):
        f = self.compose()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return f


def parse_arrow_term(text: str, atom_table: dict | None = None) -> ArrowTerm:
    """Parse a typed term.  ``atom_table`` maps name -> (src, tgt, invertible)."""
    return _TermParser(text, True, atom_table or {}).parse()


def parse_monoid_term(text: str, atom_table: dict | None = None) -> MonoidTerm:
    """Parse an untyped term; ``atom_table`` values end with an invertibility flag."""
    return _TermParser(text, False, atom_table or {}).parse()
