"""Exact model: partial bijections of the naturals, affine on dyadic classes.

A ``ResidueMap`` is a finite set of pieces ``(k, r, k2, r2)``; the piece sends
every ``n = r + 2**k * j`` to ``2**k2 * j + r2``.  Input classes are pairwise
disjoint, and so are output classes.  The class is closed under composition,
inversion and the interleaving tensor, and its canonical form (maximally
merged pieces, sorted) makes equality exact.

About the associator.  A frequently quoted three-clause form of the
associator reads ``(n-3)/2`` on ``n = 3 (mod 4)``; that clause sends
3 to 0, which the even clause also hits, so it is not a bijection.  Tracking
where the three factors of ``f*(g*h)`` and ``(f*g)*h`` live gives
``4j+3 -> 2j+1``, i.e. ``(n-1)/2``, which is what ``alpha_map`` uses.
``PRINTED_ALPHA_PIECES`` keeps the printed variant for regression tests.
"""
from __future__ import annotations

import random
import re
from functools import reduce

import numpy as np

from selfsim import kernels
from selfsim.terms import (
    Alpha,
    AlphaInv,
    Atom,
    AtomM,
    Code,
    Compose,
    Decode,
    Id,
    Inv,
    MCompose,
    MInv,
    MonoidTerm,
    One,
    Star,
    Tau,
    TauInv,
    Tensor,
    invertible,
)


class MissingAtomBinding(KeyError):
    pass


class InvertNonInvertible(ValueError):
    pass


class MapLiteralError(ValueError):
    pass


def _check_piece(p):
    k, r, kp, rp = p
    if k < 0 or kp < 0 or not (0 <= r < 1 << k) or not (0 <= rp < 1 << kp):
        raise ValueError(f"malformed piece {p}")


def _pairwise_disjoint(classes) -> bool:
    # sort coarse first; a class overlaps an earlier one iff some prefix matches
    seen = set()
    for k, r in sorted(classes):
        for j in range(k + 1):
            if (j, r & ((1 << j) - 1)) in seen:
                return False
        seen.add((k, r))
    return True


def _canonical(pieces) -> tuple:
    by_class = {(p[0], p[1]): (p[2], p[3]) for p in pieces}
    if not by_class:
        return ()
    top = max(k for k, _ in by_class)
    for k in range(top, 0, -1):
        half = 1 << (k - 1)
        for r in [r for (kk, r) in list(by_class) if kk == k and r < half]:
            lo = by_class.get((k, r))
            hi = by_class.get((k, r + half))
            if lo is None or hi is None:
                continue
            kp, rp = lo
            if kp >= 1 and rp < (1 << (kp - 1)) and hi == (kp, rp + (1 << (kp - 1))):
                del by_class[(k, r)], by_class[(k, r + half)]
                by_class[(k - 1, r)] = (kp - 1, rp)
    return tuple(sorted((k, r, kp, rp) for (k, r), (kp, rp) in by_class.items()))


class ResidueMap:
    """Canonical piecewise dyadic-affine partial injection of the naturals."""

    __slots__ = ("pieces", "_arrays")

    def __init__(self, pieces=(), check: bool = True):
        pieces = [tuple(int(v) for v in p) for p in pieces]
        if check:
            for p in pieces:
                _check_piece(p)
            if not _pairwise_disjoint([(k, r) for k, r, _, _ in pieces]):
                raise ValueError("input classes overlap")
            if not _pairwise_disjoint([(kp, rp) for _, _, kp, rp in pieces]):
                raise ValueError("output classes overlap (not injective)")
        self.pieces = _canonical(pieces)
        self._arrays = None

    def __eq__(self, other):
        return isinstance(other, ResidueMap) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        return f"ResidueMap({list(self.pieces)})"

    def __str__(self):
        return format_map(self)

    def __call__(self, n: int):
        return apply(self, n)

    def __matmul__(self, other: "ResidueMap") -> "ResidueMap":
        return compose(self, other)

    @property
    def max_modulus_exp(self) -> int:
        return max((max(k, kp) for k, _, kp, _ in self.pieces), default=0)

    def arrays(self) -> tuple:
        if self._arrays is None:
            cols = np.array(self.pieces, dtype=np.int64).reshape(-1, 4)
            self._arrays = tuple(np.ascontiguousarray(cols[:, i]) for i in range(4))
        return self._arrays

    def is_total(self) -> bool:
        return _covers([(k, r) for k, r, _, _ in self.pieces])

    def is_surjective(self) -> bool:
        return _covers([(kp, rp) for _, _, kp, rp in self.pieces])

    def is_bijection(self) -> bool:
        return self.is_total() and self.is_surjective()


def _covers(classes) -> bool:
    if not classes:
        return False
    top = max(k for k, _ in classes)
    return sum(1 << (top - k) for k, _ in classes) == 1 << top


def pieces_form_bijection(pieces) -> bool:
    """Whether raw pieces have both input and output classes partitioning the naturals."""
    ins = [(k, r) for k, r, _, _ in pieces]
    outs = [(kp, rp) for _, _, kp, rp in pieces]
    return all(_pairwise_disjoint(c) and _covers(c) for c in (ins, outs))


def identity() -> ResidueMap:
    return ResidueMap([(0, 0, 0, 0)], check=False)


def empty_map() -> ResidueMap:
    return ResidueMap([], check=False)


def apply(m: ResidueMap, n: int):
    """Image of ``n``, or ``None`` where undefined."""
    if n < 0:
        return None
    for k, r, kp, rp in m.pieces:
        if n & ((1 << k) - 1) == r:
            return (((n - r) >> k) << kp) + rp
    return None


def compose(g: ResidueMap, f: ResidueMap) -> ResidueMap:
    """``g`` after ``f``; the domain is whatever ``g`` accepts from ``f``."""
    out = []
    for k, r, kp, rp in f.pieces:
        for l, s, lp, sp in g.pieces:
            if l <= kp:
                if rp & ((1 << l) - 1) == s:
                    out.append((k, r, lp + kp - l, (((rp - s) >> l) << lp) + sp))
            elif s & ((1 << kp) - 1) == rp:
                t0 = (s - rp) >> kp
                out.append((k + l - kp, r + (t0 << k), lp, sp))
    return ResidueMap(out, check=False)


def invert(f: ResidueMap) -> ResidueMap:
    return ResidueMap([(kp, rp, k, r) for k, r, kp, rp in f.pieces], check=False)


def equal(f: ResidueMap, g: ResidueMap) -> bool:
    return f.pieces == g.pieces


def interleave(f: ResidueMap, g: ResidueMap) -> ResidueMap:
    """The tensor: ``f`` acts on the evens, ``g`` on the odds."""
    out = [(k + 1, 2 * r, kp + 1, 2 * rp) for k, r, kp, rp in f.pieces]
    out += [(k + 1, 2 * r + 1, kp + 1, 2 * rp + 1) for k, r, kp, rp in g.pieces]
    return ResidueMap(out, check=False)


# 2m -> 4m, 4j+1 -> 4j+2, 4j+3 -> 2j+1
ALPHA_PIECES = ((1, 0, 2, 0), (2, 1, 2, 2), (2, 3, 1, 1))
# third clause as printed, (n-3)/2: 4j+3 -> 2j
PRINTED_ALPHA_PIECES = ((1, 0, 2, 0), (2, 1, 2, 2), (2, 3, 1, 0))
SIGMA_PIECES = ((1, 0, 1, 1), (1, 1, 1, 0))


def alpha_map() -> ResidueMap:
    return ResidueMap(ALPHA_PIECES)


def sigma_map() -> ResidueMap:
    return ResidueMap(SIGMA_PIECES)


def cantor_code(n: int, i: int) -> int:
    if i not in (0, 1):
        raise ValueError(f"tag must be 0 or 1, got {i}")
    return 2 * n + i


def cantor_decode(m: int) -> tuple:
    return m >> 1, m & 1


def star_with_code(c: ResidueMap, f: ResidueMap, g: ResidueMap) -> ResidueMap:
    """Tensor induced by the alternative code ``c``: conjugate of the interleaving."""
    return compose(c, compose(interleave(f, g), invert(c)))


def _random_partition(rng: random.Random, count: int) -> list:
    classes = [(0, 0)]
    while len(classes) < count:
        k, r = classes.pop(rng.randrange(len(classes)))
        classes += [(k + 1, r), (k + 1, r + (1 << k))]
    return classes


def random_map(seed, size: int) -> ResidueMap:
    """Seeded total bijection with at most ``size`` pieces."""
    if size < 1:
        raise ValueError("size must be at least 1")
    rng = random.Random(seed)
    count = rng.randint(1, size)
    ins = sorted(_random_partition(rng, count))
    outs = _random_partition(rng, count)
    rng.shuffle(outs)
    return ResidueMap([(k, r, kp, rp) for (k, r), (kp, rp) in zip(ins, outs)], check=False)


def eval_monoid_term(m: MonoidTerm, env: dict | None = None) -> ResidueMap:
    env = env or {}
    if isinstance(m, One):
        return identity()
    if isinstance(m, Alpha):
        return alpha_map()
    if isinstance(m, AlphaInv):
        return invert(alpha_map())
    if isinstance(m, AtomM):
        try:
            return env[m.name]
        except KeyError:
            raise MissingAtomBinding(m.name) from None
    if isinstance(m, Star):
        return interleave(eval_monoid_term(m.f, env), eval_monoid_term(m.g, env))
    if isinstance(m, MCompose):
        return compose(eval_monoid_term(m.g, env), eval_monoid_term(m.f, env))
    if isinstance(m, MInv):
        inner = m.f
        if not invertible(inner):
            raise InvertNonInvertible(f"term contains a non-invertible atom: {inner}")
        return invert(eval_monoid_term(inner, env))
    raise TypeError(f"not a monoid term: {m!r}")


def eval_path(terms, env: dict | None = None) -> ResidueMap:
    """Composite of a path given in traversal order (first edge applied first)."""
    maps = [eval_monoid_term(t, env) for t in terms]
    return reduce(lambda acc, m: compose(m, acc), maps, identity())


def apply_array(m: ResidueMap, ns) -> np.ndarray:
    """Pointwise images of an int64 array; ``-1`` marks undefined."""
    ns = np.asarray(ns, dtype=np.int64)
    top = int(ns.max()) if ns.size else 0
    if top.bit_length() + m.max_modulus_exp >= kernels.SAFE_BITS:
        return np.array([-1 if (v := apply(m, int(n))) is None else v for n in ns], dtype=object)
    return kernels.apply_pieces(*m.arrays(), ns)


def first_difference(f: ResidueMap, g: ResidueMap, stop: int | None = None):
    """Least ``n`` where ``f`` and ``g`` differ in value or definedness.

    Both maps are affine or undefined on every class modulo ``2**K`` (``K``
    the largest exponent present), so scanning ``[0, 2**(K+1))`` is exact.
    """
    if equal(f, g):
        return None
    exact_stop = 1 << (max(f.max_modulus_exp, g.max_modulus_exp) + 1)
    stop = exact_stop if stop is None else min(stop, exact_stop)
    if exact_stop.bit_length() * 2 < kernels.SAFE_BITS:
        n = kernels.first_mismatch(f.arrays(), g.arrays(), 0, stop)
        return None if n < 0 else n
    for n in range(stop):
        if apply(f, n) != apply(g, n):
            return n
    return None


def refute(paths, env: dict | None = None, bound: int = 4096):
    """Least ``n < bound`` separating two paths of monoid terms, else ``None``."""
    lhs, rhs = paths
    return first_difference(eval_path(lhs, env), eval_path(rhs, env), bound)


# -- map literals -----------------------------------------------------------

_PIECE_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+(?:\^\d+)?)\s*->\s*(\d+)\s*/\s*(\d+(?:\^\d+)?)\s*$")


def _modulus_exp(text: str) -> int:
    if "^" in text:
        base, e = text.split("^")
        if base != "2":
            raise MapLiteralError(f"modulus {text!r} is not a power of two")
        return int(e)
    m = int(text)
    if m < 1 or m & (m - 1):
        raise MapLiteralError(f"modulus {m} is not a power of two")
    return m.bit_length() - 1


def parse_map(text: str) -> ResidueMap:
    """Parse ``{ r/M -> r'/M', ... }`` with power-of-two moduli."""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise MapLiteralError(f"map literal must be braced: {text!r}")
    body = body[1:-1].strip()
    pieces = []
    for item in filter(None, (s.strip() for s in body.split(","))):
        mt = _PIECE_RE.match(item)
        if not mt:
            raise MapLiteralError(f"bad piece {item!r}")
        r, k, rp, kp = int(mt[1]), _modulus_exp(mt[2]), int(mt[3]), _modulus_exp(mt[4])
        pieces.append((k, r, kp, rp))
    try:
        return ResidueMap(pieces)
    except ValueError as e:
        raise MapLiteralError(str(e)) from None


def format_map(m: ResidueMap) -> str:
    return "{ " + ", ".join(f"{r}/{1 << k} -> {rp}/{1 << kp}" for k, r, kp, rp in m.pieces) + " }"


def parse_env(text: str) -> dict:
    """Parse an atom environment: ``name = { ... }`` entries, ``#`` comments."""
    clean = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    env = {}
    pos = 0
    entry = re.compile(r"\s*([A-Za-z_]\w*)\s*=\s*(\{[^}]*\})\s*")
    while pos < len(clean):
        if not clean[pos:].strip():
            break
        mt = entry.match(clean, pos)
        if not mt:
            line = clean.count("\n", 0, pos) + 1
            raise MapLiteralError(f"line {line}: expected 'name = {{ ... }}'")
        env[mt[1]] = parse_map(mt[2])
        pos = mt.end()
    return env


def format_env(env: dict) -> str:
    return "".join(f"{name} = {format_map(m)}\n" for name, m in env.items())


def eval_arrow_term(f, env: dict | None = None) -> ResidueMap:
    """Evaluate a typed arrow where the code isomorphism is the identity.

    This instantiates the free category in the model directly, without going
    through ``flatten``; the two must agree.
    """
    env = env or {}
    if isinstance(f, (Id, Code, Decode)):
        return identity()
    if isinstance(f, Tau):
        return alpha_map()
    if isinstance(f, TauInv):
        return invert(alpha_map())
    if isinstance(f, Atom):
        try:
            return env[f.name]
        except KeyError:
            raise MissingAtomBinding(f.name) from None
    if isinstance(f, Tensor):
        return interleave(eval_arrow_term(f.f, env), eval_arrow_term(f.g, env))
    if isinstance(f, Compose):
        return compose(eval_arrow_term(f.g, env), eval_arrow_term(f.f, env))
    if isinstance(f, Inv):
        if not invertible(f.f):
            raise InvertNonInvertible(f"term contains a non-invertible atom: {f.f}")
        return invert(eval_arrow_term(f.f, env))
    raise TypeError(f"not an arrow term: {f!r}")
