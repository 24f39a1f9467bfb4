"""Diagrams and the commutativity decision procedure.

A diagram is guaranteed to commute when its flattening admits a consistent
typing by formal trees: every ``Alpha`` becomes an associator between tree
patterns, every ``One`` an identity, and the objects at each node must agree.
Trees with a rank-preserving arrow between them form a poset, so such a
typing makes all parallel paths equal.  The typing is found by first-order
unification.  When it fails, or when the diagram contains atoms, the exact
model on the naturals is used to look for a counterexample.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Union

from selfsim import model_nat
from selfsim.model_nat import MissingAtomBinding, ResidueMap
from selfsim.terms import (
    Alpha,
    AlphaInv,
    Atom,
    AtomM,
    MCompose,
    MInv,
    One,
    Star,
    TermTypeError,
    atoms,
    flatten,
    is_arrow_term,
    is_monoid_term,
    typeof,
    wsub,
    xsub,
)
from selfsim.trees import LEAF, MetaVar, PPair, to_tree

DEFAULT_BOUND = 4096


class AtomPresent(ValueError):
    pass


class NotGraphIso(ValueError):
    pass


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    tgt: str
    term: object


@dataclass
class Diagram:
    """Directed multigraph; nodes carry trees when ``typed``."""

    nodes: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)
    typed: bool = True

    def add_node(self, node_id: str, obj=None):
        if node_id in self.nodes:
            raise DiagramError(f"duplicate node {node_id!r}")
        if self.typed and obj is None:
            raise DiagramError(f"typed node {node_id!r} needs an object")
        self.nodes[node_id] = obj if self.typed else None
        return self

    def add_edge(self, edge_id: str, src: str, tgt: str, term):
        if any(e.id == edge_id for e in self.edges):
            raise DiagramError(f"duplicate edge {edge_id!r}")
        for n in (src, tgt):
            if n not in self.nodes:
                raise DiagramError(f"edge {edge_id!r} uses undeclared node {n!r}")
        self.edges.append(Edge(edge_id, src, tgt, term))
        return self

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise DiagramError(f"unknown edge {edge_id!r}")

    def typecheck(self):
        """Raise ``TermTypeError`` unless every edge matches its endpoints."""
        for e in self.edges:
            if self.typed:
                if not is_arrow_term(e.term):
                    raise TermTypeError(f"edge {e.id}: expected a typed term")
                s, t = typeof(e.term)
                if (s, t) != (self.nodes[e.src], self.nodes[e.tgt]):
                    raise TermTypeError(
                        f"edge {e.id}: term has type {s} -> {t} but endpoints are "
                        f"{self.nodes[e.src]} -> {self.nodes[e.tgt]}"
                    )
            elif not is_monoid_term(e.term):
                raise TermTypeError(f"edge {e.id}: expected a monoid term")

    def monoid_label(self, e: Edge):
        return flatten(e.term) if self.typed else e.term

    def object_of(self, node_id: str):
        return self.nodes[node_id] if self.typed else LEAF

    def atom_names(self) -> set:
        return set().union(*(atoms(e.term) for e in self.edges)) if self.edges else set()


# -- verdicts ---------------------------------------------------------------

@dataclass(frozen=True)
class Guaranteed:
    substitution: dict
    objects: dict
    kind = "GUARANTEED"
    severity = 0

    def render(self) -> str:
        return "GUARANTEED"


@dataclass(frozen=True)
class Refuted:
    lhs: tuple
    rhs: tuple
    n: int
    lhs_value: Optional[int]
    rhs_value: Optional[int]
    kind = "REFUTED"
    severity = 2

    def render(self) -> str:
        show = lambda v: "-" if v is None else str(v)
        return f"REFUTED n={self.n} lhs={show(self.lhs_value)} rhs={show(self.rhs_value)}"


@dataclass(frozen=True)
class ModelCommutesUnproven:
    bound: int
    kind = "MODEL_COMMUTES_UNPROVEN"
    severity = 1

    def render(self) -> str:
        return f"MODEL_COMMUTES_UNPROVEN bound={self.bound}"


@dataclass(frozen=True)
class IllTyped:
    detail: str
    kind = "ILL_TYPED"
    severity = 1

    def render(self) -> str:
        return f"ILL_TYPED {self.detail}"


Verdict = Union[Guaranteed, Refuted, ModelCommutesUnproven, IllTyped]


# -- lifting and unification -----------------------------------------------

class _Fresh:
    def __init__(self, tag):
        self.tag = tag
        self.count = itertools.count()

    def __call__(self) -> MetaVar:
        return MetaVar((self.tag, next(self.count)))


def lift(m, fresh=None) -> tuple:
    """Most general formal typing of an atom-free monoid term.

    Returns ``(src, tgt, constraints)`` where constraints are pattern
    equations that must hold for the typing to exist.
    """
    fresh = fresh or _Fresh("v")
    eqs: list = []

    def go(t):
        if isinstance(t, One):
            v = fresh()
            return v, v
        if isinstance(t, (Alpha, AlphaInv)):
            a, b, c = fresh(), fresh(), fresh()
            right, left = PPair(a, PPair(b, c)), PPair(PPair(a, b), c)
            return (right, left) if isinstance(t, Alpha) else (left, right)
        if isinstance(t, Star):
            fs, ft = go(t.f)
            gs, gt = go(t.g)
            return PPair(fs, gs), PPair(ft, gt)
        if isinstance(t, MCompose):
            fs, ft = go(t.f)
            gs, gt = go(t.g)
            eqs.append((ft, gs))
            return fs, gt
        if isinstance(t, MInv):
            s, u = go(t.f)
            return u, s
        if isinstance(t, AtomM):
            raise AtomPresent(t.name)
        raise TypeError(f"not a monoid term: {t!r}")

    s, t = go(m)
    return s, t, eqs


def _walk(p, s):
    while isinstance(p, MetaVar) and p in s:
        p = s[p]
    return p


def _occurs(v, p, s) -> bool:
    p = _walk(p, s)
    if p == v:
        return True
    if isinstance(p, PPair):
        return _occurs(v, p.left, s) or _occurs(v, p.right, s)
    return False


def apply_subst(p, s: dict):
    p = _walk(p, s)
    if isinstance(p, PPair):
        return PPair(apply_subst(p.left, s), apply_subst(p.right, s))
    return p


def unify(eqs) -> Optional[dict]:
    """Most general unifier of pattern equations, or ``None``."""
    s: dict = {}
    stack = list(eqs)
    while stack:
        a, b = stack.pop()
        a, b = _walk(a, s), _walk(b, s)
        if a == b:
            continue
        if isinstance(b, MetaVar) and not isinstance(a, MetaVar):
            a, b = b, a
        if isinstance(a, MetaVar):
            if _occurs(a, b, s):
                return None
            s[a] = b
        elif isinstance(a, PPair) and isinstance(b, PPair):
            stack.append((a.right, b.right))
            stack.append((a.left, b.left))
        else:
            return None
    return {v: apply_subst(v, s) for v in s}


def node_var(node_id: str) -> MetaVar:
    return MetaVar(("node", node_id))


def formal_typing(d: Diagram, edges) -> Optional[dict]:
    """Unifier giving every node a formal tree, or ``None`` if none exists."""
    eqs = []
    for i, e in enumerate(edges):
        s, t, inner = lift(d.monoid_label(e), _Fresh(("edge", i)))
        eqs += inner
        eqs += [(node_var(e.src), s), (node_var(e.tgt), t)]
    return unify(eqs)


# -- paths ------------------------------------------------------------------

def simple_paths(d: Diagram, a: str, b: str) -> list:
    """Edge-id sequences from ``a`` to ``b`` visiting no node twice.

    For ``a == b`` this is the empty path plus every simple cycle through ``a``.
    """
    out_edges: dict = {n: [] for n in d.nodes}
    for e in d.edges:
        out_edges[e.src].append(e)
    found = [()] if a == b else []

    def walk(node, path, seen):
        for e in out_edges[node]:
            if e.tgt == b:
                found.append(path + (e.id,))
            if e.tgt not in seen and e.tgt != b:
                walk(e.tgt, path + (e.id,), seen | {e.tgt})

    walk(a, (), {a})
    return found


def parallel_pairs(d: Diagram) -> list:
    pairs = []
    for a in d.nodes:
        for b in d.nodes:
            paths = simple_paths(d, a, b)
            pairs += list(itertools.combinations(paths, 2))
    return pairs


def check_path(d: Diagram, path) -> tuple:
    """Validate a path; return its ``(start, end)`` nodes (``None`` if empty)."""
    start = end = None
    for eid in path:
        e = d.edge(eid)
        if end is not None and e.src != end:
            raise DiagramError(f"path {';'.join(path)} is broken at {eid!r}")
        start = e.src if start is None else start
        end = e.tgt
    return start, end


def path_map(d: Diagram, path, env: dict | None) -> ResidueMap:
    return model_nat.eval_path([d.monoid_label(d.edge(eid)) for eid in path], env)


# -- decision ---------------------------------------------------------------

def _check_env(d: Diagram, env: dict):
    invertible_flags: dict = {}

    def collect(t):
        if isinstance(t, (Atom, AtomM)):
            invertible_flags[t.name] = invertible_flags.get(t.name, True) and t.invertible
        for sub in ("f", "g"):
            if hasattr(t, sub):
                collect(getattr(t, sub))

    for e in d.edges:
        collect(e.term)
    for name, inv in invertible_flags.items():
        if name not in env:
            raise MissingAtomBinding(name)
        if inv and not env[name].is_bijection():
            raise ValueError(f"atom {name!r} is invertible but bound to a non-bijection")


def decide(d: Diagram, env: dict | None = None, bound: int = DEFAULT_BOUND, checks=None) -> Verdict:
    """Decide commutativity of ``d``.

    ``checks`` is an optional list of ``(lhs_path, rhs_path)`` edge-id
    sequences; by default every pair of parallel simple paths is compared.
    """
    env = env or {}
    try:
        d.typecheck()
    except TermTypeError as e:
        return IllTyped(str(e))
    if checks is None:
        pairs = parallel_pairs(d)
    else:
        pairs = []
        for lhs, rhs in checks:
            ends_l, ends_r = check_path(d, lhs), check_path(d, rhs)
            if not lhs:
                ends_l = (ends_r[0], ends_r[0])
            if not rhs:
                ends_r = (ends_l[0], ends_l[0])
            if ends_l != ends_r:
                raise DiagramError(f"paths {';'.join(lhs)} and {';'.join(rhs)} are not parallel")
            pairs.append((tuple(lhs), tuple(rhs)))
    # only edges on compared paths constrain the formal typing
    used = {eid for pair in pairs for path in pair for eid in path}
    scope = [e for e in d.edges if e.id in used]

    if not any(atoms(e.term) for e in scope):
        s = formal_typing(d, scope)
        if s is not None:
            objects = {n: to_tree(apply_subst(node_var(n), s), LEAF) for n in d.nodes}
            return Guaranteed(s, objects)
    else:
        _check_env(Diagram(d.nodes, list(scope), d.typed), env)

    cache: dict = {}

    def composite(path):
        if path not in cache:
            cache[path] = path_map(d, path, env)
        return cache[path]

    best = None
    for order, (lhs, rhs) in enumerate(pairs):
        f, g = composite(lhs), composite(rhs)
        if model_nat.equal(f, g):
            continue
        n = model_nat.first_difference(f, g, bound)
        if n is None:
            n = model_nat.first_difference(f, g)
        if best is None or (n, order) < best[0]:
            best = ((n, order), lhs, rhs, f, g)
    if best is None:
        return ModelCommutesUnproven(bound)
    (n, _), lhs, rhs, f, g = best
    return Refuted(tuple(lhs), tuple(rhs), n, model_nat.apply(f, n), model_nat.apply(g, n))


def strictness_witness(d: Diagram, s: dict) -> Diagram:
    """Retype ``d`` over the unifier ``s`` with canonical associativity edges.

    Raises ``DiagramError`` for an edge the unifier did not constrain to
    trees of equal rank (possible for edges outside every compared pair).
    """
    objects = {n: to_tree(apply_subst(node_var(n), s), LEAF) for n in d.nodes}
    out = Diagram(typed=True)
    for n, t in objects.items():
        out.add_node(n, t)
    for e in d.edges:
        term = wsub(objects[e.src], objects[e.tgt])
        if term is None:
            raise DiagramError(f"edge {e.id}: unifier assigns trees of different rank")
        out.add_edge(e.id, e.src, e.tgt, term)
    return out


def sim_equivalent(d1: Diagram, d2: Diagram, node_map=None, edge_map=None,
                   env: dict | None = None, bound: int = DEFAULT_BOUND) -> bool:
    """Self-similarity equivalence: every square with xsub verticals commutes.

    ``node_map``/``edge_map`` send ids of ``d1`` to ids of ``d2`` and default
    to the identity on ids.
    """
    node_map = node_map or {n: n for n in d1.nodes}
    edge_map = edge_map or {e.id: e.id for e in d1.edges}
    if sorted(node_map) != sorted(d1.nodes) or sorted(node_map.values()) != sorted(d2.nodes):
        raise NotGraphIso("node map is not a bijection")
    if sorted(edge_map) != sorted(e.id for e in d1.edges) or sorted(edge_map.values()) != sorted(
        e.id for e in d2.edges
    ):
        raise NotGraphIso("edge map is not a bijection")
    typed = d1.typed and d2.typed
    for e in d1.edges:
        e2 = d2.edge(edge_map[e.id])
        if (node_map[e.src], node_map[e.tgt]) != (e2.src, e2.tgt):
            raise NotGraphIso(f"edge {e.id} is not sent to a parallel edge")
        sq = Diagram(typed=typed)
        ts, tt = f"T:{e.src}", f"T:{e.tgt}"
        us, ut = f"U:{e2.src}", f"U:{e2.tgt}"
        for nid, obj in ((ts, d1.object_of(e.src)), (tt, d1.object_of(e.tgt)),
                         (us, d2.object_of(e2.src)), (ut, d2.object_of(e2.tgt))):
            if nid not in sq.nodes:
                sq.add_node(nid, obj)
        left = xsub(d2.object_of(e2.src), d1.object_of(e.src))
        right = xsub(d2.object_of(e2.tgt), d1.object_of(e.tgt))
        top, bottom = e.term, e2.term
        if not typed:
            left, right = flatten(left), flatten(right)
            top, bottom = d1.monoid_label(e), d2.monoid_label(e2)
        sq.add_edge("top", ts, tt, top)
        sq.add_edge("bottom", us, ut, bottom)
        sq.add_edge("left", us, ts, left)
        sq.add_edge("right", ut, tt, right)
        verdict = decide(sq, env, bound, checks=[(("bottom", "right"), ("left", "top"))])
        if isinstance(verdict, (Refuted, IllTyped)):
            return False
    return True
