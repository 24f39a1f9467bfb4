"""Seeded generators of trees, canonical terms and diagrams."""
from __future__ import annotations

import random

from selfsim.coherence import Diagram
from selfsim.model_nat import random_map
from selfsim.terms import (
    Atom,
    Compose,
    Inv,
    Tau,
    TauInv,
    Tensor,
    code_term,
    decode_term,
    wsub,
    xsub,
)
from selfsim.trees import LEAF, Leaf, Pair, enumerate_trees, rank


def random_tree(rng: random.Random, max_rank: int = 5, min_rank: int = 1):
    return rng.choice(enumerate_trees(rng.randint(min_rank, max_rank)))


def random_canonical_term(rng: random.Random, s, t, depth: int = 2):
    """A random atom-free canonical arrow ``s -> t``.

    Built from xsub, wsub, generalised code/decode, associators, tensors of
    smaller canonical arrows and composites through a random middle tree.
    """
    options = ["xsub"]
    if wsub(s, t) is not None:
        options += ["wsub", "wsub"]
    if isinstance(t, Leaf):
        options.append("code")
    if isinstance(s, Leaf):
        options.append("decode")
    if (isinstance(s, Pair) and isinstance(s.right, Pair)
            and t == Pair(Pair(s.left, s.right.left), s.right.right)):
        options.append("tau")
    if (isinstance(s, Pair) and isinstance(s.left, Pair)
            and t == Pair(s.left.left, Pair(s.left.right, s.right))):
        options.append("tauinv")
    if depth > 0:
        if isinstance(s, Pair) and isinstance(t, Pair):
            options.append("tensor")
        options.append("compose")
    kind = rng.choice(options)
    if kind == "xsub":
        return xsub(s, t)
    if kind == "wsub":
        return wsub(s, t, rng.choice(["root", "left-first"]))
    if kind == "code":
        return code_term(s)
    if kind == "decode":
        return decode_term(t)
    if kind == "tau":
        return Tau(s.left, s.right.left, s.right.right)
    if kind == "tauinv":
        return TauInv(s.left.left, s.left.right, s.right)
    if kind == "tensor":
        return Tensor(random_canonical_term(rng, s.left, t.left, depth - 1),
                      random_canonical_term(rng, s.right, t.right, depth - 1))
    if rng.random() < 0.5 and wsub(s, t) is not None:
        # stay in one rank so the composite can still be associativity-only
        mid = rng.choice(enumerate_trees(rank(s)))
    else:
        mid = random_tree(rng, 5)
    return Compose(random_canonical_term(rng, mid, t, depth - 1),
                   random_canonical_term(rng, s, mid, depth - 1))


def random_canonical_diagram(seed, max_rank: int = 5, n_nodes=(2, 4), n_edges=(2, 5)) -> Diagram:
    """Random typed atom-free diagram; trees share one rank about half the time."""
    rng = random.Random(seed)
    one_rank = rng.random() < 0.5
    r = rng.randint(1, max_rank)
    d = Diagram(typed=True)
    for i in range(rng.randint(*n_nodes)):
        obj = rng.choice(enumerate_trees(r)) if one_rank else random_tree(rng, max_rank)
        d.add_node(f"n{i}", obj)
    ids = list(d.nodes)
    for j in range(rng.randint(*n_edges)):
        a, b = rng.choice(ids), rng.choice(ids)
        d.add_edge(f"e{j}", a, b, random_canonical_term(rng, d.nodes[a], d.nodes[b]))
    return d


def random_atom_diagram(seed, n_atoms: int = 2, max_rank: int = 3) -> tuple:
    """Random typed diagram mixing atoms into canonical edges, plus an environment."""
    rng = random.Random(seed)
    d = Diagram(typed=True)
    for i in range(rng.randint(2, 3)):
        d.add_node(f"n{i}", random_tree(rng, max_rank))
    ids = list(d.nodes)
    env = {}
    for j in range(rng.randint(2, 4)):
        a, b = rng.choice(ids), rng.choice(ids)
        s, t = d.nodes[a], d.nodes[b]
        if rng.random() < 0.6:
            name = f"f{rng.randrange(n_atoms)}"
            env.setdefault(name, random_map(rng.randrange(1 << 30), 4))
            # the atom lives at x; xsub arrows carry it to the node objects
            atom = Atom(name, LEAF, LEAF)
            if rng.random() < 0.3:
                atom = Inv(atom)
            term = Compose(xsub(LEAF, t), Compose(atom, xsub(s, LEAF)))
        else:
            term = random_canonical_term(rng, s, t, 1)
        d.add_edge(f"e{j}", a, b, term)
    return d, env
