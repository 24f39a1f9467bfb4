import random

from selfsim import model_nat as mn
from selfsim.coherence import Diagram
from selfsim.gen import random_atom_diagram, random_canonical_diagram, random_canonical_term, random_tree
from selfsim.terms import Compose, Tensor, atoms, flatten, typeof


def test_generated_terms_are_well_typed_and_atom_free():
    rng = random.Random(11)
    for _ in range(200):
        s, t = random_tree(rng, 5), random_tree(rng, 5)
        f = random_canonical_term(rng, s, t)
        assert typeof(f) == (s, t)
        assert not atoms(f)


def test_diagrams_are_seeded():
    a, b = random_canonical_diagram(5), random_canonical_diagram(5)
    assert a == b and isinstance(a, Diagram)
    a.typecheck()
    d, env = random_atom_diagram(5)
    d.typecheck()
    assert d.atom_names() <= set(env)
    assert all(m.is_bijection() for m in env.values())


def test_flattening_is_functorial():
    rng = random.Random(2024)
    env = {"f": mn.random_map(1, 6)}
    for _ in range(200):
        s, m, t = (random_tree(rng, 4) for _ in range(3))
        f, g = random_canonical_term(rng, s, m), random_canonical_term(rng, m, t)
        ev = lambda x: mn.eval_monoid_term(flatten(x), env)
        assert ev(Compose(g, f)) == mn.compose(ev(g), ev(f))
        assert ev(Tensor(f, g)) == mn.interleave(ev(f), ev(g))
        assert ev(Compose(g, f)) == mn.eval_arrow_term(Compose(g, f), env)
