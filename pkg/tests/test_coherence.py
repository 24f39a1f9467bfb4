import numpy as np
import pytest

import oracle
from selfsim import model_nat as mn
from selfsim.coherence import (
    Diagram, DiagramError, Guaranteed, IllTyped, ModelCommutesUnproven, NotGraphIso,
    Refuted, decide, lift, parallel_pairs, path_map, simple_paths, sim_equivalent,
    strictness_witness, unify,
)
from selfsim.gen import random_canonical_diagram
from selfsim.terms import (
    ALPHA, ONE, XX, Atom, AtomM, Compose, Id, MCompose, Star, Tau, Tensor,
    code_term, parse_arrow_term, parse_monoid_term, wsub, xsub,
)
from selfsim.trees import LEAF, MetaVar, PPair, Pair, parse_tree


def pentagon():
    d = Diagram()
    for name, t in [("p0", "(x*(x*(x*x)))"), ("p1", "((x*x)*(x*x))"), ("p2", "(((x*x)*x)*x)"),
                    ("p3", "(x*((x*x)*x))"), ("p4", "((x*(x*x))*x)")]:
        d.add_node(name, parse_tree(t))
    d.add_edge("a", "p0", "p1", parse_arrow_term("tau(x,x,(x*x))"))
    d.add_edge("b", "p1", "p2", parse_arrow_term("tau((x*x),x,x)"))
    d.add_edge("c", "p0", "p3", parse_arrow_term("id(x) # tau(x,x,x)"))
    d.add_edge("d", "p3", "p4", parse_arrow_term("tau(x,(x*x),x)"))
    d.add_edge("e", "p4", "p2", parse_arrow_term("tau(x,x,x) # id(x)"))
    return d


def associator_vs_recode():
    d = Diagram()
    d.add_node("a", parse_tree("(x*(x*x))")).add_node("b", parse_tree("((x*x)*x)"))
    d.add_edge("t", "a", "b", Tau(LEAF, LEAF, LEAF))
    d.add_edge("c", "a", "b", parse_arrow_term("(decode(x*x) # id(x)) . (id(x) # code(x*x))"))
    return d


def test_pentagon_is_guaranteed():
    v = decide(pentagon())
    assert isinstance(v, Guaranteed) and v.render() == "GUARANTEED"
    assert v.objects["p0"] == parse_tree("(x*(x*(x*x)))")


def test_associator_vs_recode_is_refuted_at_one():
    v = decide(associator_vs_recode())
    assert isinstance(v, Refuted)
    assert (v.n, v.lhs_value, v.rhs_value) == (1, 2, 1)
    assert v.render() == "REFUTED n=1 lhs=2 rhs=1"


def test_atoms_never_guaranteed():
    d = Diagram(typed=False).add_node("a").add_node("b")
    d.add_edge("p", "a", "b", AtomM("f")).add_edge("q", "a", "b", AtomM("g"))
    env = {"f": mn.sigma_map(), "g": mn.sigma_map()}
    v = decide(d, env)
    assert isinstance(v, ModelCommutesUnproven)
    assert v.render() == "MODEL_COMMUTES_UNPROVEN bound=4096"
    v = decide(d, {"f": mn.sigma_map(), "g": mn.identity()})
    assert isinstance(v, Refuted) and v.n == 0


def test_atom_equal_to_itself_is_unproven_not_guaranteed():
    d = Diagram(typed=False).add_node("a").add_node("b")
    d.add_edge("p", "a", "b", AtomM("f")).add_edge("q", "a", "b", AtomM("f"))
    assert isinstance(decide(d, {"f": mn.alpha_map()}, bound=10), ModelCommutesUnproven)


def test_missing_and_bad_bindings():
    d = Diagram(typed=False).add_node("a").add_edge("p", "a", "a", AtomM("f"))
    with pytest.raises(mn.MissingAtomBinding):
        decide(d, {})
    with pytest.raises(ValueError):
        decide(d, {"f": mn.ResidueMap([(1, 0, 0, 0)])})


def test_ill_typed_edge():
    d = Diagram().add_node("a", LEAF).add_node("b", XX)
    d.add_edge("e", "a", "b", Id(LEAF))
    assert isinstance(decide(d), IllTyped)


def test_untyped_alpha_loop_is_refuted():
    d = Diagram(typed=False).add_node("a").add_edge("e", "a", "a", ALPHA)
    v = decide(d)
    assert isinstance(v, Refuted) and v.n == 1 and v.rhs == ("e",) and v.lhs == ()


def test_untyped_pentagon():
    d = Diagram(typed=False)
    for n in "01234":
        d.add_node(n)
    d.add_edge("a", "0", "1", ALPHA).add_edge("b", "1", "2", ALPHA)
    d.add_edge("c", "0", "3", Star(ONE, ALPHA)).add_edge("d", "3", "4", ALPHA)
    d.add_edge("e", "4", "2", Star(ALPHA, ONE))
    assert isinstance(decide(d), Guaranteed)


def test_explicit_checks_and_errors():
    d = pentagon()
    assert isinstance(decide(d, checks=[(("a", "b"), ("c", "d", "e"))]), Guaranteed)
    with pytest.raises(DiagramError):
        decide(d, checks=[(("a",), ("c",))])
    with pytest.raises(DiagramError):
        decide(d, checks=[(("a", "d"), ("c",))])


def test_simple_paths_and_pairs():
    d = pentagon()
    assert sorted(simple_paths(d, "p0", "p2")) == [("a", "b"), ("c", "d", "e")]
    assert simple_paths(d, "p0", "p0") == [()]
    assert parallel_pairs(d) == [(("a", "b"), ("c", "d", "e"))]


def test_unify_occurs_check():
    v = MetaVar("v")
    assert unify([(v, PPair(v, LEAF))]) is None
    assert unify([(PPair(v, LEAF), PPair(LEAF, LEAF))]) == {v: LEAF}
    assert unify([(LEAF, PPair(LEAF, LEAF))]) is None


def test_lift_alpha():
    s, t, eqs = lift(ALPHA)
    assert isinstance(s, PPair) and isinstance(s.right, PPair) and isinstance(t.left, PPair)
    assert eqs == []
    _, _, eqs = lift(MCompose(ALPHA, ALPHA))
    assert len(eqs) == 1


def test_strictness_witness_is_guaranteed_and_equivalent():
    d = pentagon()
    v = decide(d)
    w = strictness_witness(d, v.substitution)
    assert isinstance(decide(w), Guaranteed)
    assert sim_equivalent(d, w)


def test_sim_equivalent_detects_different_edges():
    d1 = associator_vs_recode()
    d2 = Diagram().add_node("a", parse_tree("(x*(x*x))")).add_node("b", parse_tree("((x*x)*x)"))
    d2.add_edge("t", "a", "b", Tau(LEAF, LEAF, LEAF)).add_edge("c", "a", "b", Tau(LEAF, LEAF, LEAF))
    assert not sim_equivalent(d1, d2)
    assert sim_equivalent(d1, d1)


def test_sim_equivalent_needs_graph_iso():
    d1, d2 = pentagon(), associator_vs_recode()
    with pytest.raises(NotGraphIso):
        sim_equivalent(d1, d2)


def test_xsub_edges_retype_nodes():
    u, v = parse_tree("((x*x)*(x*x))"), parse_tree("(x*x)")
    d = Diagram().add_node("a", u).add_node("b", v)
    d.add_edge("s", "a", "b", xsub(u, v)).add_edge("c", "a", "b", Compose(xsub(LEAF, v), code_term(u)))
    assert isinstance(decide(d), Guaranteed)


@pytest.mark.parametrize("seed", range(60))
def test_guaranteed_verdicts_are_model_equalities(seed):
    d = random_canonical_diagram(seed)
    v = decide(d)
    ns = np.arange(1 << 10, dtype=np.int64)
    for lhs, rhs in parallel_pairs(d):
        f, g = path_map(d, lhs, {}), path_map(d, rhs, {})
        ref_f = oracle.evaluate_path([d.monoid_label(d.edge(e)) for e in lhs])(ns)
        assert np.array_equal(mn.apply_array(f, ns), ref_f)
        if isinstance(v, Guaranteed):
            assert f == g
    if isinstance(v, Refuted):
        f, g = path_map(d, v.lhs, {}), path_map(d, v.rhs, {})
        assert f(v.n) != g(v.n)


def test_difference_beyond_bound_is_still_refuted():
    late = mn.ResidueMap([(10, r, 10, r) for r in range(1023)]
                         + [(11, 1023, 11, 2047), (11, 2047, 11, 1023)])
    d = Diagram(typed=False).add_node("a").add_node("b")
    d.add_edge("p", "a", "b", AtomM("f")).add_edge("q", "a", "b", AtomM("g"))
    v = decide(d, {"f": mn.identity(), "g": late}, bound=100)
    assert isinstance(v, Refuted) and (v.n, v.lhs_value, v.rhs_value) == (1023, 1023, 2047)
