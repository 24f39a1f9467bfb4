"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line (visible with ``pytest -s`` or when
run as ``python3 tests/test_acceptance.py``).  All checks are exact.
"""
import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

import oracle  # noqa: E402
from selfsim import model_matrix as mm  # noqa: E402
from selfsim import model_nat as mn  # noqa: E402
from selfsim.coherence import (  # noqa: E402
    Diagram, Guaranteed, Refuted, decide, parallel_pairs, path_map,
)
from selfsim.diagram_file import parse_diagram_file  # noqa: E402
from selfsim.gen import random_atom_diagram, random_canonical_diagram  # noqa: E402
from selfsim.terms import ALPHA, ONE, MCompose, Star, alpha_expansion, flatten, xsub  # noqa: E402
from selfsim.trees import LEAF, enumerate_trees  # noqa: E402

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def chain(maps):
    """Composite of maps listed in application order."""
    out = mn.identity()
    for m in maps:
        out = mn.compose(m, out)
    return out


def report(number, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    assert ok, detail


def test_criterion_01_associator_identity():
    expanded = mn.eval_monoid_term(flatten(alpha_expansion()))
    typed = mn.eval_arrow_term(alpha_expansion())
    printed_ok = mn.pieces_form_bijection(mn.PRINTED_ALPHA_PIECES)
    ok = expanded == mn.alpha_map() == typed and not printed_ok
    report(1, ok, f"expansion == alpha: {expanded == mn.alpha_map()}; "
                  f"printed clause is a bijection: {printed_ok}")


def test_criterion_02_pentagon():
    e = mn.eval_monoid_term
    lhs = e(MCompose(ALPHA, ALPHA))
    rhs = e(MCompose(Star(ALPHA, ONE), MCompose(ALPHA, Star(ONE, ALPHA))))
    verdict = decide(parse_diagram_file((FIXTURES / "pentagon.diag").read_text()).diagram)
    ok = lhs == rhs and isinstance(verdict, Guaranteed)
    report(2, ok, f"alpha.alpha == (alpha#one).alpha.(one#alpha): {lhs == rhs}; fixture {verdict.render()}")


def test_criterion_03_naturality():
    a = mn.alpha_map()
    bad = 0
    for seed in range(200):
        f, g, h = (mn.random_map(3 * seed + i, 6) for i in range(3))
        lhs = mn.compose(a, mn.interleave(f, mn.interleave(g, h)))
        rhs = mn.compose(mn.interleave(mn.interleave(f, g), h), a)
        bad += lhs != rhs
    report(3, bad == 0, f"{200 - bad}/200 triples natural")


def test_criterion_04_decision_soundness():
    ns = np.arange(1 << 12, dtype=np.int64)
    n_diagrams, guaranteed, false_positives = 600, 0, 0
    for seed in range(n_diagrams):
        d = random_canonical_diagram(seed)
        v = decide(d)
        if not isinstance(v, Guaranteed):
            continue
        guaranteed += 1
        for lhs, rhs in parallel_pairs(d):
            exact = path_map(d, lhs, {}) == path_map(d, rhs, {})
            pointwise = np.array_equal(
                oracle.evaluate_path([d.monoid_label(d.edge(e)) for e in lhs])(ns),
                oracle.evaluate_path([d.monoid_label(d.edge(e)) for e in rhs])(ns),
            )
            if not (exact and pointwise):
                false_positives += 1
                break
    ok = false_positives == 0 and guaranteed > 0
    report(4, ok, f"{n_diagrams} diagrams, {guaranteed} GUARANTEED, {false_positives} false positives")


def test_criterion_05_refutation_fixture():
    v = decide(parse_diagram_file((FIXTURES / "associator_vs_recode.diag").read_text()).diagram)
    ok = isinstance(v, Refuted) and (v.n, v.lhs_value, v.rhs_value) == (1, 2, 1)
    report(5, ok, v.render())


def test_criterion_06_xsub_coherence():
    trees = [t for r in range(1, 6) for t in enumerate_trees(r)]
    flat = {(u, v): mn.eval_monoid_term(flatten(xsub(u, v))) for u in trees for v in trees}
    typed = {(u, v): mn.eval_arrow_term(xsub(u, v)) for u in trees for v in trees}
    bad = 0
    for u in trees:
        for v in trees:
            for w in trees:
                for table in (flat, typed):
                    bad += mn.compose(table[v, w], table[u, v]) != table[u, w]
    guaranteed = 0
    for u in trees:
        for v in trees:
            d = Diagram().add_node("u", u).add_node("x", LEAF).add_node("v", v)
            d.add_edge("a", "u", "x", xsub(u, LEAF)).add_edge("b", "x", "v", xsub(LEAF, v))
            d.add_edge("c", "u", "v", xsub(u, v))
            guaranteed += isinstance(decide(d, checks=[(("a", "b"), ("c",))]), Guaranteed)
    n = len(trees)
    ok = bad == 0 and guaranteed == n * n
    report(6, ok, f"{n} trees: {2 * n ** 3 - bad}/{2 * n ** 3} triangles equal, "
                  f"{guaranteed}/{n * n} triangles through x GUARANTEED")


def test_criterion_07_typed_vs_flattened():
    disagreements = pairs = unequal = 0
    for seed in range(100):
        d, env = random_atom_diagram(seed)
        for lhs, rhs in parallel_pairs(d):
            pairs += 1
            typed = [chain([mn.eval_arrow_term(d.edge(e).term, env) for e in p])
                     for p in (lhs, rhs)]
            flat = [path_map(d, p, env) for p in (lhs, rhs)]
            typed_eq, flat_eq = typed[0] == typed[1], flat[0] == flat[1]
            disagreements += typed_eq != flat_eq
            unequal += not typed_eq
        v = decide(d, env)
        if isinstance(v, Refuted):
            typed_l = chain([mn.eval_arrow_term(d.edge(e).term, env) for e in v.lhs])
            typed_r = chain([mn.eval_arrow_term(d.edge(e).term, env) for e in v.rhs])
            disagreements += typed_l(v.n) == typed_r(v.n)
    report(7, disagreements == 0,
           f"100 diagrams, {pairs} path pairs ({unequal} unequal), {disagreements} disagreements")


def test_criterion_08_non_unit_witness():
    one = mn.identity()
    evens = mn.ResidueMap([(1, 0, 1, 0)])
    injective = fixes_evens = 0
    for seed in range(100):
        f, g = mn.random_map(2 * seed, 6), mn.random_map(2 * seed + 1, 6)
        injective += (mn.interleave(one, f) == mn.interleave(one, g)) == (f == g)
        fixes_evens += mn.compose(mn.interleave(one, f), evens) == evens
    sigma = mn.sigma_map()
    sigma_moves_evens = mn.compose(sigma, evens) != evens and sigma(0) == 1
    alpha_not_one = mn.alpha_map()(1) == 2 and mn.first_difference(mn.alpha_map(), one) == 1
    ok = injective == 100 and fixes_evens == 100 and sigma_moves_evens and alpha_not_one
    report(8, ok, f"1#- injective on {injective}/100 pairs; every 1#f fixes evens ({fixes_evens}/100), "
                  f"sigma(0)=1 so sigma is not of that form; alpha differs from one at n=1")


def test_criterion_09_drelated():
    bad = 0
    for seed in range(50):
        c, f, g = (mn.random_map(1000 + 3 * seed + i, 6) for i in range(3))
        conj = mn.compose(mn.invert(c), mn.compose(mn.star_with_code(c, f, g), c))
        bad += conj != mn.interleave(f, g)
    report(9, bad == 0, f"{50 - bad}/50 triples conjugate to the interleaving")


def test_criterion_10_matrix_witness():
    rng = np.random.default_rng(0)
    strict = 0
    for _ in range(100):
        a, b, c = (mm.TruncMatrix(rng.integers(-100, 100, size=(2, 2))) for _ in range(3))
        strict += mm.block_sum(mm.block_sum(a, b), c) == mm.block_sum(a, mm.block_sum(b, c))
    non_assoc = sum(mm.non_strictness_witness(seed, 8) for seed in range(100))
    perm = mm.relating_permutation(8)
    alpha = mn.alpha_map()
    perm_ok = all(i in perm and perm[i] == alpha(i) for i in range(4))
    ok = strict == 100 and non_assoc >= 95 and perm_ok
    report(10, ok, f"block sum associative {strict}/100; interleaved non-associative {non_assoc}/100; "
                   f"permutation on 0..3 {[perm.get(i) for i in range(4)]} vs alpha {[alpha(i) for i in range(4)]}")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
