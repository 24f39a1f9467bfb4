"""Coherence for associativity and self-similarity, decided symbolically and
refuted in an exact arithmetic model on the naturals."""
from selfsim.coherence import (
    Diagram,
    Guaranteed,
    IllTyped,
    ModelCommutesUnproven,
    Refuted,
    decide,
    sim_equivalent,
    strictness_witness,
)
from selfsim.model_nat import ResidueMap, alpha_map, eval_arrow_term, eval_monoid_term, sigma_map
from selfsim.terms import flatten, parse_arrow_term, parse_monoid_term, print_term
from selfsim.trees import LEAF, Leaf, Pair, parse_tree

__all__ = [
    "Diagram", "Guaranteed", "IllTyped", "ModelCommutesUnproven", "Refuted",
    "decide", "sim_equivalent", "strictness_witness",
    "ResidueMap", "alpha_map", "sigma_map", "eval_arrow_term", "eval_monoid_term",
    "flatten", "parse_arrow_term", "parse_monoid_term", "print_term",
    "LEAF", "Leaf", "Pair", "parse_tree",
]
__version__ = "0.1.0"
