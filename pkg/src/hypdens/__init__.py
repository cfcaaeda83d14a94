"""Exact independence densities of hypergraphs."""

from .chains import (
    Chain,
    DensitySequence,
    LimitClass,
    chain_invariance_check,
    classify_limit,
    clique_union_density,
    density_sequence,
    interleaved_chain,
    jumping_chain,
    path_closed_form,
)
from .constructions import (
    BitStream,
    Graph,
    IntervalValue,
    bits_of_rational,
    ffree_lift,
    graph_isomorphic,
    h_of_r_prefix,
    hhat_prefix,
    pentagonal_partial,
    product_prefix_S,
)
from .core import Hypergraph, Matching, disjoint_union, greedy_maximal_matching, induced, maximum_matching, normalize
from .count import (
    IndependencePolynomial,
    count_independent,
    count_independent_bruteforce,
    eval_poly,
    independence_number,
    independence_polynomial,
)
from .density import Dyadic, matching_bounds, nnn_bound, rho, rho_recursive
from .density import id as independence_density

__version__ = "0.1.0"
