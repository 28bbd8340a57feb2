"""Eigenvector-centrality screening for graph isomorphism."""

from .graph import (
    Graph,
    GraphFormatError,
    complete_graph,
    cycle_graph,
    degree_sequence,
    disjoint_union,
    empty_graph,
    parse_graph,
    path_graph,
    permute,
    render_graph,
    star_graph,
)
from .invariants import (
    CandidateMapping,
    FilterVerdict,
    InvariantSignature,
    SignatureCache,
    Verdict,
    candidate_mapping,
    compare,
    sequences_equal,
    signature,
)
from .matcher import MatchResult, brute_force_isomorphic, is_isomorphic, verify_mapping
from .spectral import ConvergenceConfig, EvcResult, power_iteration, evc_sequence

__version__ = "0.1.0"
