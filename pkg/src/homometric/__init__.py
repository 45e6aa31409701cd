"""Homometric vertex-set pairs in trees.

Two disjoint equal-size vertex sets are homometric when their
multisets of pairwise distances coincide.  This package constructs
such pairs with guaranteed size in any tree, does better on haircombs,
and ships an exhaustive oracle plus generators for checking both.
"""

from .graphs import (
    Graph,
    HomometricPair,
    ParseError,
    Tree,
    bfs_distances,
    distance_profile,
    is_homometric,
    longest_path,
    pair_from_sets,
    parse_graph,
    parse_pair,
    parse_tree,
    profile_digest,
    serialize_graph,
    serialize_pair,
    serialize_tree,
    split_path_halves,
)
from .haircomb import (
    Haircomb,
    LegRanking,
    OverlapTable,
    build_haircomb,
    find_in_haircomb,
    overlap_pair,
    overlap_table,
    parse_haircomb,
    rank_legs,
    recognize_haircomb,
    serialize_haircomb,
)
from .oracle import (
    DEFAULT_SEED,
    ORACLE_CUTOFF,
    GeneratorSpec,
    OracleResult,
    enumerate_labeled_trees,
    generate,
    oracle_max_homometric,
    prufer_to_tree,
)
from .pairing import (
    DownPath,
    PairingPlan,
    RootedTree,
    binary_bound_holds,
    construct_pairing,
    family_h,
    family_r,
    find_in_tree,
    pairing_value,
    paths_independent,
    root_at,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Tree",
    "ParseError",
    "HomometricPair",
    "bfs_distances",
    "longest_path",
    "distance_profile",
    "profile_digest",
    "is_homometric",
    "pair_from_sets",
    "parse_graph",
    "parse_tree",
    "parse_pair",
    "serialize_graph",
    "serialize_tree",
    "serialize_pair",
    "split_path_halves",
    "RootedTree",
    "DownPath",
    "PairingPlan",
    "root_at",
    "pairing_value",
    "construct_pairing",
    "paths_independent",
    "find_in_tree",
    "binary_bound_holds",
    "family_h",
    "family_r",
    "Haircomb",
    "LegRanking",
    "OverlapTable",
    "build_haircomb",
    "recognize_haircomb",
    "parse_haircomb",
    "serialize_haircomb",
    "rank_legs",
    "overlap_table",
    "overlap_pair",
    "find_in_haircomb",
    "OracleResult",
    "GeneratorSpec",
    "oracle_max_homometric",
    "enumerate_labeled_trees",
    "prufer_to_tree",
    "generate",
    "DEFAULT_SEED",
    "ORACLE_CUTOFF",
]
