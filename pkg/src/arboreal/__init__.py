"""Codes over labeled trees under the edge-set tree distance.

Exact combinatorics of tree balls and spheres, forest counting with
sphere-packing-style upper bounds on code sizes, four erasure/error
correcting code constructions with decoders, and a CLI that drives
exhaustive verification suites.
"""

from .errors import (
    ArborealError,
    CertificationError,
    ChannelViolationError,
    ResourceGuardError,
    UndecodableError,
)
from .trees import (
    Edge,
    EdgeVector,
    Forest,
    LabeledTree,
    ProfileVector,
    PruferSequence,
    all_edges,
    count_trees,
    edge,
    edge_from_index,
    edge_index,
    edge_vector,
    enumerate_trees,
    format_prufer,
    format_tree,
    line,
    parse_edge_set,
    parse_prufer,
    parse_tree,
    profile,
    prufer_decode,
    prufer_encode,
    remove_edges,
    star,
    tree_distance,
    tree_from_edge_vector,
)
from .counting import (
    BoundReport,
    best_upper_bound,
    corollary_table,
    enumerate_forests,
    forest_count_bruteforce,
    forest_count_closed,
    forest_count_partitions,
    incidence_girth_at_least_six,
    max_code_search,
    reiman_holds,
    sphere_packing_bound,
)
from .balls import (
    BallReport,
    PinnedQuery,
    average_ball_exhaustive,
    average_ball_formula_r1,
    average_recursion_check,
    average_recursion_rhs,
    ball_histogram,
    double_count_check,
    forest_ball,
    forest_ball_size_formula,
    forest_completions,
    lemma29_check,
    line_identity_rhs,
    p1_count,
    p2_count,
    pinned_bound_check,
    pinned_product,
    pinned_recursion_check,
    profile_multiset,
    radius_one_ball_size,
    radius_one_ball_total,
    recursion_check,
    sphere,
    sphere_recursion_check,
    star_ball_formula,
    star_sphere_formula,
    sum_ball_sizes,
    tree_ball,
)
from .codes import (
    BinaryCodeSpec,
    TreeCode,
    TwoStarCode,
    TwoStarParams,
    build_binary_code,
    certify,
    code_from_json,
    code_to_json,
    construct_coset_code,
    construct_line_code,
    construct_star_code,
    construct_two_star_code,
    decode_line_code,
    decode_star_code,
    decode_two_star,
    generic_erasure_decode,
    generic_error_decode,
    load_code,
    min_tree_distance,
    save_code,
    two_star_W_set,
    two_star_distance,
    two_star_membership,
    two_star_tree,
)

__version__ = "0.1.0"
