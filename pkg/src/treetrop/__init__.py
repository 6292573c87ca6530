"""Exact computations with tree metrics, their r-subset dissimilarity
vectors, and the tropical objects built from them."""
from .algebraic import (
    PlueckerVector,
    ZeroCoordinateError,
    eval_psi,
    eval_three_term,
    maximal_minors,
    phi_r,
    pluecker_2n,
    pullback_identity_check,
    veronese_lift,
)
from .balancing import BalancingReport, audit, audit_all, star_matrix, three_cherry_star
from .combinat import (
    Cube,
    InvalidSubsetError,
    cube_relations,
    enumerate_cubes,
    lex_rank,
    lex_unrank,
    subsets,
)
from .dissim import (
    SubsetVector,
    VectorFormatError,
    apply_trop_phi,
    d2,
    d_classic,
    d_weighted,
    recover_d2,
    vector_from_json,
)
from .linalg import (
    RationalMatrix,
    cube_relation_matrix,
    left_inverse_matrix,
    left_kernel_basis,
    rank,
    trop_phi_matrix,
)
from .membership import (
    Certificate,
    NotATreeMetricError,
    check_cube_conditions,
    check_four_point,
    is_weighted_dissimilarity,
    reconstruct_tree,
    recover_tree,
)
from .tree import (
    NewickError,
    PhyloTree,
    Topology,
    TreeError,
    enumerate_topologies,
    parse_newick,
    random_tree,
    resolutions,
    split_metric,
    to_newick,
)

__version__ = "0.1.0"
