"""Distance Laplacian and distance signless Laplacian spectral radii of
connected graphs, graft transformations, and exhaustive extremal checks."""

from . import graph6
from .eigen import (
    EPS_CMP,
    FullSpectrum,
    Method,
    Ordering,
    SpectralSummary,
    compare_rho,
    eps_cmp,
    jacobi_spectrum,
    rho_L,
    rho_Q,
    rho_many,
)
from .enumeration import (
    GraphClassQuery,
    TreeClassQuery,
    connected_graphs,
    connected_graphs_with_k_pendants,
    free_trees,
    nonisomorphic_connected_graphs,
    trees_with_k_leaves,
)
from .errors import *  # noqa: F401,F403
from .families import (
    DoubleBroomParams,
    End,
    TripleStarPathParams,
    attach_pendant_paths,
    double_broom,
    parse_family,
    path,
    recognize_double_broom,
    relocate_star,
    spider,
    star,
    triple_star_path,
)
from .graph import (
    DistanceData,
    Graph,
    build_L,
    build_Q,
    degrees_and_pendants,
    distance_data,
    format_edge_list,
    from_edge_list,
    parse_edge_list,
    quadratic_form_L,
    quadratic_form_Q,
    tree_canonical_form,
)
from .transforms import (
    BranchDecomposition,
    GraftConditionReport,
    Variant,
    add_edge,
    decompositions,
    eigen_graft_condition,
    graft_condition,
    move_branch,
    shift_pendant_path,
)
from .verify import (
    ClassQuery,
    ExtremalCertificate,
    Objective,
    SweepReport,
    extremal_search,
    report_broom_profile,
    sweep_lemma,
)

__version__ = "0.1.0"
