"""Exact Moore-Penrose inverses of signed-graph incidence and Laplacian matrices."""

from .ratmat import RatMatrix, det, pinv_oracle, penrose_verify, rank, rank_factorization
from .sgraph import (
    SignedEdge,
    SignedGraph,
    from_edge_list,
    incidence,
    incidence_to_graph,
    is_balanced,
    laplacian,
    path_sign_matrix,
)
from .enumeration import spanning_trees, tu_subgraphs, vol_squared
from .mpinv import (
    PinvReport,
    balanced_unicyclic_pinv,
    general_pinv,
    laplacian_pinv,
    projector,
    signed_resistance,
    tree_pinv,
    unbalanced_unicyclic_inverse,
)

__version__ = "0.1.0"
