"""Exact and numerical tools for sparse polynomial systems whose positive
solutions are counted through positively decorated triangulations."""

from .complexes import (
    BipartitenessCheck,
    DualGraph,
    PointConfiguration,
    SimplicialComplex,
    balanced_coloring,
    decoration_from_coloring,
    dual_graph,
    is_bipartite,
    is_positively_decorated,
    is_unimodular,
    normalized_volume,
    simplex_signs,
    total_normalized_volume,
)
from .completion import decorate
from .exactlinalg import (
    RankDeficiencyError,
    RationalMatrix,
    chirotope,
    determinant,
    is_oriented,
    left_kernel_basis,
    maximal_minors,
    positive_kernel_vector,
    rank,
    solve,
)
from .families import (
    Poset,
    asymptotic_estimate,
    count_snd,
    count_snd_series,
    cross_polytope_triangulation,
    cyclic_facet_count,
    cyclic_heights,
    cyclic_minimal_triangulation,
    cyclic_points,
    diagonal_coefficients,
    linear_extensions,
    multilinear_tp_system,
    order_polytope_triangulation,
    snd_subcomplex,
)
from .numerics import CertifiedCount, certified_positive_count, newton_refine
from .viro import (
    ViroSystem,
    build_viro_system,
    predicted_solutions,
    regularity_check,
    render_system,
    truncated_solution,
)

__version__ = "0.1.0"

__all__ = [
    "BipartitenessCheck",
    "CertifiedCount",
    "DualGraph",
    "PointConfiguration",
    "Poset",
    "RankDeficiencyError",
    "RationalMatrix",
    "SimplicialComplex",
    "ViroSystem",
    "asymptotic_estimate",
    "balanced_coloring",
    "build_viro_system",
    "certified_positive_count",
    "chirotope",
    "count_snd",
    "count_snd_series",
    "cross_polytope_triangulation",
    "cyclic_facet_count",
    "cyclic_heights",
    "cyclic_minimal_triangulation",
    "cyclic_points",
    "decorate",
    "decoration_from_coloring",
    "determinant",
    "diagonal_coefficients",
    "dual_graph",
    "is_bipartite",
    "is_oriented",
    "is_positively_decorated",
    "is_unimodular",
    "left_kernel_basis",
    "linear_extensions",
    "maximal_minors",
    "multilinear_tp_system",
    "newton_refine",
    "normalized_volume",
    "order_polytope_triangulation",
    "positive_kernel_vector",
    "predicted_solutions",
    "rank",
    "regularity_check",
    "render_system",
    "simplex_signs",
    "snd_subcomplex",
    "solve",
    "total_normalized_volume",
    "truncated_solution",
]
