"""Conditional connectivity, spectral radii, and extremal-family verification
for graphs on up to 64 vertices."""

from .graphs import (
    EdgeSet,
    Graph,
    GraphError,
    VertexSet,
    add_edges,
    are_isomorphic,
    complete,
    components,
    cycle,
    delete_vertices,
    disjoint_union,
    dot_export,
    empty_graph,
    from_edges,
    graph6_decode,
    graph6_encode,
    is_connected,
    join,
    min_degree,
    path,
    remove_edges,
)
from .spectral import (
    PerronData,
    QuotientMatrix,
    SpectralConfig,
    equitable_quotient,
    hsf_bound,
    hsf_equality_class,
    kelmans_shift,
    perron,
    quotient_spectral_radius,
    refine_equitable,
)
from .conn import (
    classical_kappa,
    classical_lambda,
    kappa_h_r,
    kappa_oracle,
    lambda_h_r,
    lambda_oracle,
)
from .families import (
    ExtremalParams,
    LabeledFamily,
    ParameterError,
    b_lambda,
    f_lambda,
    g_kappa,
    k_family,
)

__version__ = "0.1.0"
