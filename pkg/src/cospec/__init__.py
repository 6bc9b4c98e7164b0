"""Exact construction and verification of cospectral uniform hypergraphs."""

from .exact import ExactMatrix, Polynomial, char_poly, is_orthogonal, mat_mul, poly_equal
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    are_isomorphic,
    degree,
    neighbourhood,
    parse_hypergraph,
    serialize_hypergraph,
    two_section,
)
from .tensor import (
    Tensor,
    adjacency_tensor,
    eigenpair_residual,
    is_symmetric,
    preserves_unit_tensor,
    sandwich,
    shao_product,
    unit_tensor,
)

__version__ = "0.1.0"
