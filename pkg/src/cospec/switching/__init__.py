"""Switching constructions for cospectral and E-cospectral uniform hypergraphs."""

from .generate import random_ewqh_instance, random_mwqh_instance
from .matrices import MatrixKind, adjacency_matrix, build_switching_matrix, gm_switching_matrix
from .matrix_switch import (
    apply_mgm_simplified,
    apply_mwqh,
    check_mgm_simplified,
    check_mwqh,
    mgm_partition,
    mwqh_matrix,
    pair_count_matrix,
    verify_matrix_cospectral,
    verify_matrix_similarity,
)
from .partition import (
    CheckReport,
    ConditionResult,
    Move,
    SwitchingError,
    SwitchingPartition,
    apply_moves,
)
from .tensor_switch import (
    apply_egm,
    apply_ewqh,
    check_egm,
    check_ewqh,
    ewqh_matrix,
    verify_gm_tensor_similarity,
    verify_tensor_similarity,
)

__all__ = [
    "CheckReport",
    "ConditionResult",
    "MatrixKind",
    "Move",
    "SwitchingError",
    "SwitchingPartition",
    "adjacency_matrix",
    "apply_egm",
    "apply_ewqh",
    "apply_mgm_simplified",
    "apply_moves",
    "apply_mwqh",
    "build_switching_matrix",
    "check_egm",
    "check_ewqh",
    "check_mgm_simplified",
    "check_mwqh",
    "ewqh_matrix",
    "gm_switching_matrix",
    "mgm_partition",
    "mwqh_matrix",
    "pair_count_matrix",
    "random_ewqh_instance",
    "random_mwqh_instance",
    "verify_gm_tensor_similarity",
    "verify_matrix_cospectral",
    "verify_matrix_similarity",
    "verify_tensor_similarity",
]
