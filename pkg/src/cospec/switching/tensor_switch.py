"""Adjacency-tensor switchings: E-WQH (paired cells) and E-GM (one switching set).

Both act only on edges made of one switched vertex plus a (k-1)-set S of the
remaining vertices, and both are certified by an orthogonal Q with
Q A_G Q^T = A_H.
"""

from __future__ import annotations

from typing import Iterable

from ..exact import ExactMatrix
from ..hypergraph import Hypergraph
from ..tensor import adjacency_tensor, sandwich
from .matrices import MatrixKind, build_switching_matrix, gm_switching_matrix
from .partition import (
    CheckReport,
    Move,
    SwitchingError,
    SwitchingPartition,
    apply_moves,
    boundary_subsets,
    vertex_set,
)


def _check_host(G: Hypergraph, P: SwitchingPartition) -> None:
    if (P.n, P.k) != (G.n, G.k):
        raise ValueError(f"partition is for n={P.n}, k={P.k}; hypergraph has n={G.n}, k={G.k}")


def check_ewqh(G: Hypergraph, P: SwitchingPartition) -> CheckReport:
    """Conditions for E-WQH switching with cell pairs (C_i, C_{i+1}).

    * every edge meets the union of the cells in at most one vertex;
    * for each (k-1)-set S of D and each pair, Gamma(S) restricted to the pair
      is exactly C_i, exactly C_{i+1}, or meets both cells equally often.

    The plan moves S from C_i to C_{i+1} (or back) whenever the first
    alternative holds with nonempty cells.
    """
    _check_host(G, P)
    report = CheckReport("ewqh")
    U = set(P.switched_vertices)
    bad = next((e for e in G.edges if len(U.intersection(e)) > 1), None)
    report.add(
        "one-cell-vertex-per-edge",
        bad is None,
        "" if bad is None else f"edge {bad} has {len(U.intersection(bad))} vertices in the cells",
    )
    witness = ""
    for S, nbrs in sorted(boundary_subsets(G, P.switched_vertices).items()):
        for i, first, second in P.pairs:
            hit = nbrs.intersection(first + second)
            if not hit:
                continue
            if hit == set(first):
                report.switch_plan.append(Move(S, first, second, (i, i + 1)))
            elif hit == set(second):
                report.switch_plan.append(Move(S, second, first, (i + 1, i)))
            elif len(hit.intersection(first)) != len(hit.intersection(second)) and not witness:
                witness = (
                    f"S={S} has {len(hit.intersection(first))} neighbours in C_{i} "
                    f"and {len(hit.intersection(second))} in C_{i + 1}"
                )
    report.add("neighbourhood-per-pair", not witness, witness)
    return report.finish()


def apply_ewqh(G: Hypergraph, P: SwitchingPartition, trust: bool = False) -> Hypergraph:
    report = check_ewqh(G, P)
    if not report.ok and not trust:
        raise SwitchingError(f"E-WQH conditions fail: {report.failures()[0]}")
    return apply_moves(G, report.switch_plan)


def ewqh_matrix(P: SwitchingPartition) -> ExactMatrix:
    return build_switching_matrix(MatrixKind.EWQH, P)


def verify_tensor_similarity(G: Hypergraph, H: Hypergraph, P: SwitchingPartition) -> bool:
    """True iff Q A_G Q^T == A_H exactly for the E-WQH matrix Q of P."""
    if (G.n, G.k) != (H.n, H.k):
        raise ValueError("hypergraphs differ in size or uniformity")
    _check_host(G, P)
    return sandwich(ewqh_matrix(P), adjacency_tensor(G)) == adjacency_tensor(H)


def check_egm(G: Hypergraph, C: Iterable[int]) -> CheckReport:
    """E-GM conditions: C independent, each (k-1)-set of D has 0, |C|/2 or |C|
    neighbours in C.  The plan lists the half-neighbourhood sets."""
    C = vertex_set(G, C)
    if len(C) < 2 or len(C) % 2:
        raise ValueError(f"E-GM switching set must have even size >= 2, got {len(C)}")
    inside = set(C)
    report = CheckReport("egm")
    bad = next((e for e in G.edges if len(inside.intersection(e)) > 1), None)
    report.add(
        "independent-switching-set",
        bad is None,
        "" if bad is None else f"edge {bad} holds {len(inside.intersection(bad))} vertices of C",
    )
    half = len(C) // 2
    witness = ""
    for S, nbrs in sorted(boundary_subsets(G, C).items()):
        if len(nbrs) == half:
            report.switch_plan.append(
                Move(S, tuple(sorted(nbrs)), tuple(v for v in C if v not in nbrs))
            )
        elif len(nbrs) not in (0, len(C)) and not witness:
            witness = f"S={S} has {len(nbrs)} neighbours in C, not in {{0, {half}, {len(C)}}}"
    report.add("neighbour-count", not witness, witness)
    return report.finish()


def apply_egm(G: Hypergraph, C: Iterable[int], trust: bool = False) -> Hypergraph:
    report = check_egm(G, C)
    if not report.ok and not trust:
        raise SwitchingError(f"E-GM conditions fail: {report.failures()[0]}")
    return apply_moves(G, report.switch_plan)


def verify_gm_tensor_similarity(G: Hypergraph, H: Hypergraph, C: Iterable[int]) -> bool:
    """True iff Q A_G Q^T == A_H for Q = (2/|C|) J - I on C."""
    if (G.n, G.k) != (H.n, H.k):
        raise ValueError("hypergraphs differ in size or uniformity")
    return sandwich(gm_switching_matrix(C, G.n), adjacency_tensor(G)) == adjacency_tensor(H)
