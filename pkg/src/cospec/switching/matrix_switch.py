"""Adjacency-matrix switchings: matrix WQH and its one-pair GM-style special case."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable

import numpy as np

from ..exact import ExactMatrix, char_poly, mat_mul, poly_equal
from ..hypergraph import Hypergraph, HypergraphError, neighbourhood, pair_multiplicities
from .matrices import MatrixKind, adjacency_matrix, build_switching_matrix
from .partition import CheckReport, Move, SwitchingError, SwitchingPartition, apply_moves, vertex_set


def pair_count_matrix(G: Hypergraph):
    """Integer n x n array of pair multiplicities (the unscaled adjacency matrix)."""
    a = np.zeros((G.n, G.n), dtype=np.int64)
    for (u, v), count in pair_multiplicities(G).items():
        a[u - 1, v - 1] = a[v - 1, u - 1] = count
    return a


def _cell_row_sums(counts, cells) -> dict[int, list[int]]:
    """Vertex v -> [sum of counts[v, c] over c in cell j, for each cell j]."""
    indicator = np.zeros((counts.shape[0], len(cells)), dtype=np.int64)
    for j, cell in enumerate(cells):
        indicator[[c - 1 for c in cell], j] = 1
    R = counts @ indicator
    return {v: [int(x) for x in R[v - 1]] for cell in cells for v in cell}


def check_mwqh(
    G: Hypergraph,
    P: SwitchingPartition,
    strict: bool = False,
    scaled: bool = True,
    balance: bool = True,
    counts=None,
) -> CheckReport:
    """Conditions for matrix WQH switching.

    1. all cells have one size t and |D| = k - 1;
    2. every edge has 0 or k - 1 vertices in D;
    3. per pair, Gamma(D) on C_i u C_{i+1} is C_i (or C_{i+1} unless
       ``strict``) or meets both cells equally;
    4. every block B_ij (i, j over all cells) of the adjacency matrix has
       constant row sums and column sums with a common value alpha_ij;
    5. (``balance``) for some set of pairs containing every switched pair,
       exchanging the two cells of each of them leaves the alpha table
       unchanged (recorded in ``q_pairs``).

    Conditions 1-4 alone do not force cospectrality: with alpha_11 != alpha_22
    the switch generally changes the spectrum.  ``balance=False`` checks them
    without 5, for studying exactly that.  ``alpha`` is reported for the
    scaled matrix by default.  ``counts`` may pass a precomputed
    :func:`pair_count_matrix` of G.
    """
    if (P.n, P.k) != (G.n, G.k):
        raise ValueError(f"partition is for n={P.n}, k={P.k}; hypergraph has n={G.n}, k={G.k}")
    report = CheckReport("mwqh-strict" if strict else "mwqh")
    sizes = sorted({len(c) for c in P.cells})
    size_ok = len(sizes) == 1 and len(P.D) == G.k - 1
    witness = ""
    if len(sizes) != 1:
        witness = f"cell sizes {sizes} are not all equal"
    elif len(P.D) != G.k - 1:
        witness = f"|D| = {len(P.D)}, expected k-1 = {G.k - 1}"
    report.add("cell-and-D-sizes", size_ok, witness)

    D = set(P.D)
    bad = next((e for e in G.edges if len(D.intersection(e)) not in (0, G.k - 1)), None)
    report.add(
        "edges-meet-D-in-0-or-k-1",
        bad is None,
        "" if bad is None else f"edge {bad} has {len(D.intersection(bad))} vertices in D",
    )

    gamma: set[int] = set()
    if size_ok:
        try:
            gamma = set(neighbourhood(G, P.D))
        except HypergraphError:
            gamma = set()
    witness = ""
    for i, first, second in P.pairs:
        hit = gamma.intersection(first + second)
        if not hit:
            continue
        if hit == set(first):
            report.switch_plan.append(Move(P.D, first, second, (i, i + 1)))
        elif hit == set(second) and not strict:
            report.switch_plan.append(Move(P.D, second, first, (i + 1, i)))
        elif len(hit.intersection(first)) != len(hit.intersection(second)) and not witness:
            witness = (
                f"Gamma(D) has {len(hit.intersection(first))} vertices in C_{i} "
                f"and {len(hit.intersection(second))} in C_{i + 1}"
            )
    report.add("neighbourhood-of-D-per-pair", not witness, witness)

    if counts is None:
        counts = pair_count_matrix(G)
    div = G.k - 1 if scaled else 1
    A_rows = _cell_row_sums(counts, P.cells)
    witness = ""
    for i, ci in enumerate(P.cells, start=1):
        for j, cj in enumerate(P.cells, start=1):
            if not ci or not cj:
                continue
            # B is symmetric, so column sums of B_ij are row sums of B_ji
            row_sums = [Fraction(A_rows[r][j - 1], div) for r in ci]
            col_sums = [Fraction(A_rows[c][i - 1], div) for c in cj]
            values = set(row_sums) | set(col_sums)
            if len(values) == 1:
                report.alpha[(i, j)] = values.pop()
            elif not witness:
                if len(set(row_sums)) > 1:
                    r = next(v for v, s in zip(ci, row_sums) if s != row_sums[0])
                    witness = f"block B_{i}{j}: row of vertex {r} sums to {row_sums[ci.index(r)]}, row of {ci[0]} to {row_sums[0]}"
                elif len(set(col_sums)) > 1:
                    c = next(v for v, s in zip(cj, col_sums) if s != col_sums[0])
                    witness = f"block B_{i}{j}: column of vertex {c} sums to {col_sums[cj.index(c)]}, column of {cj[0]} to {col_sums[0]}"
                else:
                    witness = f"block B_{i}{j}: row sums {row_sums[0]} differ from column sums {col_sums[0]}"
    report.add("constant-block-sums", not witness, witness)
    if balance:
        witness = _certify_pairs(report, P)
        report.add("switched-pairs-balanced", not witness, witness)
    return report.finish()


def switched_pairs(report: CheckReport) -> tuple[int, ...]:
    """Odd cell numbers of the pairs that the plan actually switches."""
    return tuple(sorted({min(mv.cells) for mv in report.switch_plan if mv.cells}))


def _swap_invariant(alpha: dict, cells: int, pairs: Iterable[int]) -> str:
    swap = {c: c for c in range(1, cells + 1)}
    for i in pairs:
        swap[i], swap[i + 1] = i + 1, i
    for (i, j), a in sorted(alpha.items()):
        b = alpha[(swap[i], swap[j])]
        if a != b:
            return f"alpha_{i}{j} = {a} but alpha_{swap[i]}{swap[j]} = {b}"
    return ""


def _certify_pairs(report: CheckReport, P: SwitchingPartition) -> str:
    """Find pairs S, containing every switched pair, with alpha invariant under
    exchanging C_i and C_{i+1} for each i in S.

    That invariance is exactly what makes Q (blocks on S, identity elsewhere)
    fix the adjacency matrix away from D.  Smallest S first; the choice is
    stored in ``report.q_pairs``.  Returns a witness when no S works.
    """
    cells = len(P.cells)
    if len(report.alpha) != cells * cells:
        return ""
    needed = switched_pairs(report)
    optional = [i for i, _, _ in P.pairs if i not in needed]
    first_failure = ""
    for size in range(len(optional) + 1):
        for extra in combinations(optional, size):
            S = tuple(sorted(needed + extra))
            failure = _swap_invariant(report.alpha, cells, S)
            if not failure:
                report.q_pairs = S
                return ""
            first_failure = first_failure or failure
    return first_failure


def apply_mwqh(G: Hypergraph, P: SwitchingPartition, trust: bool = False, strict: bool = False) -> Hypergraph:
    report = check_mwqh(G, P, strict=strict)
    if not report.ok and not trust:
        raise SwitchingError(f"matrix WQH conditions fail: {report.failures()[0]}")
    return apply_moves(G, report.switch_plan)


def mwqh_matrix(P: SwitchingPartition, pairs: Iterable[int] | None = None) -> ExactMatrix:
    return build_switching_matrix(MatrixKind.MWQH, P, pairs=pairs)


def verify_matrix_similarity(
    G: Hypergraph,
    H: Hypergraph,
    P: SwitchingPartition,
    scaled: bool = True,
    pairs: Iterable[int] | None = None,
) -> bool:
    """True iff Q A_G Q^T == A_H exactly for the matrix-WQH Q of P.

    ``pairs`` restricts Q to the given odd cell numbers (identity on the rest);
    by default those certified by :func:`check_mwqh`, else the switched ones.
    """
    if G.n != H.n:
        raise ValueError("hypergraphs differ in vertex count")
    if pairs is None:
        report = check_mwqh(G, P)
        pairs = report.q_pairs if report.ok else switched_pairs(report)
    Q = mwqh_matrix(P, pairs)
    return mat_mul(mat_mul(Q, adjacency_matrix(G, scaled)), Q.T) == adjacency_matrix(H, scaled)


def verify_matrix_cospectral(G: Hypergraph, H: Hypergraph, scaled: bool = True) -> bool:
    if G.n != H.n:
        raise ValueError("hypergraphs differ in vertex count")
    return poly_equal(char_poly(adjacency_matrix(G, scaled)), char_poly(adjacency_matrix(H, scaled)))


def mgm_partition(G: Hypergraph, C: Iterable[int]) -> SwitchingPartition | None:
    """The one-pair matrix-WQH partition (C_1, C_2, D) with Gamma(D) n C = C_1, if any.

    D is the complement of C.  None when |D| != k - 1 or Gamma(D) does not
    split C in half.
    """
    C = vertex_set(G, C)
    if len(C) < 2 or len(C) % 2:
        raise ValueError(f"switching set must have even size >= 2, got {len(C)}")
    D = tuple(v for v in G.vertices if v not in C)
    if len(D) != G.k - 1:
        return None
    gamma = set(neighbourhood(G, D)) if D else set()
    first = tuple(v for v in C if v in gamma)
    if len(first) * 2 != len(C):
        return None
    second = tuple(v for v in C if v not in gamma)
    return SwitchingPartition((first, second), D, G.n, G.k)


def check_mgm_simplified(G: Hypergraph, C: Iterable[int]) -> CheckReport:
    """Accept C iff V \\ C has k - 1 vertices, its neighbourhood is exactly half
    of C, and that bipartition passes the strict matrix-WQH conditions."""
    C = vertex_set(G, C)
    P = mgm_partition(G, C)
    if P is None:
        report = CheckReport("mgm")
        D_size = G.n - len(C)
        if D_size != G.k - 1:
            report.add("D-size", False, f"|V \\ C| = {D_size}, expected k-1 = {G.k - 1}")
        else:
            D = tuple(v for v in G.vertices if v not in C)
            hits = len(set(neighbourhood(G, D)).intersection(C))
            report.add("D-neighbours-half-of-C", False, f"Gamma(D) meets C in {hits} of {len(C)} vertices")
        return report.finish()
    report = check_mwqh(G, P, strict=True)
    report.kind = "mgm"
    return report


def apply_mgm_simplified(G: Hypergraph, C: Iterable[int], trust: bool = False) -> Hypergraph:
    C = vertex_set(G, C)
    report = check_mgm_simplified(G, C)
    if not report.ok and not trust:
        raise SwitchingError(f"GM-style matrix switching conditions fail: {report.failures()[0]}")
    return apply_moves(G, report.switch_plan)
