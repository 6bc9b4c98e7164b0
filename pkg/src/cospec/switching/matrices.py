"""Orthogonal switching matrices and the hypergraph adjacency matrix."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable

from ..exact import ExactMatrix
from ..hypergraph import Hypergraph, pair_multiplicities
from .partition import SwitchingPartition


class MatrixKind(str, Enum):
    EWQH = "ewqh-tensor"
    MWQH = "mwqh-matrix"


def build_switching_matrix(
    kind: MatrixKind | str,
    P: SwitchingPartition,
    n: int | None = None,
    pairs: Iterable[int] | None = None,
) -> ExactMatrix:
    """Block matrix with (X Y; Y X) on each cell pair and identity on D.

    X = I_t - J_t/t and Y = J_t/t.  Cells need not be contiguous: block entries
    are scattered to the actual vertex indices (vertex v is row v - 1).
    ``pairs`` (odd cell numbers) limits the blocks to those pairs; the other
    cells get identity rows.
    """
    kind = MatrixKind(kind)
    n = P.n if n is None else n
    if n != P.n:
        raise ValueError(f"partition is on {P.n} vertices, asked for a {n}x{n} matrix")
    if kind is MatrixKind.MWQH and len(P.D) != P.k - 1:
        raise ValueError(f"matrix switching needs |D| = k-1 = {P.k - 1}, got {len(P.D)}")
    chosen = None if pairs is None else set(pairs)
    q = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i, first, second in P.pairs:
        t = len(first)
        if t == 0 or (chosen is not None and i not in chosen):
            continue
        y = Fraction(1, t)
        for a in first + second:
            for b in first + second:
                same_cell = (a in first) == (b in first)
                q[a - 1][b - 1] = (int(a == b) - y) if same_cell else y
    return ExactMatrix(q)


def gm_switching_matrix(C: Iterable[int], n: int) -> ExactMatrix:
    """(2/|C|) J - I on the switching set C, identity elsewhere."""
    C = sorted(C)
    c = len(C)
    if c == 0 or c % 2:
        raise ValueError("switching set must have positive even size")
    q = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for a in C:
        for b in C:
            q[a - 1][b - 1] = Fraction(2, c) - int(a == b)
    return ExactMatrix(q)


def adjacency_matrix(G: Hypergraph, scaled: bool = True) -> ExactMatrix:
    """Entry (i, j), i != j, counts the edges containing both; scaled divides by k - 1."""
    div = G.k - 1 if scaled else 1
    a = [[Fraction(0)] * G.n for _ in range(G.n)]
    for (u, v), count in pair_multiplicities(G).items():
        a[u - 1][v - 1] = a[v - 1][u - 1] = Fraction(count, div)
    return ExactMatrix(a)
