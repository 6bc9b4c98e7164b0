"""Random hypergraphs that admit a switching by construction.

Each generator returns ``(G, P)`` with the vertices shuffled, so cells are
generally not contiguous.
"""

from __future__ import annotations

import random
from itertools import combinations

from ..hypergraph import Hypergraph
from .partition import SwitchingPartition


def _shuffle(rng: random.Random, n: int, k: int, edges, cells, D):
    image = list(range(1, n + 1))
    rng.shuffle(image)
    relabel = dict(zip(range(1, n + 1), image))
    G = Hypergraph(n, k, [tuple(relabel[v] for v in e) for e in edges])
    P = SwitchingPartition(
        tuple(tuple(relabel[v] for v in c) for c in cells),
        tuple(relabel[v] for v in D),
        n,
        k,
    )
    return G, P


def _attach(rng: random.Random, S, first, second, edges: set, balanced_bias: float = 0.5) -> None:
    """Wire S to all of ``first``, all of ``second``, or r vertices of each."""
    t = len(first)
    roll = rng.random()
    if roll < (1 - balanced_bias) / 2:
        chosen = list(first)
    elif roll < 1 - balanced_bias:
        chosen = list(second)
    else:
        r = rng.randint(0, t)
        chosen = rng.sample(first, r) + rng.sample(second, r)
    for c in chosen:
        edges.add(tuple(sorted((*S, c))))


def random_ewqh_instance(
    rng: random.Random,
    k: int,
    t: int,
    m: int,
    d: int,
    *,
    subsets: int | None = None,
    d_edge_prob: float = 0.3,
    balanced_bias: float = 0.5,
) -> tuple[Hypergraph, SwitchingPartition]:
    """Hypergraph on 2mt + d vertices satisfying the E-WQH conditions.

    ``subsets`` (k-1)-sets of D get attached to the cells, pair by pair;
    k-sets inside D become edges with probability ``d_edge_prob``.
    """
    if d < k - 1:
        raise ValueError(f"D needs at least k-1 = {k - 1} vertices, got {d}")
    n = 2 * m * t + d
    cells = [list(range(1 + i * t, 1 + (i + 1) * t)) for i in range(2 * m)]
    D = list(range(2 * m * t + 1, n + 1))
    edges: set[tuple[int, ...]] = set()
    for e in combinations(D, k):
        if rng.random() < d_edge_prob:
            edges.add(e)
    pool = list(combinations(D, k - 1))
    count = rng.randint(1, len(pool)) if subsets is None else min(subsets, len(pool))
    for S in rng.sample(pool, count):
        for i in range(m):
            _attach(rng, S, cells[2 * i], cells[2 * i + 1], edges, balanced_bias)
    return _shuffle(rng, n, k, edges, cells, D)


def random_mwqh_instance(
    rng: random.Random,
    k: int,
    t: int,
    m: int,
    *,
    orbits: int | None = None,
    balanced_bias: float = 0.5,
    balanced: bool = True,
) -> tuple[Hypergraph, SwitchingPartition]:
    """Hypergraph on 2mt + k - 1 vertices satisfying the matrix-WQH conditions.

    Edges among the cells are unions of orbits under the cyclic shift that
    rotates every cell at once; the shift maps each block of the adjacency
    matrix onto itself and acts transitively on its rows and columns, so
    every block has constant line sums.  With ``balanced`` the orbits are
    also closed under exchanging C_i and C_{i+1} within any single pair, so
    the block sums are invariant under each such exchange.
    """
    n = 2 * m * t + k - 1
    cells = [list(range(1 + i * t, 1 + (i + 1) * t)) for i in range(2 * m)]
    D = tuple(range(2 * m * t + 1, n + 1))
    slots = [(c, o) for c in range(2 * m) for o in range(t)]
    edges: set[tuple[int, ...]] = set()
    if len(slots) >= k:
        count = rng.randint(0, 2 * m) if orbits is None else orbits
        for _ in range(count):
            template = rng.sample(slots, k)
            images = [template]
            if balanced:
                for i in range(m):
                    images += [[(c ^ 1 if c // 2 == i else c, o) for c, o in im] for im in images]
            for image in images:
                for z in range(t):
                    edges.add(tuple(sorted(cells[c][(o + z) % t] for c, o in image)))
    for i in range(m):
        _attach(rng, D, cells[2 * i], cells[2 * i + 1], edges, balanced_bias)
    return _shuffle(rng, n, k, edges, cells, D)
