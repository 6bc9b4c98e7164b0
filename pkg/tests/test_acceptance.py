"""End-to-end acceptance checks; each test records one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the summary block at
the end lists every criterion.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest

from cospec import (
    ExactMatrix,
    Tensor,
    adjacency_tensor,
    are_isomorphic,
    char_poly,
    degree,
    is_symmetric,
    preserves_unit_tensor,
    sandwich,
)
from cospec.corpus import builtin_example
from cospec.exact import mat_mul, permutation_matrix
from cospec.hypergraph import validates_isomorphism
from cospec.search import SearchConfig, find_mwqh_partitions, independent_sets
from cospec.switching import (
    adjacency_matrix,
    apply_egm,
    apply_ewqh,
    apply_mwqh,
    build_switching_matrix,
    check_egm,
    check_ewqh,
    check_mgm_simplified,
    check_mwqh,
    ewqh_matrix,
    mwqh_matrix,
    random_ewqh_instance,
    random_mwqh_instance,
    verify_tensor_similarity,
)

from oracles import naive_sandwich


@contextmanager
def criterion(record, number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except BaseException as exc:
        record(f"criterion {number} FAIL  {title}: {exc}")
        raise
    record(f"criterion {number} PASS  {title} ({elapsed:.2f}s)")


def test_criterion_1_tensor_example(record):
    with criterion(record, 1, "9-vertex tensor switching reproduces H", limit=1.0):
        ex = builtin_example("paper-ex1")
        report = check_ewqh(ex.G, ex.partition)
        assert report.ok
        H = apply_ewqh(ex.G, ex.partition)
        assert H == ex.H
        # the three edges through {v1, v2} are the only ones that move
        moved = sorted(set(ex.G.edges) - set(H.edges))
        assert moved == [(1, 7, 8), (2, 7, 8), (3, 7, 8)]
        assert sandwich(ewqh_matrix(ex.partition), adjacency_tensor(ex.G)) == adjacency_tensor(ex.H)
        assert verify_tensor_similarity(ex.G, ex.H, ex.partition)
        assert are_isomorphic(ex.G, ex.H) is None


def test_criterion_2_no_gm_style_tensor_switch(record):
    with criterion(record, 2, "no E-GM switching set on the 9-vertex G yields H", limit=10.0):
        ex = builtin_example("paper-ex1")
        admissible = 0
        for size in range(2, ex.G.n + 1, 2):
            for C in independent_sets(ex.G, size):
                if check_egm(ex.G, C).ok:
                    admissible += 1
                    assert apply_egm(ex.G, C) != ex.H, f"C = {C} reproduces H"
        # non-independent sets fail the checker outright
        for size in range(2, ex.G.n + 1, 2):
            for C in combinations(ex.G.vertices, size):
                report = check_egm(ex.G, C)
                if report.ok:
                    assert apply_egm(ex.G, C) != ex.H
        assert admissible > 0


def test_criterion_3_matrix_example(record):
    with criterion(record, 3, "14-vertex matrix switching reproduces H, cospectral both scalings", limit=5.0):
        ex = builtin_example("paper-ex2")
        report = check_mwqh(ex.G, ex.partition)
        assert report.ok
        half = {(1, 1): 1, (1, 2): 1, (2, 2): 1, (3, 4): 1, (4, 4): 1, (3, 3): 0}
        expected = {(i, j): 0 for i in range(1, 5) for j in range(1, 5)}
        for (i, j), a in half.items():
            expected[(i, j)] = expected[(j, i)] = a
        assert report.alpha == {key: Fraction(v) for key, v in expected.items()}
        H = apply_mwqh(ex.G, ex.partition)
        assert H == ex.H
        for scaled in (True, False):
            assert char_poly(adjacency_matrix(ex.G, scaled)) == char_poly(adjacency_matrix(ex.H, scaled))
        assert are_isomorphic(ex.G, ex.H) is None

        def degree_two_edges(X):
            return [e for e in X.edges if all(degree(X, v) == 2 for v in e)]

        assert (1, 2, 3) in degree_two_edges(ex.H)
        assert degree_two_edges(ex.G) == []


def test_criterion_4_no_gm_style_matrix_switch(record):
    with criterion(record, 4, "GM-style matrix search on the 14-vertex G is empty", limit=60.0):
        ex = builtin_example("paper-ex2")
        results = find_mwqh_partitions(ex.G, SearchConfig(kind="mgm-simplified", t_range=range(1, 8)))
        assert results == [] and not results.partial
        # unpruned: every (k-1)-set as D, C its complement
        for D in combinations(ex.G.vertices, ex.G.k - 1):
            C = [v for v in ex.G.vertices if v not in D]
            assert not check_mgm_simplified(ex.G, C).ok


def _tensor_shapes():
    shapes = []
    for k in (3, 4):
        for t in (1, 2, 3):
            for m in (1, 2):
                for d in range(k - 1, 13 - 2 * m * t):
                    shapes.append((k, t, m, d))
    return shapes


def test_criterion_5_tensor_switching_suite(record):
    with criterion(record, 5, "200 random tensor switchings: exact similarity, conservation, t=1 transposition"):
        rng = random.Random(20240501)
        shapes = _tensor_shapes()
        switched = 0
        transpositions = 0
        for _ in range(200):
            k, t, m, d = rng.choice(shapes)
            G, P = random_ewqh_instance(rng, k, t, m, d)
            assert G.n <= 12
            assert check_ewqh(G, P).ok
            H = apply_ewqh(G, P)
            switched += H != G
            Q = build_switching_matrix("ewqh-tensor", P)
            assert sandwich(Q, adjacency_tensor(G)) == adjacency_tensor(H)
            assert len(H.edges) == len(G.edges)
            assert all(degree(G, v) == degree(H, v) for v in P.D)
            if t == 1:
                swap = {v: v for v in G.vertices}
                for _, (a,), (b,) in P.pairs:
                    swap[a], swap[b] = b, a
                assert validates_isomorphism(G, H, swap)
                transpositions += 1
        assert switched > 100 and transpositions > 20


def test_criterion_6_matrix_switching_suite(record):
    with criterion(record, 6, "200 random matrix switchings: exact similarity and equal characteristic polynomials"):
        rng = random.Random(20240502)
        switched = 0
        for _ in range(200):
            k, t, m = rng.choice((3, 4)), rng.choice((1, 2, 3)), rng.choice((1, 2))
            G, P = random_mwqh_instance(rng, k, t, m)
            report = check_mwqh(G, P)
            assert report.ok
            H = apply_mwqh(G, P)
            switched += H != G
            Q = mwqh_matrix(P, report.q_pairs)
            assert mat_mul(mat_mul(Q, adjacency_matrix(G)), Q.T) == adjacency_matrix(H)
            assert char_poly(adjacency_matrix(G)) == char_poly(adjacency_matrix(H))
        assert switched > 100


def test_criterion_7_four_vertex_cells(record):
    with criterion(record, 7, "50 instances with |C1 u C2| = 4: tensor and GM-style results isomorphic"):
        rng = random.Random(20240503)
        for _ in range(50):
            k = rng.choice((2, 3, 4))
            G, P = random_ewqh_instance(rng, k, 2, 1, rng.randint(k - 1, 5))
            (_, (a1, a2), (b1, b2)), = P.pairs
            C = (a1, a2, b1, b2)
            assert check_ewqh(G, P).ok and check_egm(G, C).ok
            swap = {v: v for v in G.vertices}
            swap.update({a1: a2, a2: a1, b1: b2, b2: b1})
            assert validates_isomorphism(apply_ewqh(G, P), apply_egm(G, C), swap)


def _random_entries(rng, k, n, nnz):
    return {tuple(rng.randrange(n) for _ in range(k)): Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(nnz)}


def _dense(entries, k, n):
    arr = np.full((n,) * k, Fraction(0), dtype=object)
    for idx, v in entries.items():
        arr[idx] = v
    return Tensor.from_fractions(arr)


def test_criterion_8_tensor_oracles(record):
    with criterion(record, 8, "sandwich equals naive sum on 100 samples; symmetry and unit-tensor checks"):
        rng = random.Random(20240504)
        for _ in range(100):
            k, n = rng.randint(2, 4), rng.randint(1, 4)
            entries = _random_entries(rng, k, n, rng.randint(0, 8))
            Q = ExactMatrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)])
            got = {idx: v for idx, v in sandwich(Q, _dense(entries, k, n)).nonzero()}
            assert got == naive_sandwich(Q.tolist(), entries, n, k)
        for _ in range(50):
            k, n = rng.randint(2, 4), rng.randint(1, 4)
            sym = {}
            for idx, v in _random_entries(rng, k, n, 4).items():
                sym.update({p: v for p in permutations(idx)})
            A = _dense(sym, k, n)
            Q = ExactMatrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)])
            assert is_symmetric(A) and is_symmetric(sandwich(Q, A))
        for n in range(1, 5):
            for perm in permutations(range(n)):
                for k in (2, 3, 4):
                    assert preserves_unit_tensor(permutation_matrix(perm), k)
        assert not preserves_unit_tensor(ewqh_matrix(builtin_example("paper-ex1").partition), 3)


def test_criterion_9_graph_case(record):
    with criterion(record, 9, "100 graph instances: switched graphs share the adjacency spectrum"):
        rng = random.Random(20240505)
        switched = 0
        for _ in range(100):
            t, m = rng.choice((1, 2, 3)), rng.choice((1, 2))
            G, P = random_ewqh_instance(rng, 2, t, m, rng.randint(1, 4), d_edge_prob=0.4)
            assert check_ewqh(G, P).ok
            H = apply_ewqh(G, P)
            switched += H != G
            assert char_poly(adjacency_matrix(G)) == char_poly(adjacency_matrix(H))
        assert switched > 50


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
