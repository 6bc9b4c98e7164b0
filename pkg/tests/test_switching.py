import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cospec import Hypergraph, char_poly, degree, is_orthogonal
from cospec.corpus import builtin_example, builtin_examples, example_names
from cospec.hypergraph import validates_isomorphism
from cospec.switching import (
    Move,
    SwitchingError,
    SwitchingPartition,
    adjacency_matrix,
    apply_egm,
    apply_ewqh,
    apply_mgm_simplified,
    apply_moves,
    apply_mwqh,
    build_switching_matrix,
    check_egm,
    check_ewqh,
    check_mgm_simplified,
    check_mwqh,
    gm_switching_matrix,
    mgm_partition,
    random_ewqh_instance,
    random_mwqh_instance,
    verify_gm_tensor_similarity,
    verify_matrix_cospectral,
    verify_matrix_similarity,
    verify_tensor_similarity,
)

from oracles import hypergraphs


@pytest.fixture
def ex1():
    return builtin_example("paper-ex1")


@pytest.fixture
def ex2():
    return builtin_example("paper-ex2")


class TestCorpus:
    def test_names(self):
        assert example_names() == ["paper-ex1", "paper-ex2"]
        assert set(builtin_examples()) == {"paper-ex1", "paper-ex2"}

    def test_sizes(self, ex1, ex2):
        assert (ex1.G.n, len(ex1.G.edges), len(ex1.H.edges)) == (9, 9, 9)
        assert (ex2.G.n, len(ex2.G.edges), len(ex2.H.edges)) == (14, 12, 12)

    def test_unknown(self):
        with pytest.raises(KeyError):
            builtin_example("nope")


class TestPartition:
    def test_json_round_trip(self, ex2):
        text = ex2.partition.to_json()
        assert json.loads(text) == {"cells": [[1, 2, 3], [4, 5, 6], [7, 8, 9], [10, 11, 12]], "D": [13, 14]}
        assert SwitchingPartition.from_json(text, ex2.G) == ex2.partition

    def test_from_cells_takes_complement(self, ex1):
        P = SwitchingPartition.from_json('{"cells": [[1, 2, 3], [4, 5, 6]]}', ex1.G)
        assert P == ex1.partition

    @pytest.mark.parametrize(
        "cells, D",
        [
            (((1, 2),), (3, 4)),
            (((1, 2), (2, 3)), (4,)),
            (((1, 2), (3,)), (4,)),
            (((1,), (2,)), (3,)),
            (((1,), (5,)), (2, 3, 4)),
        ],
    )
    def test_malformed(self, cells, D):
        with pytest.raises(ValueError):
            SwitchingPartition(cells, D, 4, 3)

    def test_malformed_json(self, ex1):
        with pytest.raises(ValueError):
            SwitchingPartition.from_json('{"D": [1]}', ex1.G)

    def test_apply_moves_rejects_collision(self):
        G = Hypergraph(4, 3, [(1, 2, 3), (1, 2, 4)])
        with pytest.raises(SwitchingError):
            apply_moves(G, [Move((1, 2), (3,), (4,))])


class TestMatrices:
    def test_transposition_block(self):
        P = SwitchingPartition(((1,), (2,)), (3, 4), 4, 3)
        Q = build_switching_matrix("ewqh-tensor", P)
        assert [[Q[i, j] for j in range(2)] for i in range(2)] == [[0, 1], [1, 0]]

    def test_scattered_cells(self):
        P = SwitchingPartition(((1, 5), (3, 6)), (2, 4), 6, 3)
        Q = build_switching_matrix("ewqh-tensor", P)
        assert is_orthogonal(Q)
        assert Q[0, 0] == Q[0, 2] == Fraction(1, 2) and Q[0, 4] == Fraction(-1, 2) and Q[1, 1] == 1

    def test_matrix_kind_needs_small_D(self, ex1):
        with pytest.raises(ValueError):
            build_switching_matrix("mwqh-matrix", ex1.partition)

    def test_gm_matrix(self):
        Q = gm_switching_matrix((1, 2, 3, 4), 5)
        assert is_orthogonal(Q) and Q[0, 0] == Fraction(-1, 2) and Q[4, 4] == 1
        with pytest.raises(ValueError):
            gm_switching_matrix((1, 2, 3), 4)

    def test_adjacency_single_edge(self):
        A = adjacency_matrix(Hypergraph(4, 3, [(1, 2, 3)]))
        assert A[0, 1] == A[1, 2] == Fraction(1, 2)
        assert A[0, 3] == 0 and A[0, 0] == 0
        assert adjacency_matrix(Hypergraph(4, 3, [(1, 2, 3)]), scaled=False)[0, 1] == 1

    @given(hypergraphs())
    def test_row_sums_are_degrees(self, G):
        A = adjacency_matrix(G)
        assert A == A.T
        for v in G.vertices:
            assert sum(A.tolist()[v - 1]) == degree(G, v)

    @given(hypergraphs(k_range=(2, 2)))
    def test_graph_scaling_irrelevant(self, G):
        assert adjacency_matrix(G) == adjacency_matrix(G, scaled=False)


class TestEWQH:
    def test_example_accepted(self, ex1):
        report = check_ewqh(ex1.G, ex1.partition)
        assert report.ok
        assert report.switch_plan == [Move((7, 8), (1, 2, 3), (4, 5, 6), (1, 2))]

    def test_example_switch(self, ex1):
        H = apply_ewqh(ex1.G, ex1.partition)
        assert H == ex1.H
        changed = set(ex1.G.edges) ^ set(H.edges)
        assert changed == {(1, 7, 8), (2, 7, 8), (3, 7, 8), (4, 7, 8), (5, 7, 8), (6, 7, 8)}

    def test_cells_sharing_an_edge(self, ex1):
        P = SwitchingPartition(((1, 2, 3), (4, 5, 7)), (6, 8, 9), 9, 3)
        report = check_ewqh(ex1.G, P)
        assert not report.ok
        failed = report.failures()[0]
        assert failed.id == "one-cell-vertex-per-edge" and "(1, 7, 8)" in failed.witness
        with pytest.raises(SwitchingError):
            apply_ewqh(ex1.G, P)

    def test_empty_cells_vacuous(self, ex1):
        P = SwitchingPartition(((), ()), tuple(ex1.G.vertices), 9, 3)
        report = check_ewqh(ex1.G, P)
        assert report.ok and not report.switch_plan
        assert verify_tensor_similarity(ex1.G, apply_ewqh(ex1.G, P), P)

    def test_unequal_neighbour_counts(self):
        G = Hypergraph(5, 3, [(1, 4, 5), (2, 4, 5), (3, 4, 5)])
        P = SwitchingPartition(((1, 2), (3, 5)), (4,), 5, 3)
        assert not check_ewqh(G, P).ok
        P = SwitchingPartition(((1,), (2,)), (3, 4, 5), 5, 3)
        report = check_ewqh(G, P)
        assert report.ok and not report.switch_plan
        P = SwitchingPartition(((1, 2), (3, 6)), (4, 5), 6, 3)
        G6 = Hypergraph(6, 3, G.edges)
        report = check_ewqh(G6, P)
        assert not report.ok and "2 neighbours in C_1 and 1 in C_2" in report.failures()[0].witness

    def test_involution(self, ex1):
        H = apply_ewqh(ex1.G, ex1.partition)
        assert apply_ewqh(H, ex1.partition) == ex1.G

    def test_similarity_needs_the_switch(self, ex1):
        assert verify_tensor_similarity(ex1.G, ex1.H, ex1.partition)
        assert not verify_tensor_similarity(ex1.G, ex1.G, ex1.partition)

    def test_single_vertex_cells_give_isomorphic_result(self):
        rng = random.Random(11)
        for _ in range(20):
            G, P = random_ewqh_instance(rng, 3, 1, 2, 3)
            H = apply_ewqh(G, P)
            swap = {v: v for v in G.vertices}
            for _, (a,), (b,) in P.pairs:
                swap[a], swap[b] = b, a
            assert validates_isomorphism(G, H, swap)

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(2, 4), st.integers(1, 3), st.integers(1, 2), st.integers(0, 2),
        st.randoms(use_true_random=False),
    )
    def test_random_instances(self, k, t, m, extra, rng):
        d = k - 1 + extra
        if 2 * m * t + d > 11:
            return
        G, P = random_ewqh_instance(rng, k, t, m, d)
        report = check_ewqh(G, P)
        assert report.ok
        H = apply_ewqh(G, P)
        assert len(H.edges) == len(G.edges)
        assert all(degree(G, v) == degree(H, v) for v in P.D)
        assert is_orthogonal(build_switching_matrix("ewqh-tensor", P))
        assert verify_tensor_similarity(G, H, P)
        assert apply_ewqh(H, P) == G


class TestEGM:
    def test_example_union_fails(self, ex1):
        report = check_egm(ex1.G, range(1, 7))
        assert not report.ok
        failed = report.failures()[0]
        assert failed.id == "neighbour-count" and "(7, 9) has 4" in failed.witness

    def test_twins_in_a_graph(self):
        G = Hypergraph(4, 2, [(1, 3), (1, 4), (2, 3), (2, 4)])
        report = check_egm(G, (1, 2))
        assert report.ok and not report.switch_plan
        assert apply_egm(G, (1, 2)) == G

    def test_dependent_set(self, ex1):
        report = check_egm(ex1.G, (1, 7))
        assert not report.ok and report.failures()[0].id == "independent-switching-set"

    def test_odd_set(self, ex1):
        with pytest.raises(ValueError):
            check_egm(ex1.G, (1, 2, 3))

    def test_switch_and_involution(self):
        G = Hypergraph(6, 3, [(1, 5, 6), (2, 5, 6), (1, 4, 5), (2, 4, 5)])
        C = (1, 2, 3, 4)
        with pytest.raises(SwitchingError):
            apply_egm(G, C)
        G = Hypergraph(6, 3, [(1, 5, 6), (2, 5, 6)])
        report = check_egm(G, C)
        assert report.ok and report.switch_plan == [Move((5, 6), (1, 2), (3, 4))]
        H = apply_egm(G, C)
        assert H.edges == ((3, 5, 6), (4, 5, 6))
        assert verify_gm_tensor_similarity(G, H, C)
        assert apply_egm(H, C) == G

    def test_four_vertex_cells_match_ewqh(self):
        rng = random.Random(5)
        for _ in range(20):
            G, P = random_ewqh_instance(rng, 3, 2, 1, 3)
            (_, (a1, a2), (b1, b2)), = P.pairs
            C = (a1, a2, b1, b2)
            assert check_egm(G, C).ok
            swap = {v: v for v in G.vertices}
            swap.update({a1: a2, a2: a1, b1: b2, b2: b1})
            assert validates_isomorphism(apply_ewqh(G, P), apply_egm(G, C), swap)


class TestMWQH:
    def test_example_accepted(self, ex2):
        report = check_mwqh(ex2.G, ex2.partition)
        assert report.ok
        assert report.switch_plan == [Move((13, 14), (1, 2, 3), (4, 5, 6), (1, 2))]
        assert report.alpha[(1, 2)] == 1 and report.alpha[(3, 4)] == 1 and report.alpha[(1, 3)] == 0
        assert report.alpha[(3, 3)] == 0 and report.alpha[(4, 4)] == 1
        assert report.q_pairs == (1,)

    def test_alpha_unscaled(self, ex2):
        report = check_mwqh(ex2.G, ex2.partition, scaled=False)
        assert report.ok and report.alpha[(1, 2)] == 2

    def test_example_switch(self, ex2):
        H = apply_mwqh(ex2.G, ex2.partition)
        assert H == ex2.H
        assert apply_mwqh(H, ex2.partition) == ex2.G

    def test_example_cospectral(self, ex2):
        for scaled in (True, False):
            assert verify_matrix_cospectral(ex2.G, ex2.H, scaled)
            assert verify_matrix_similarity(ex2.G, ex2.H, ex2.partition, scaled)

    def test_all_pairs_q_is_not_a_similarity_here(self, ex2):
        # alpha_33 != alpha_44, so the second pair must keep identity blocks
        assert not verify_matrix_similarity(ex2.G, ex2.H, ex2.partition, pairs=(1, 3))

    def test_D_of_wrong_size(self, ex2):
        G = Hypergraph(17, 3, ex2.G.edges)
        cells = ((1, 2, 3, 14), (4, 5, 6, 15), (7, 8, 9, 16), (10, 11, 12, 17))
        P = SwitchingPartition(cells, (13,), 17, 3)
        report = check_mwqh(G, P)
        assert not report.ok
        assert report.failures()[0].id == "cell-and-D-sizes"
        assert "|D| = 1" in report.failures()[0].witness

    def test_block_sum_witness(self, ex2):
        G = Hypergraph(14, 3, [e for e in ex2.G.edges if e != (1, 4, 5)])
        report = check_mwqh(G, ex2.partition)
        failed = report.failures()
        assert [f.id for f in failed] == ["constant-block-sums"]
        assert failed[0].witness.startswith("block B_12: row of vertex")
        with pytest.raises(SwitchingError):
            apply_mwqh(G, ex2.partition)

    def test_edges_meeting_D_once(self, ex2):
        G = ex2.G.with_edges([*ex2.G.edges, (1, 5, 13)])
        report = check_mwqh(G, ex2.partition)
        assert "edges-meet-D-in-0-or-k-1" in [f.id for f in report.failures()]

    def test_strict_direction(self, ex2):
        P = SwitchingPartition(((4, 5, 6), (1, 2, 3), (7, 8, 9), (10, 11, 12)), (13, 14), 14, 3)
        assert check_mwqh(ex2.G, P).ok
        assert not check_mwqh(ex2.G, P, strict=True).ok

    def test_balanced_pairs_without_switch(self):
        rng = random.Random(2)
        for _ in range(30):
            G, P = random_mwqh_instance(rng, 3, 2, 1, balanced_bias=1.0)
            report = check_mwqh(G, P)
            assert report.ok and not report.switch_plan
            assert apply_mwqh(G, P) == G

    def test_conditions_one_to_four_are_not_enough(self):
        rng = random.Random(0)
        found = None
        for _ in range(300):
            G, P = random_mwqh_instance(rng, 3, 3, 1, balanced=False)
            loose = check_mwqh(G, P, balance=False)
            if loose.ok and loose.switch_plan:
                H = apply_moves(G, loose.switch_plan)
                if not verify_matrix_cospectral(G, H):
                    found = (G, P)
                    break
        assert found is not None
        G, P = found
        report = check_mwqh(G, P)
        assert not report.ok
        assert report.failures()[0].id == "switched-pairs-balanced"

    def test_not_cospectral_after_edge_deletion(self, ex2):
        G2 = Hypergraph(14, 3, ex2.G.edges[1:])
        assert not verify_matrix_cospectral(ex2.G, G2)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(3, 4), st.integers(1, 3), st.integers(1, 2), st.randoms(use_true_random=False))
    def test_random_instances(self, k, t, m, rng):
        G, P = random_mwqh_instance(rng, k, t, m)
        report = check_mwqh(G, P)
        assert report.ok
        H = apply_mwqh(G, P)
        assert len(H.edges) == len(G.edges)
        assert all(degree(G, v) == degree(H, v) for v in P.D)
        assert is_orthogonal(build_switching_matrix("mwqh-matrix", P, pairs=report.q_pairs))
        for scaled in (True, False):
            assert verify_matrix_similarity(G, H, P, scaled)
        assert char_poly(adjacency_matrix(G)) == char_poly(adjacency_matrix(H))


class TestMGM:
    def test_example_has_no_configuration(self, ex2):
        from itertools import combinations

        for D in combinations(ex2.G.vertices, 2):
            C = [v for v in ex2.G.vertices if v not in D]
            assert not check_mgm_simplified(ex2.G, C).ok

    def test_matches_one_pair_mwqh(self):
        rng = random.Random(9)
        checked = 0
        for _ in range(200):
            G, P = random_mwqh_instance(rng, 3, 2, 1)
            if not check_mwqh(G, P, strict=True).switch_plan:
                continue
            C = P.switched_vertices
            assert mgm_partition(G, C) is not None
            report = check_mgm_simplified(G, C)
            assert report.ok
            assert apply_mgm_simplified(G, C) == apply_mwqh(G, P)
            checked += 1
        assert checked > 10

    def test_wrong_complement_size(self, ex1):
        report = check_mgm_simplified(ex1.G, (1, 2, 3, 4))
        assert not report.ok and report.failures()[0].id == "D-size"

    def test_odd(self, ex2):
        with pytest.raises(ValueError):
            check_mgm_simplified(ex2.G, (1, 2, 3))


def test_report_json_is_canonical(ex2):
    report = check_mwqh(ex2.G, ex2.partition)
    data = json.loads(report.to_json())
    assert data["alpha"]["1,2"] == "1/1"
    assert data["q_pairs"] == [1]
    assert report.to_json() == json.dumps(data, sort_keys=True)
