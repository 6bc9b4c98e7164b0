"""Enumerate admissible switching configurations and hunt for cospectral mates.

Candidates are generated in a fixed canonical order, so a given config always
yields the same results in the same order.  Within a pair the cell holding the
pair's smallest vertex comes first, and pairs are ordered by their smallest
vertex, so each partition is produced once up to swapping or permuting pairs.
"""

from __future__ import annotations

import json
import random
import time

import numpy as np
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Callable, Iterator, Optional

from .exact import Polynomial, char_poly, is_orthogonal
from .hypergraph import Hypergraph, are_isomorphic, neighbourhood, serialize_hypergraph, two_section
from .switching.generate import random_ewqh_instance, random_mwqh_instance
from .switching.matrices import adjacency_matrix, gm_switching_matrix
from .switching.matrix_switch import (
    check_mgm_simplified,
    check_mwqh,
    mgm_partition,
    pair_count_matrix,
    mwqh_matrix,
    verify_matrix_similarity,
)
from .switching.partition import CheckReport, SwitchingPartition, apply_moves, boundary_subsets
from .switching.tensor_switch import (
    check_egm,
    check_ewqh,
    ewqh_matrix,
    verify_gm_tensor_similarity,
    verify_tensor_similarity,
)


class Kind(str, Enum):
    EWQH = "ewqh"
    EGM = "egm"
    MWQH = "mwqh"
    MGM = "mgm-simplified"


@dataclass(frozen=True)
class SearchConfig:
    kind: Kind | str = Kind.EWQH
    t_range: range = range(1, 4)
    m_range: range = range(1, 3)
    max_candidates: Optional[int] = None
    time_budget: Optional[float] = None
    seed: int = 0
    require_nonisomorphic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not len(self.t_range) or not len(self.m_range):
            raise ValueError("t_range and m_range must be nonempty")
        if min(self.t_range) < 1 or min(self.m_range) < 1:
            raise ValueError("cell sizes and pair counts start at 1")


@dataclass
class SearchResult:
    kind: Kind
    partition: Optional[SwitchingPartition]
    switching_set: Optional[tuple[int, ...]]
    H: Hypergraph
    verified: bool
    isomorphic_to_G: bool
    certificates: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind.value,
            "H": serialize_hypergraph(self.H).decode(),
            "verified": self.verified,
            "isomorphic_to_G": self.isomorphic_to_G,
            "certificates": self.certificates,
        }
        if self.partition is not None:
            out["partition"] = json.loads(self.partition.to_json())
        if self.switching_set is not None:
            out["switching_set"] = list(self.switching_set)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class ResultList(list):
    """Search results; ``partial`` is set when a budget cut the search short."""

    partial: bool = False
    candidates: int = 0

    def to_jsonl(self) -> str:
        return "".join(r.to_json() + "\n" for r in self)


class _Budget:
    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.start = time.monotonic()
        self.count = 0
        self.exceeded = False

    def tick(self) -> bool:
        """Count one candidate; False once a budget is exhausted."""
        if self.exceeded:
            return False
        cfg = self.cfg
        if cfg.max_candidates is not None and self.count >= cfg.max_candidates:
            self.exceeded = True
        elif cfg.time_budget is not None and time.monotonic() - self.start > cfg.time_budget:
            self.exceeded = True
        else:
            self.count += 1
        return not self.exceeded


def independent_sets(G: Hypergraph, size: int, pool=None) -> Iterator[tuple[int, ...]]:
    """Independent sets of the 2-section with ``size`` vertices, lexicographic."""
    adj = {v: set() for v in G.vertices}
    for u, v in two_section(G):
        adj[u].add(v)
        adj[v].add(u)
    pool = sorted(G.vertices if pool is None else pool)

    def grow(chosen: list[int], start: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for idx in range(start, len(pool) - (size - len(chosen)) + 1):
            v = pool[idx]
            if adj[v].isdisjoint(chosen):
                chosen.append(v)
                yield from grow(chosen, idx + 1)
                chosen.pop()

    yield from grow([], 0)


def canonical_pairings(
    vertices: tuple[int, ...],
    m: int,
    t: int,
    accept_pair: Optional[Callable] = None,
    accept_cell: Optional[Callable] = None,
) -> Iterator[list[tuple[int, ...]]]:
    """Ordered cell lists (C_1, ..., C_2m) over ``vertices`` in canonical form.

    ``accept_cell(cells_so_far, cell)`` and ``accept_pair(cells_so_far, first,
    second)`` prune as soon as a cell, or both cells of a pair, are fixed.
    """

    def rec(remaining: tuple[int, ...], cells: list[tuple[int, ...]]):
        if len(cells) == 2 * m:
            yield list(cells)
            return
        lead, rest = remaining[0], remaining[1:]
        for tail in combinations(rest, t - 1):
            first = (lead, *tail)
            if accept_cell is not None and not accept_cell(cells, first):
                continue
            left = tuple(v for v in rest if v not in tail)
            for second in combinations(left, t):
                if accept_cell is not None and not accept_cell(cells + [first], second):
                    continue
                if accept_pair is not None and not accept_pair(cells, first, second):
                    continue
                after = tuple(v for v in left if v not in second)
                cells.extend((first, second))
                yield from rec(after, cells)
                del cells[-2:]

    if t < 1 or len(vertices) != 2 * m * t:
        return
    yield from rec(tuple(sorted(vertices)), [])


def _finish(results: ResultList, budget: _Budget) -> ResultList:
    results.partial = budget.exceeded
    results.candidates = budget.count
    return results


def _keep(result: SearchResult, cfg: SearchConfig) -> bool:
    return result.verified and not (cfg.require_nonisomorphic and result.isomorphic_to_G)


def tensor_result(G: Hypergraph, P: SwitchingPartition, report: CheckReport) -> SearchResult:
    H = apply_moves(G, report.switch_plan)
    certs = {
        "q_orthogonal": is_orthogonal(ewqh_matrix(P)),
        "sandwich_equal": verify_tensor_similarity(G, H, P),
    }
    return SearchResult(
        Kind.EWQH, P, None, H,
        verified=all(certs.values()),
        isomorphic_to_G=are_isomorphic(G, H) is not None,
        certificates=certs,
    )


def gm_result(G: Hypergraph, C: tuple[int, ...], report: CheckReport) -> SearchResult:
    H = apply_moves(G, report.switch_plan)
    certs = {
        "q_orthogonal": is_orthogonal(gm_switching_matrix(C, G.n)),
        "sandwich_equal": verify_gm_tensor_similarity(G, H, C),
    }
    return SearchResult(
        Kind.EGM, None, C, H,
        verified=all(certs.values()),
        isomorphic_to_G=are_isomorphic(G, H) is not None,
        certificates=certs,
    )


def matrix_result(
    G: Hypergraph,
    P: SwitchingPartition,
    report: CheckReport,
    kind: Kind = Kind.MWQH,
    switching_set: Optional[tuple[int, ...]] = None,
    char_poly_G: Optional[Polynomial] = None,
) -> SearchResult:
    H = apply_moves(G, report.switch_plan)
    pg = char_poly(adjacency_matrix(G)) if char_poly_G is None else char_poly_G
    ph = char_poly(adjacency_matrix(H))
    certs = {
        "q_orthogonal": is_orthogonal(mwqh_matrix(P, report.q_pairs)),
        "q_pairs": list(report.q_pairs),
        "similarity_scaled": verify_matrix_similarity(G, H, P, pairs=report.q_pairs),
        "similarity_unscaled": verify_matrix_similarity(G, H, P, scaled=False, pairs=report.q_pairs),
        "char_poly_equal": pg == ph,
        "char_poly": json.loads(pg.to_json()),
    }
    checks = ("q_orthogonal", "similarity_scaled", "similarity_unscaled", "char_poly_equal")
    return SearchResult(
        kind, P, switching_set, H,
        verified=all(certs[c] for c in checks),
        isomorphic_to_G=are_isomorphic(G, H) is not None,
        certificates=certs,
    )


def _pair_meets_fairly(boundary: dict, first: tuple[int, ...], second: tuple[int, ...]) -> bool:
    both, a, b = set(first + second), set(first), set(second)
    for nbrs in boundary.values():
        hit = nbrs & both
        if hit and hit != a and hit != b and len(hit & a) != len(hit & b):
            return False
    return True


def find_ewqh_partitions(G: Hypergraph, cfg: SearchConfig) -> ResultList:
    """Canonical E-WQH partitions with a nonempty switch plan.

    The union of the cells must be independent in the 2-section, since no
    edge may hold two switched vertices.
    """
    if cfg.kind is not Kind.EWQH:
        raise ValueError(f"find_ewqh_partitions needs kind ewqh, got {cfg.kind.value}")
    budget = _Budget(cfg)
    results = ResultList()
    shapes = sorted((2 * m * t, m, t) for m in cfg.m_range for t in cfg.t_range if 2 * m * t <= G.n)
    for size in sorted({s for s, _, _ in shapes}):
        for U in independent_sets(G, size):
            rest = tuple(v for v in G.vertices if v not in U)
            boundary = boundary_subsets(G, U)
            if not boundary:
                continue
            for _, m, t in (sh for sh in shapes if sh[0] == size):
                def pair_ok(_cells, first, second):
                    return _pair_meets_fairly(boundary, first, second)

                for cells in canonical_pairings(U, m, t, accept_pair=pair_ok):
                    if not budget.tick():
                        return _finish(results, budget)
                    P = SwitchingPartition(tuple(cells), rest, G.n, G.k)
                    report = check_ewqh(G, P)
                    if report.ok and report.switch_plan:
                        res = tensor_result(G, P, report)
                        if _keep(res, cfg):
                            results.append(res)
    return _finish(results, budget)


def find_egm_switchings(G: Hypergraph, cfg: SearchConfig) -> ResultList:
    """E-GM switching sets (even-size independent sets) with a nonempty plan."""
    if cfg.kind is not Kind.EGM:
        raise ValueError(f"find_egm_switchings needs kind egm, got {cfg.kind.value}")
    budget = _Budget(cfg)
    results = ResultList()
    for size in range(2, G.n + 1, 2):
        for C in independent_sets(G, size):
            if not budget.tick():
                return _finish(results, budget)
            report = check_egm(G, C)
            if report.ok and report.switch_plan:
                res = gm_result(G, C, report)
                if _keep(res, cfg):
                    results.append(res)
    return _finish(results, budget)


def candidate_D_sets(G: Hypergraph) -> list[tuple[int, ...]]:
    """(k-1)-subsets of edges that every edge meets in 0 or k-1 vertices."""
    found = set()
    for e in G.edges:
        for S in combinations(e, G.k - 1):
            if S in found:
                continue
            members = set(S)
            if all(len(members.intersection(f)) in (0, G.k - 1) for f in G.edges):
                found.add(S)
    return sorted(found)


def _line_sums_constant(rows_of, rows: tuple[int, ...], cols: tuple[int, ...]) -> bool:
    sums = {sum(rows_of[r - 1][c - 1] for c in cols) for r in rows}
    if len(sums) != 1:
        return False
    return {sum(rows_of[c - 1][r - 1] for r in rows) for c in cols} == sums


def find_mwqh_partitions(G: Hypergraph, cfg: SearchConfig) -> ResultList:
    """Matrix-WQH partitions (kind mwqh) or GM-style sets C (kind mgm-simplified).

    D ranges over :func:`candidate_D_sets`; cells are searched in canonical
    order with the D-neighbourhood and block-sum conditions checked as soon as
    the cells involved are fixed.
    """
    if cfg.kind not in (Kind.MWQH, Kind.MGM):
        raise ValueError(f"find_mwqh_partitions needs kind mwqh or mgm-simplified, got {cfg.kind.value}")
    budget = _Budget(cfg)
    results = ResultList()
    counts = pair_count_matrix(G)
    rows_of = counts.tolist()
    pg = char_poly(adjacency_matrix(G))
    for D in candidate_D_sets(G):
        rest = tuple(v for v in G.vertices if v not in D)
        if cfg.kind is Kind.MGM:
            if len(rest) % 2 or len(rest) // 2 not in cfg.t_range:
                continue
            if not budget.tick():
                return _finish(results, budget)
            report = check_mgm_simplified(G, rest)
            if report.ok and report.switch_plan:
                P = mgm_partition(G, rest)
                res = matrix_result(G, P, report, Kind.MGM, switching_set=rest, char_poly_G=pg)
                if _keep(res, cfg):
                    results.append(res)
            continue
        gamma = set(neighbourhood(G, D))
        if not gamma:
            continue

        def cell_ok(cells, cell):
            return all(_line_sums_constant(rows_of, c, cell) for c in (*cells, cell))

        def pair_ok(_cells, first, second):
            hit = gamma.intersection(first + second)
            return (
                not hit
                or hit == set(first)
                or hit == set(second)
                or len(hit.intersection(first)) == len(hit.intersection(second))
            )

        for m in cfg.m_range:
            if len(rest) % (2 * m):
                continue
            t = len(rest) // (2 * m)
            if t not in cfg.t_range:
                continue
            for cells in canonical_pairings(rest, m, t, accept_pair=pair_ok, accept_cell=cell_ok):
                if not budget.tick():
                    return _finish(results, budget)
                P = SwitchingPartition(tuple(cells), D, G.n, G.k)
                report = check_mwqh(G, P, counts=counts)
                if report.ok and report.switch_plan:
                    res = matrix_result(G, P, report, char_poly_G=pg)
                    if _keep(res, cfg):
                        results.append(res)
    return _finish(results, budget)


@dataclass(frozen=True)
class FamilySpec:
    """Random admissible instances: ``count`` draws with uniformity k, cell size t,
    m pairs and (E-WQH only) |D| = d."""

    k: int = 3
    t: int = 3
    m: int = 1
    d: int = 3
    count: int = 100
    subsets: Optional[int] = None
    d_edge_prob: float = 0.3
    orbits: Optional[int] = None


def find_cospectral_pairs(family: FamilySpec, cfg: SearchConfig) -> list[tuple[Hypergraph, Hypergraph, SearchResult]]:
    """Draw instances from the generator and keep the fully verified switches."""
    if cfg.kind not in (Kind.EWQH, Kind.MWQH):
        raise ValueError(f"random families exist for ewqh and mwqh, not {cfg.kind.value}")
    rng = random.Random(cfg.seed)
    budget = _Budget(cfg)
    out = []
    for _ in range(family.count):
        if not budget.tick():
            break
        if cfg.kind is Kind.EWQH:
            G, P = random_ewqh_instance(
                rng, family.k, family.t, family.m, family.d,
                subsets=family.subsets, d_edge_prob=family.d_edge_prob,
            )
            report = check_ewqh(G, P)
            if not (report.ok and report.switch_plan):
                continue
            res = tensor_result(G, P, report)
        else:
            G, P = random_mwqh_instance(rng, family.k, family.t, family.m, orbits=family.orbits)
            report = check_mwqh(G, P)
            if not (report.ok and report.switch_plan):
                continue
            res = matrix_result(G, P, report)
        if _keep(res, cfg):
            out.append((G, res.H, res))
    return out
