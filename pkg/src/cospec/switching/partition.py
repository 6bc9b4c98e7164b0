"""Switching partitions, condition reports and their JSON forms."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ..exact import rational_str
from ..hypergraph import Hypergraph, HypergraphError, _vertex_subset


class SwitchingError(ValueError):
    """A switch was requested on a configuration that does not admit it."""


@dataclass(frozen=True)
class SwitchingPartition:
    """Cells C_1..C_2m (paired as (C_1, C_2), (C_3, C_4), ...) plus the rest D.

    Cells and D are disjoint and together cover 1..n; paired cells have equal
    sizes.  Cell numbers in reports are 1-based, like the C_i they name.
    """

    cells: tuple[tuple[int, ...], ...]
    D: tuple[int, ...]
    n: int
    k: int

    def __post_init__(self):
        cells = tuple(tuple(sorted(c)) for c in self.cells)
        D = tuple(sorted(self.D))
        if len(cells) < 2 or len(cells) % 2:
            raise ValueError(f"need an even, nonzero number of cells, got {len(cells)}")
        seen: set[int] = set()
        for part in (*cells, D):
            for v in part:
                if not 1 <= v <= self.n:
                    raise ValueError(f"vertex {v} outside 1..{self.n}")
                if v in seen:
                    raise ValueError(f"vertex {v} appears in more than one part")
                seen.add(v)
        if len(seen) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - seen)
            raise ValueError(f"partition does not cover vertices {missing}")
        for i in range(0, len(cells), 2):
            if len(cells[i]) != len(cells[i + 1]):
                raise ValueError(
                    f"paired cells C_{i + 1} and C_{i + 2} differ in size "
                    f"({len(cells[i])} vs {len(cells[i + 1])})"
                )
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "D", D)

    @classmethod
    def from_cells(cls, G: Hypergraph, cells: Iterable[Iterable[int]]) -> "SwitchingPartition":
        """Partition of G's vertices with D taken as the complement of the cells."""
        cells = [tuple(c) for c in cells]
        used = {v for c in cells for v in c}
        D = [v for v in G.vertices if v not in used]
        return cls(tuple(cells), tuple(D), G.n, G.k)

    @property
    def m(self) -> int:
        return len(self.cells) // 2

    @property
    def pairs(self) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
        """(odd cell number i, C_i, C_{i+1}) for every pair."""
        return [(i + 1, self.cells[i], self.cells[i + 1]) for i in range(0, len(self.cells), 2)]

    @property
    def switched_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for c in self.cells for v in c))

    def to_json(self) -> str:
        return json.dumps({"cells": [list(c) for c in self.cells], "D": list(self.D)}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str | bytes, G: Hypergraph) -> "SwitchingPartition":
        try:
            data = json.loads(text)
            cells = [tuple(int(v) for v in c) for c in data["cells"]]
            D = tuple(int(v) for v in data.get("D", ()))
        except (ValueError, KeyError, TypeError) as exc:
            raise ValueError(f"malformed partition JSON: {exc}") from None
        if "D" not in data:
            return cls.from_cells(G, cells)
        return cls(tuple(cells), D, G.n, G.k)


@dataclass(frozen=True)
class Move:
    """Replace edges ``subset | {v}`` for v in ``detach`` by those for v in ``attach``.

    ``cells`` holds the (source, target) cell numbers, or None for E-GM moves.
    """

    subset: tuple[int, ...]
    detach: tuple[int, ...]
    attach: tuple[int, ...]
    cells: Optional[tuple[int, int]] = None

    def to_dict(self) -> dict:
        out = {"subset": list(self.subset), "detach": list(self.detach), "attach": list(self.attach)}
        if self.cells is not None:
            out["source"], out["target"] = self.cells
        return out


@dataclass(frozen=True)
class ConditionResult:
    id: str
    passed: bool
    witness: str = ""


@dataclass
class CheckReport:
    kind: str
    conditions: list[ConditionResult] = field(default_factory=list)
    switch_plan: list[Move] = field(default_factory=list)
    alpha: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    q_pairs: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions)

    def add(self, cid: str, passed: bool, witness: str = "") -> bool:
        self.conditions.append(ConditionResult(cid, passed, witness))
        return passed

    def failures(self) -> list[ConditionResult]:
        return [c for c in self.conditions if not c.passed]

    def finish(self) -> "CheckReport":
        if not self.ok:
            self.switch_plan = []
            self.q_pairs = ()
        return self

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "ok": self.ok,
            "conditions": [
                {"id": c.id, "ok": c.passed, "witness": c.witness} for c in self.conditions
            ],
            "switch_plan": [mv.to_dict() for mv in self.switch_plan],
            "alpha": {f"{i},{j}": rational_str(a) for (i, j), a in sorted(self.alpha.items())},
            "q_pairs": list(self.q_pairs),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __str__(self) -> str:
        lines = [f"{self.kind}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.conditions:
            mark = "pass" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.id}" + (f": {c.witness}" if c.witness else ""))
        for mv in self.switch_plan:
            lines.append(f"  switch {list(mv.subset)}: {list(mv.detach)} -> {list(mv.attach)}")
        return "\n".join(lines)


def vertex_set(G: Hypergraph, members: Iterable[int]) -> tuple[int, ...]:
    try:
        return _vertex_subset(G, members)
    except HypergraphError as exc:
        raise ValueError(str(exc)) from None


def boundary_subsets(G: Hypergraph, U: Sequence[int]) -> dict[tuple[int, ...], set[int]]:
    """For each (k-1)-set S outside U lying in an edge with exactly one U-vertex,
    the U-vertices c with S | {c} an edge."""
    inside = set(U)
    out: dict[tuple[int, ...], set[int]] = {}
    for e in G.edges:
        hits = [v for v in e if v in inside]
        if len(hits) == 1:
            S = tuple(v for v in e if v not in inside)
            out.setdefault(S, set()).add(hits[0])
    return out


def apply_moves(G: Hypergraph, moves: Iterable[Move]) -> Hypergraph:
    moves = list(moves)
    edges = set(G.edges)
    for mv in moves:
        for v in mv.detach:
            edges.remove(tuple(sorted((*mv.subset, v))))
    for mv in moves:
        for v in mv.attach:
            e = tuple(sorted((*mv.subset, v)))
            if e in edges:
                raise SwitchingError(f"switch would duplicate edge {e}")
            edges.add(e)
    return G.with_edges(edges)
