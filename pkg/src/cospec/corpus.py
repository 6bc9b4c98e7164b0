"""The two worked examples, under a fixed numbering: u_1, u_2, ... first, then v_1, v_2, ...

``paper-ex1`` (9 vertices): u_1..u_6 -> 1..6, v_1..v_3 -> 7..9.
``paper-ex2`` (14 vertices): u_1..u_12 -> 1..12, v_1, v_2 -> 13, 14.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import Hypergraph
from .switching.partition import SwitchingPartition


@dataclass(frozen=True)
class Example:
    name: str
    kind: str
    G: Hypergraph
    H: Hypergraph
    partition: SwitchingPartition


def _ex1() -> Example:
    u = {i: i for i in range(1, 7)}
    v = {j: 6 + j for j in range(1, 4)}
    g_edges = [
        (v[1], v[2], u[1]), (v[1], v[2], u[2]), (v[1], v[2], u[3]),
        (v[2], v[3], u[1]), (v[2], v[3], u[4]),
        (v[1], v[3], u[2]), (v[1], v[3], u[3]), (v[1], v[3], u[4]), (v[1], v[3], u[5]),
    ]
    h_edges = [
        (v[1], v[2], u[4]), (v[1], v[2], u[5]), (v[1], v[2], u[6]),
        (v[2], v[3], u[1]), (v[2], v[3], u[4]),
        (v[1], v[3], u[2]), (v[1], v[3], u[3]), (v[1], v[3], u[4]), (v[1], v[3], u[5]),
    ]
    G = Hypergraph(9, 3, g_edges)
    H = Hypergraph(9, 3, h_edges)
    P = SwitchingPartition(((u[1], u[2], u[3]), (u[4], u[5], u[6])), (v[1], v[2], v[3]), 9, 3)
    return Example("paper-ex1", "ewqh", G, H, P)


def _ex2() -> Example:
    u = {i: i for i in range(1, 13)}
    v = {1: 13, 2: 14}
    shared = [
        (u[1], u[2], u[3]), (u[1], u[4], u[5]), (u[2], u[5], u[6]), (u[3], u[4], u[6]),
        (u[7], u[10], u[12]), (u[8], u[10], u[11]), (u[9], u[11], u[12]),
        (u[7], v[1], v[2]), (u[10], v[1], v[2]),
    ]
    G = Hypergraph(14, 3, shared + [(u[1], v[1], v[2]), (u[2], v[1], v[2]), (u[3], v[1], v[2])])
    H = Hypergraph(14, 3, shared + [(u[4], v[1], v[2]), (u[5], v[1], v[2]), (u[6], v[1], v[2])])
    cells = ((1, 2, 3), (4, 5, 6), (7, 8, 9), (10, 11, 12))
    P = SwitchingPartition(cells, (v[1], v[2]), 14, 3)
    return Example("paper-ex2", "mwqh", G, H, P)


_BUILDERS = {"paper-ex1": _ex1, "paper-ex2": _ex2}


def example_names() -> list[str]:
    return sorted(_BUILDERS)


def builtin_example(name: str) -> Example:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(example_names())}") from None


def builtin_examples() -> dict[str, Example]:
    return {name: builtin_example(name) for name in example_names()}
