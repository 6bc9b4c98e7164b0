"""k-uniform hypergraphs: representation, HGF serialization, combinatorics, isomorphism.

Vertices are the integers ``1..n``.  Edges are strictly increasing k-tuples kept
in lexicographic order, so two equal hypergraphs always compare (and serialize)
identically.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Optional

Edge = tuple[int, ...]


class HypergraphError(ValueError):
    """Invalid hypergraph data (bad edge, bad vertex, malformed HGF text)."""


@dataclass(frozen=True)
class Hypergraph:
    n: int
    k: int
    edges: tuple[Edge, ...] = ()
    _edge_set: frozenset = field(init=False, repr=False, compare=False)
    _incidence: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise HypergraphError(f"vertex count must be a positive integer, got {self.n!r}")
        if not isinstance(self.k, int) or self.k < 2:
            raise HypergraphError(f"uniformity must be an integer >= 2, got {self.k!r}")
        canon = []
        for raw in self.edges:
            e = tuple(sorted(int(v) for v in raw))
            if len(e) != self.k:
                raise HypergraphError(f"edge {tuple(raw)} has {len(e)} vertices, expected {self.k}")
            if len(set(e)) != self.k:
                raise HypergraphError(f"edge {tuple(raw)} repeats a vertex")
            if e[0] < 1 or e[-1] > self.n:
                raise HypergraphError(f"edge {tuple(raw)} has a vertex outside 1..{self.n}")
            canon.append(e)
        edge_set = frozenset(canon)
        if len(edge_set) != len(canon):
            dupes = sorted(e for e, c in Counter(canon).items() if c > 1)
            raise HypergraphError(f"duplicate edge {dupes[0]}")
        incidence = defaultdict(list)
        ordered = tuple(sorted(edge_set))
        for e in ordered:
            for v in e:
                incidence[v].append(e)
        object.__setattr__(self, "edges", ordered)
        object.__setattr__(self, "_edge_set", edge_set)
        object.__setattr__(self, "_incidence", {v: tuple(es) for v, es in incidence.items()})

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self._edge_set

    def edges_at(self, v: int) -> tuple[Edge, ...]:
        """Edges containing ``v``, in canonical order."""
        self._check_vertex(v)
        return self._incidence.get(v, ())

    def relabel(self, mapping: Mapping[int, int]) -> "Hypergraph":
        """Image of the hypergraph under the vertex bijection ``mapping``."""
        if sorted(mapping) != list(self.vertices) or sorted(mapping.values()) != list(self.vertices):
            raise HypergraphError("relabeling must be a bijection of 1..n")
        return Hypergraph(self.n, self.k, [tuple(mapping[v] for v in e) for e in self.edges])

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return Hypergraph(self.n, self.k, [tuple(e) for e in edges])

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise HypergraphError(f"vertex {v} outside 1..{self.n}")


def _vertex_subset(G: Hypergraph, members: Iterable[int]) -> tuple[int, ...]:
    s = tuple(sorted(members))
    if len(set(s)) != len(s):
        raise HypergraphError(f"vertex subset {s} repeats a vertex")
    for v in s:
        G._check_vertex(v)
    return s


# --- HGF text format -------------------------------------------------------


def parse_hypergraph(text: bytes | str) -> Hypergraph:
    """Parse HGF text: ``k n`` header, then one edge per line; ``#`` comments.

    Edge lines need not be sorted on input; the result is canonical.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise HypergraphError(f"HGF input is not UTF-8: {exc}") from None
    if text and not text.endswith("\n"):
        raise HypergraphError("HGF input must end with a newline")
    header = None
    edges = []
    for lineno, line in enumerate(text.split("\n")[:-1], start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            fields = [int(tok) for tok in stripped.split()]
        except ValueError:
            raise HypergraphError(f"line {lineno}: non-integer token in {line!r}") from None
        if header is None:
            if len(fields) != 2:
                raise HypergraphError(f"line {lineno}: malformed header {line!r}, expected 'k n'")
            header = fields
            continue
        if len(fields) != header[0]:
            raise HypergraphError(f"line {lineno}: edge has {len(fields)} vertices, expected {header[0]}")
        edges.append(tuple(fields))
    if header is None:
        raise HypergraphError("missing 'k n' header")
    k, n = header
    return Hypergraph(n, k, edges)


def serialize_hypergraph(G: Hypergraph) -> bytes:
    lines = [f"{G.k} {G.n}"]
    lines.extend(" ".join(map(str, e)) for e in G.edges)
    return ("\n".join(lines) + "\n").encode("utf-8")


# --- combinatorics ---------------------------------------------------------


def degree(G: Hypergraph, v: int) -> int:
    return len(G.edges_at(v))


def neighbourhood(G: Hypergraph, S: Iterable[int]) -> tuple[int, ...]:
    """All ``v`` such that ``S | {v}`` is an edge; ``S`` must have k-1 vertices."""
    S = _vertex_subset(G, S)
    if len(S) != G.k - 1:
        raise HypergraphError(f"neighbourhood needs a {G.k - 1}-subset, got {len(S)} vertices")
    if not S:
        return ()
    members = set(S)
    out = [v for e in G.edges_at(S[0]) if members.issubset(e) for v in e if v not in members]
    return tuple(sorted(out))


def two_section(G: Hypergraph) -> frozenset[tuple[int, int]]:
    """Pairs ``(u, v)`` with ``u < v`` that lie together in some edge."""
    return frozenset(pair for e in G.edges for pair in combinations(e, 2))


def pair_multiplicities(G: Hypergraph) -> Counter:
    """Number of edges containing each pair ``(u, v)``, ``u < v``."""
    return Counter(pair for e in G.edges for pair in combinations(e, 2))


# --- isomorphism -----------------------------------------------------------


def _refine(G: Hypergraph, H: Hypergraph) -> Optional[tuple[dict, dict]]:
    """Joint colour refinement; None as soon as the colour histograms differ."""
    col_g = {v: degree(G, v) for v in G.vertices}
    col_h = {v: degree(H, v) for v in H.vertices}
    classes = 0
    while True:
        if Counter(col_g.values()) != Counter(col_h.values()):
            return None
        if len(set(col_g.values())) == classes:
            return col_g, col_h
        classes = len(set(col_g.values()))

        def signature(X, col, v):
            around = sorted(tuple(sorted(col[u] for u in e if u != v)) for e in X.edges_at(v))
            return col[v], tuple(around)

        sig_g = {v: signature(G, col_g, v) for v in G.vertices}
        sig_h = {v: signature(H, col_h, v) for v in H.vertices}
        palette = {s: i for i, s in enumerate(sorted(set(sig_g.values()) | set(sig_h.values())))}
        col_g = {v: palette[s] for v, s in sig_g.items()}
        col_h = {v: palette[s] for v, s in sig_h.items()}


def are_isomorphic(G: Hypergraph, H: Hypergraph) -> Optional[dict[int, int]]:
    """Return a vertex bijection carrying E(G) onto E(H), or None.

    Backtracking over colour-refined candidate classes, pruned by pair
    multiplicities and completed edges.  Deterministic; intended for n <= 16.
    """
    if (G.n, G.k, len(G.edges)) != (H.n, H.k, len(H.edges)):
        return None
    if G == H:
        return {v: v for v in G.vertices}
    refined = _refine(G, H)
    if refined is None:
        return None
    col_g, col_h = refined
    mult_g, mult_h = pair_multiplicities(G), pair_multiplicities(H)

    def mult(counter, u, v):
        return counter.get((u, v) if u < v else (v, u), 0)

    class_size = Counter(col_g.values())
    # most constrained first: small colour class, then most links to placed vertices
    order: list[int] = []
    remaining = set(G.vertices)
    while remaining:
        placed = set(order)
        v = min(
            remaining,
            key=lambda x: (
                class_size[col_g[x]],
                -sum(1 for e in G.edges_at(x) for u in e if u in placed),
                x,
            ),
        )
        order.append(v)
        remaining.remove(v)

    candidates = {v: [w for w in H.vertices if col_h[w] == col_g[v]] for v in G.vertices}
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        for u, x in mapping.items():
            if mult(mult_g, u, v) != mult(mult_h, x, w):
                return False
        done_g = 0
        for e in G.edges_at(v):
            if all(u == v or u in mapping for u in e):
                if not H.has_edge(w if u == v else mapping[u] for u in e):
                    return False
                done_g += 1
        done_h = sum(1 for e in H.edges_at(w) if all(x == w or x in used for x in e))
        return done_g == done_h

    def extend(depth: int) -> bool:
        if depth == len(order):
            return True
        v = order[depth]
        for w in candidates[v]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(depth + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if extend(0):
        return dict(sorted(mapping.items()))
    return None


def validates_isomorphism(G: Hypergraph, H: Hypergraph, mapping: Mapping[int, int]) -> bool:
    """True iff ``mapping`` is a bijection with mapping(E(G)) == E(H)."""
    try:
        return G.relabel(mapping) == H
    except HypergraphError:
        return False
