# Copyright (c) 2023 Alex Butler
#
# Permission is hereby granted, free of charge, to any person obtaining a copy of this
# software and associated documentation files (the "Software"), to deal in the Software
# without restriction, including without limitation the rights to use, copy, modify, merge,
# publish, distribute, sublicense, and/or sell copies of the Software, and to permit persons
# to whom the Software is furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all copies or
# substantial portions of the Software.
"""Graph values, the error hierarchy and the standard constructions.

Graphs are immutable and hold one adjacency bitmask per vertex, so every set
operation used by the solvers is a handful of integer ops. Constructions fix
their vertex order so that every output is reproducible byte for byte.
"""
try:
    from functools import cache
except ImportError:
    from functools import lru_cache as cache

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from edge_regularity.constants import MAX_VERTICES


class WorkbenchError(Exception):
    """Base class for every error raised by the workbench."""


class ParameterError(WorkbenchError, ValueError):
    """A constructor received parameters outside their documented range."""


class CapacityError(WorkbenchError):
    """An input exceeds a configured or structural cap."""

    def __init__(self, message: str, limit: Optional[int] = None, reached: Optional[int] = None):
        super().__init__(message)
        self.limit = limit
        self.reached = reached


class GraphParseError(WorkbenchError, ValueError):
    """Malformed graph6 bytes or edge-list text."""

    def __init__(self, message: str, offset: Optional[int] = None, line: Optional[int] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte offset {offset}")
        super().__init__(message + (f" ({', '.join(where)})" if where else ""))
        self.message = message
        self.offset = offset
        self.line = line


class ArgumentError(WorkbenchError, ValueError):
    """A precondition of an operation does not hold for its arguments."""


class InvariantViolation(WorkbenchError, RuntimeError):
    """A theorem-backed internal assertion failed."""


def bit(i: int) -> int:
    return 1 << i


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """A simple graph on vertices 0..n-1 stored as adjacency bitmasks."""

    n: int
    """The vertex count."""
    adj: Tuple[int, ...]
    """Row i holds the neighbours of vertex i."""
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)
    """Optional display names, ignored by equality."""

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(
                f"Graphs are limited to {MAX_VERTICES} vertices, got {self.n}",
                limit=MAX_VERTICES,
                reached=self.n,
            )
        object.__setattr__(self, "adj", tuple(self.adj))
        if len(self.adj) != self.n:
            raise ArgumentError(f"Expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row >> i & 1:
                raise ArgumentError(f"Vertex {i} has a loop")
            if row & ~full:
                raise ArgumentError(f"Row {i} has bits beyond vertex {self.n - 1}")
            for j in iter_bits(row):
                if not self.adj[j] >> i & 1:
                    raise ArgumentError(f"Adjacency is not symmetric at ({i}, {j})")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.n:
                raise ArgumentError(f"Expected {self.n} labels, got {len(self.labels)}")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        labels: Optional[Sequence[str]] = None,
    ) -> "Graph":
        """Build a graph from vertex pairs; repeated pairs are harmless."""
        if not 0 <= n <= MAX_VERTICES:
            raise CapacityError(
                f"Graphs are limited to {MAX_VERTICES} vertices, got {n}",
                limit=MAX_VERTICES,
                reached=n,
            )
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ArgumentError(f"Loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ArgumentError(f"Edge ({u}, {v}) leaves the vertex range 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @classmethod
    def edgeless(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_networkx(cls, graph: "nx.Graph") -> "Graph":
        """Relabel a networkx graph by sorted node order."""
        nodes = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(
            len(nodes), ((index[u], index[v]) for u, v in graph.edges() if u != v)
        )

    def to_networkx(self) -> "nx.Graph":
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (i, j), i < j, in lexicographic order."""
        return [(i, j) for i in range(self.n) for j in iter_bits(self.adj[i] >> (i + 1) << (i + 1))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def is_clique(self, mask: int) -> bool:
        return all(mask & ~(self.adj[v] | 1 << v) == 0 for v in iter_bits(mask))

    def is_independent(self, mask: int) -> bool:
        return all(self.adj[v] & mask == 0 for v in iter_bits(mask))

    def isolated_mask(self, mask: Optional[int] = None) -> int:
        """Vertices of mask with no neighbour inside mask."""
        if mask is None:
            mask = self.full_mask
        return mask_of(v for v in iter_bits(mask) if self.adj[v] & mask == 0)

    def components(self, mask: Optional[int] = None) -> List[int]:
        """Connected components of the subgraph induced on mask, by lowest vertex."""
        if mask is None:
            mask = self.full_mask
        found = []
        remaining = mask
        while remaining:
            seed = remaining & -remaining
            component, frontier = seed, seed
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= self.adj[v]
                frontier = reach & mask & ~component
                component |= frontier
            found.append(component)
            remaining &= ~component
        return found

    def spanning(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """The graph on the same vertex set with only the given edges."""
        return Graph.from_edges(self.n, edges)

    def edge_set(self) -> "EdgeSet":
        return EdgeSet(self.n, frozenset(self.edges()))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True)
class EdgeSet:
    """Edges of a host graph on owner_n vertices, stored as (i, j) with i < j."""

    owner_n: int
    edges: FrozenSet[Tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ArgumentError(f"Loop at vertex {u}")
            if not (0 <= u < self.owner_n and 0 <= v < self.owner_n):
                raise ArgumentError(
                    f"Edge ({u}, {v}) leaves the vertex range 0..{self.owner_n - 1}"
                )
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_pairs(cls, owner_n: int, pairs: Iterable[Tuple[int, int]]) -> "EdgeSet":
        return cls(owner_n, frozenset(pairs))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self.edges))

    def as_list(self) -> List[Tuple[int, int]]:
        return sorted(self.edges)

    @property
    def vertex_mask(self) -> int:
        return mask_of(v for e in self.edges for v in e)

    def is_matching(self) -> bool:
        return popcount(self.vertex_mask) == 2 * len(self.edges)

    def union(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.owner_n, self.edges | other.edges)


class FamilyKind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    MATCHING = "matching"
    COMPLETE_BIPARTITE = "complete_bipartite"
    PETERSEN = "petersen"
    EDGELESS = "edgeless"
    CLAW = "claw"


_ARITY: Dict[FamilyKind, int] = {
    FamilyKind.PATH: 1,
    FamilyKind.CYCLE: 1,
    FamilyKind.COMPLETE: 1,
    FamilyKind.MATCHING: 1,
    FamilyKind.COMPLETE_BIPARTITE: 2,
    FamilyKind.PETERSEN: 0,
    FamilyKind.EDGELESS: 1,
    FamilyKind.CLAW: 0,
}


@dataclass(frozen=True)
class GraphFamilySpec:
    """A named graph family member such as P_n, C_n, K_n, mK2 or K_{m,n}."""

    kind: FamilyKind
    params: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        try:
            kind = FamilyKind(self.kind)
        except ValueError:
            raise ParameterError(f"Unknown graph family: {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", tuple(self.params))
        if len(self.params) != _ARITY[kind]:
            raise ParameterError(
                f"{kind.value} takes {_ARITY[kind]} parameter(s), got {self.params}"
            )
        if any(p < 0 for p in self.params):
            raise ParameterError(f"{kind.value} parameters must be >= 0, got {self.params}")
        if kind is FamilyKind.PATH and self.params[0] < 1:
            raise ParameterError("path requires n >= 1")
        if kind is FamilyKind.CYCLE and self.params[0] < 3:
            raise ParameterError("cycle requires n >= 3")
        if sum(self.params) > MAX_VERTICES or (
            kind is FamilyKind.MATCHING and 2 * self.params[0] > MAX_VERTICES
        ):
            raise CapacityError(f"{kind.value}{self.params} exceeds {MAX_VERTICES} vertices")

    @classmethod
    def parse(cls, text: str) -> "GraphFamilySpec":
        """Parse names like ``C5``, ``P4``, ``K3``, ``3K2``, ``K2,3``, ``petersen``, ``claw``."""
        token = text.strip()
        lowered = token.lower()
        if lowered in ("petersen", "claw"):
            return cls(FamilyKind(lowered))
        try:
            if lowered.endswith("k2") and lowered[:-2].isdigit():
                return cls(FamilyKind.MATCHING, (int(lowered[:-2]),))
            if lowered.startswith("k") and "," in lowered:
                m, n = lowered[1:].split(",")
                return cls(FamilyKind.COMPLETE_BIPARTITE, (int(m), int(n)))
            prefix = {"p": FamilyKind.PATH, "c": FamilyKind.CYCLE, "k": FamilyKind.COMPLETE,
                      "e": FamilyKind.EDGELESS}
            if lowered[0] in prefix:
                return cls(prefix[lowered[0]], (int(lowered[1:]),))
        except (ValueError, IndexError):
            pass
        raise ParameterError(f"Cannot parse graph family name {text!r}")

    def __str__(self) -> str:
        if self.kind is FamilyKind.MATCHING:
            return f"{self.params[0]}K2"
        if self.kind is FamilyKind.COMPLETE_BIPARTITE:
            return f"K{self.params[0]},{self.params[1]}"
        short = {FamilyKind.PATH: "P", FamilyKind.CYCLE: "C", FamilyKind.COMPLETE: "K",
                 FamilyKind.EDGELESS: "E"}
        if self.kind in short:
            return f"{short[self.kind]}{self.params[0]}"
        return self.kind.value


@cache
def make_family(spec: GraphFamilySpec) -> Graph:
    """Build the named graph in its canonical vertex order."""
    kind, params = spec.kind, spec.params
    if kind is FamilyKind.PATH:
        n = params[0]
        return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
    if kind is FamilyKind.CYCLE:
        n = params[0]
        return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))
    if kind is FamilyKind.COMPLETE:
        n = params[0]
        return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))
    if kind is FamilyKind.MATCHING:
        m = params[0]
        return Graph.from_edges(2 * m, ((2 * i, 2 * i + 1) for i in range(m)))
    if kind is FamilyKind.COMPLETE_BIPARTITE:
        m, n = params
        return Graph.from_edges(m + n, ((i, m + j) for i in range(m) for j in range(n)))
    if kind is FamilyKind.EDGELESS:
        return Graph.edgeless(params[0])
    if kind is FamilyKind.CLAW:
        return Graph.from_edges(4, ((0, 1), (0, 2), (0, 3)))
    # Petersen: outer 5-cycle, spokes, inner pentagram
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def family(name: str) -> Graph:
    """Shorthand for ``make_family(GraphFamilySpec.parse(name))``."""
    return make_family(GraphFamilySpec.parse(name))


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple(full ^ row ^ (1 << i) for i, row in enumerate(g.adj)), g.labels)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """g1 followed by g2 with g2's vertices shifted by g1.n."""
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise CapacityError(
            f"Disjoint union needs {n} vertices, the limit is {MAX_VERTICES}",
            limit=MAX_VERTICES,
            reached=n,
        )
    labels = None
    if g1.labels is not None or g2.labels is not None:
        labels = tuple(g1.label(v) for v in range(g1.n)) + tuple(
            g2.label(v) for v in range(g2.n)
        )
    return Graph(n, g1.adj + tuple(row << g1.n for row in g2.adj), labels)


def induced_subgraph(g: Graph, w: int) -> Graph:
    """The subgraph induced on mask w, relabelled by increasing original index."""
    if w & ~g.full_mask:
        raise ArgumentError(f"Vertex mask {w:#x} has bits beyond vertex {g.n - 1}")
    kept = list(iter_bits(w))
    position = {v: i for i, v in enumerate(kept)}
    rows = tuple(mask_of(position[u] for u in iter_bits(g.adj[v] & w)) for v in kept)
    labels = tuple(g.labels[v] for v in kept) if g.labels is not None else None
    return Graph(len(kept), rows, labels)


def pendant_attachment(g: Graph, vertices: Iterable[int]) -> Graph:
    """Attach a new degree-one vertex to each listed vertex, appended in increasing order."""
    chosen = sorted(set(vertices))
    for v in chosen:
        if not 0 <= v < g.n:
            raise ArgumentError(f"Vertex {v} is not in the graph")
    n = g.n + len(chosen)
    if n > MAX_VERTICES:
        raise CapacityError(
            f"Attaching {len(chosen)} pendants needs {n} vertices, the limit is {MAX_VERTICES}",
            limit=MAX_VERTICES,
            reached=n,
        )
    edges = g.edges() + [(v, g.n + k) for k, v in enumerate(chosen)]
    return Graph.from_edges(n, edges)


def whisker(g: Graph) -> Graph:
    """W(G): vertex n + i is a pendant hanging off vertex i."""
    return pendant_attachment(g, range(g.n))


def _closed_edge_neighbourhood(g: Graph, e: Tuple[int, int]) -> int:
    u, v = e
    return g.adj[u] | g.adj[v] | 1 << u | 1 << v


def _conflict_rows(g: Graph, edges: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
    closed = [_closed_edge_neighbourhood(g, e) for e in edges]
    ends = [1 << u | 1 << v for u, v in edges]
    rows = []
    for a in range(len(edges)):
        row = 0
        for b in range(len(edges)):
            if a != b and closed[a] & ends[b]:
                row |= 1 << b
        rows.append(row)
    return tuple(rows)


def edge_conflict_graph(g: Graph) -> Graph:
    """G*: one vertex per edge, adjacent unless the two edges induce a 2K2."""
    edges = g.edges()
    if len(edges) > MAX_VERTICES:
        raise CapacityError(
            f"G* needs one vertex per edge; {len(edges)} edges exceed {MAX_VERTICES}",
            limit=MAX_VERTICES,
            reached=len(edges),
        )
    return Graph(len(edges), _conflict_rows(g, edges))


def matching_conflict_graph(g: Graph, m: EdgeSet) -> Graph:
    """M*: the subgraph of G* induced on the edges of the matching m."""
    if m.owner_n != g.n:
        raise ArgumentError(f"Matching belongs to a graph on {m.owner_n} vertices, not {g.n}")
    for u, v in m:
        if not g.has_edge(u, v):
            raise ArgumentError(f"({u}, {v}) is not an edge of the graph")
    if not m.is_matching():
        raise ArgumentError("Edge set is not a matching")
    return Graph(len(m), _conflict_rows(g, m.as_list()))


def is_induced_matching(g: Graph, edges: Iterable[Tuple[int, int]]) -> bool:
    """Direct check: the endpoints induce exactly the given pairwise disjoint edges."""
    edges = list(edges)
    mask = mask_of(v for e in edges for v in e)
    if popcount(mask) != 2 * len(edges):
        return False
    return sorted(induced_edges(g, mask)) == sorted((min(e), max(e)) for e in edges)


def induced_edges(g: Graph, mask: int) -> List[Tuple[int, int]]:
    """Edges of g with both ends in mask, in original labels."""
    return [(u, v) for u, v in g.edges() if mask >> u & 1 and mask >> v & 1]
