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
"""Edge covers by co-chordal subgraphs.

Constructive covers (split, chain) follow the vertex partitions that prove
their size; the exact cover number is found by iterative deepening over edge
colourings whose classes must each extend to a co-chordal subgraph.
"""
import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from edge_regularity.constants import (
    DEFAULT_EDGE_CAP,
    DEFAULT_FACE_CAP,
    DEFAULT_TIMEOUT_MS,
    DEFAULT_VERTEX_CAP,
    RECOMMENDED_COVER_EDGES,
    SANDWICH_CAP,
    SPLIT_COVER_CAP,
)
from edge_regularity.core import (
    ArgumentError,
    CapacityError,
    EdgeSet,
    FamilyKind,
    Graph,
    GraphFamilySpec,
    InvariantViolation,
    complement,
    edge_conflict_graph,
    induced_subgraph,
    iter_bits,
    matching_conflict_graph,
    popcount,
)
from edge_regularity.homology import FieldSpec, complex_regularity, independence_complex
from edge_regularity.invariants import clique_cover, induced_matching_number
from edge_regularity.recognition import (
    ChordalityCertificate,
    has_induced,
    is_bipartite,
    is_cochordal,
    is_well_covered,
    matching_neighbourhoods_complete,
    perfect_matching_bipartite,
)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

TWO_K2 = GraphFamilySpec(FamilyKind.MATCHING, (2,))
CLAW = GraphFamilySpec(FamilyKind.CLAW, ())


class CoverKind(str, Enum):
    SPLIT = "split"
    CHAIN = "chain"
    COCHORDAL = "cochordal"
    MIXED = "mixed"


class SearchTimeout(Exception):
    """Raised inside a cover search when its deadline passes."""


@dataclass(frozen=True)
class Cover:
    """Subgraphs whose edges together cover E(G), each certified co-chordal."""

    parts: Tuple[EdgeSet, ...]
    kind: CoverKind
    certificates: Tuple[ChordalityCertificate, ...]
    """Chordality certificate of the complement of each part's spanning subgraph."""

    @classmethod
    def certify(cls, g: Graph, parts: Sequence[EdgeSet], kind: CoverKind) -> "Cover":
        certificates = []
        for i, part in enumerate(parts):
            certificate = is_cochordal(g.spanning(part))
            if not certificate.verdict:
                raise InvariantViolation(
                    f"{kind.value} cover part {i} of {g} is not co-chordal: hole {certificate.hole}"
                )
            certificates.append(certificate)
        return cls(tuple(parts), kind, tuple(certificates))

    @property
    def size(self) -> int:
        return len(self.parts)

    def validate(self, g: Graph) -> bool:
        covered = set()
        for part, certificate in zip(self.parts, self.certificates):
            if part.owner_n != g.n or any(not g.has_edge(u, v) for u, v in part):
                return False
            if not certificate.verdict or not certificate.validate(complement(g.spanning(part))):
                return False
            covered |= part.edges
        return len(self.parts) == len(self.certificates) and covered == set(g.edges())

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind.value,
            "size": self.size,
            "parts": [[list(e) for e in part] for part in self.parts],
        }


@dataclass(frozen=True)
class SplitPartition:
    j0: int
    cliques: Tuple[int, ...]

    def validate(self, g: Graph) -> bool:
        seen = self.j0
        for clique in self.cliques:
            if seen & clique or not g.is_clique(clique):
                return False
            seen |= clique
        return seen == g.full_mask and g.is_independent(self.j0)


@dataclass(frozen=True)
class CochordResult:
    value: int
    exact: bool
    lower_bound: int
    """Every smaller cover size has been ruled out."""
    cover: Cover

    @property
    def method(self) -> str:
        return "exact" if self.exact else "upper_bound"

    def to_dict(self) -> Dict[str, object]:
        return {
            "value": self.value,
            "method": self.method,
            "lower_bound": self.lower_bound,
            "cover": self.cover.to_dict(),
        }


@dataclass(frozen=True)
class FreeCover:
    """Outcome of a bounded search for a cover by (2K2, claw)-free subgraphs."""

    limit: int
    parts: Optional[Tuple[EdgeSet, ...]]
    """None when no cover within the limit was found."""
    complete: bool
    """False when the deadline cut the search short."""


def _check_edges(g: Graph, edges: Sequence[Edge]) -> None:
    for u, v in edges:
        if not g.has_edge(u, v):
            raise ArgumentError(f"({u}, {v}) is not an edge of the graph")


def _edges_meeting(g: Graph, mask: int) -> EdgeSet:
    return EdgeSet.from_pairs(g.n, ((u, v) for u, v in g.edges() if mask >> u & 1 or mask >> v & 1))


def split_cover(g: Graph, cap: int = SPLIT_COVER_CAP) -> Tuple[SplitPartition, Cover]:
    """Fewest cliques J_1..J_s such that the remaining vertices are independent.

    Part i holds every edge meeting J_i; each such part is a split graph.
    """
    if g.n > cap:
        raise CapacityError(
            f"Split cover search is limited to {cap} vertices, got {g.n}", limit=cap, reached=g.n
        )
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))

    def search(s: int) -> Optional[SplitPartition]:
        cliques = [0] * s

        def place(i: int, j0: int, used: int) -> Optional[int]:
            if i == len(order):
                return j0
            v = order[i]
            for c in range(used):
                if not cliques[c] & ~g.adj[v]:
                    cliques[c] |= 1 << v
                    found = place(i + 1, j0, used)
                    if found is not None:
                        return found
                    cliques[c] &= ~(1 << v)
            if used < s:
                cliques[used] = 1 << v
                found = place(i + 1, j0, used + 1)
                if found is not None:
                    return found
                cliques[used] = 0
            if not j0 & g.adj[v]:
                return place(i + 1, j0 | 1 << v, used)
            return None

        j0 = place(0, 0, 0)
        if j0 is None:
            return None
        return SplitPartition(j0, tuple(c for c in cliques if c))

    s = 0
    while True:
        partition = search(s)
        if partition is not None:
            break
        s += 1
    parts = [_edges_meeting(g, clique) for clique in partition.cliques]
    return partition, Cover.certify(g, parts, CoverKind.SPLIT)


def split_clique_pairs(g: Graph, cap: int = SPLIT_COVER_CAP) -> List[Tuple[int, int]]:
    """Pairs of disjoint cliques (either may be empty) leaving an independent remainder."""
    if g.n > cap:
        raise CapacityError(
            f"Clique pair scan is limited to {cap} vertices, got {g.n}", limit=cap, reached=g.n
        )
    cliques = [c for level in independence_complex(complement(g)).faces for c in level]
    found = []
    for i, a in enumerate(cliques):
        for b in cliques[i:]:
            if a & b:
                continue
            if g.is_independent(g.full_mask & ~(a | b)):
                found.append((a, b))
    return found


def chain_cover_wc_bipartite(g: Graph) -> Cover:
    """Cover a well-covered bipartite graph by indmatch(G) chain graphs.

    Cliques of M* group the perfect matching; each group takes every edge
    incident to its matching edges.
    """
    sides = is_bipartite(g)
    if sides is None:
        raise ArgumentError("chain_cover_wc_bipartite requires a bipartite graph")
    if g.isolated_mask():
        raise ArgumentError("chain_cover_wc_bipartite requires a graph without isolated vertices")
    if not is_well_covered(g).verdict:
        raise ArgumentError("chain_cover_wc_bipartite requires a well-covered graph")

    matching = perfect_matching_bipartite(g, sides)
    if matching is None:
        raise InvariantViolation(f"Well-covered bipartite graph {g} has no perfect matching")
    if not matching_neighbourhoods_complete(g, matching):
        raise InvariantViolation(f"A matching edge of {g} has an incomplete neighbourhood")

    matched = matching.as_list()
    groups = clique_cover(matching_conflict_graph(g, matching)).blocks
    parts = []
    for group in groups:
        ends = 0
        for i in iter_bits(group):
            u, v = matched[i]
            ends |= 1 << u | 1 << v
        part = _edges_meeting(g, ends)
        if has_induced(g.spanning(part), TWO_K2) is not None:
            raise InvariantViolation(f"Chain cover part {part.as_list()} contains an induced 2K2")
        parts.append(part)
    cover = Cover.certify(g, parts, CoverKind.CHAIN)
    indmatch = induced_matching_number(g).value
    if cover.size != indmatch:
        raise InvariantViolation(
            f"Chain cover of {g} has {cover.size} parts but indmatch is {indmatch}"
        )
    return cover


def extends_to_cochordal(
    g: Graph, edges: Sequence[Edge], cap: int = SANDWICH_CAP
) -> Optional[EdgeSet]:
    """A co-chordal subgraph of g containing the given edges, or None if there is none.

    Only the endpoints of the edges matter: vertex deletion and isolated vertices
    preserve co-chordality. On those vertices the complement of the extension must
    be a chordal graph between the complement of g and the complement of the
    edges; the elimination game searches for one, remembering eliminated sets that
    failed.
    """
    edges = sorted((min(e), max(e)) for e in edges)
    _check_edges(g, edges)
    if is_cochordal(g.spanning(edges)).verdict:
        return EdgeSet.from_pairs(g.n, edges)
    support = 0
    for u, v in edges:
        support |= 1 << u | 1 << v
    kept = list(iter_bits(support))
    if len(kept) > cap:
        raise CapacityError(
            f"Co-chordal extension is limited to {cap} vertices, got {len(kept)}",
            limit=cap,
            reached=len(kept),
        )
    local = induced_subgraph(g, support)
    position = {v: i for i, v in enumerate(kept)}
    required = [0] * local.n
    for u, v in edges:
        required[position[u]] |= 1 << position[v]
        required[position[v]] |= 1 << position[u]
    missing = complement(local).adj
    full = local.full_mask

    def reach(v: int, eliminated: int) -> int:
        """Vertices joined to v in the filled complement once `eliminated` is gone."""
        found, frontier, through = 0, 1 << v, 0
        while frontier:
            nbrs = 0
            for u in iter_bits(frontier):
                nbrs |= missing[u]
            found |= nbrs & ~eliminated & ~(1 << v)
            frontier = nbrs & eliminated & ~through
            through |= frontier
        return found

    failed = set()
    order: List[int] = []

    def eliminate(eliminated: int) -> bool:
        if eliminated == full:
            return True
        if eliminated in failed:
            return False
        for v in iter_bits(full & ~eliminated):
            nbrs = reach(v, eliminated)
            if any(required[u] & nbrs for u in iter_bits(nbrs)):
                continue
            order.append(v)
            if eliminate(eliminated | 1 << v):
                return True
            order.pop()
        failed.add(eliminated)
        return False

    if not eliminate(0):
        return None
    filled = [0] * local.n
    eliminated = 0
    for v in order:
        for u in iter_bits(reach(v, eliminated)):
            filled[v] |= 1 << u
            filled[u] |= 1 << v
        eliminated |= 1 << v
    extension = [(kept[a], kept[b]) for a, b in local.edges() if not filled[a] >> b & 1]
    return EdgeSet.from_pairs(g.n, extension)


def cover_with_predicate(
    g: Graph,
    k: int,
    accepts: Optional[Callable[[List[Edge]], bool]] = None,
    complete: Optional[Callable[[List[Edge]], bool]] = None,
    deadline: Optional[float] = None,
) -> Optional[List[List[Edge]]]:
    """Partition E(g) into at most k classes, or None if impossible.

    Classes are always cliques of G*, since two edges inducing a 2K2 in g do so in any
    subgraph holding both. `accepts` prunes partial classes and must be monotone under
    removing edges; `complete` is checked on every class of a full assignment. Edges
    go in descending G* degree and may only open the next unused class.
    """
    edges = g.edges()
    rows = edge_conflict_graph(g).adj
    order = sorted(range(len(edges)), key=lambda i: (-popcount(rows[i]), i))
    members: List[List[Edge]] = [[] for _ in range(k)]
    masks = [0] * k
    steps = 0

    def place(i: int, used: int) -> bool:
        nonlocal steps
        steps += 1
        if deadline is not None and steps % 256 == 0 and time.monotonic() > deadline:
            raise SearchTimeout()
        if i == len(order):
            return complete is None or all(complete(m) for m in members[:used])
        e = order[i]
        for c in range(min(used + 1, k)):
            if masks[c] & ~rows[e]:
                continue
            members[c].append(edges[e])
            if accepts is None or accepts(members[c]):
                masks[c] |= 1 << e
                if place(i + 1, max(used, c + 1)):
                    return True
                masks[c] &= ~(1 << e)
            members[c].pop()
        return False

    if not edges:
        return []
    if k == 0:
        return None
    if place(0, 0):
        return [list(m) for m in members if m]
    return None


def cochord_greedy(g: Graph) -> Cover:
    """Grow co-chordal parts from the heaviest uncovered edge until every edge is covered."""
    order = sorted(g.edges(), key=lambda e: (-(g.degree(e[0]) + g.degree(e[1])), e))
    uncovered = set(order)
    parts = []
    while uncovered:
        part: List[Edge] = []
        candidates = [e for e in order if e in uncovered] + [e for e in order if e not in uncovered]
        for e in candidates:
            if is_cochordal(g.spanning(part + [e])).verdict:
                part.append(e)
        uncovered.difference_update(part)
        parts.append(EdgeSet.from_pairs(g.n, part))
    return Cover.certify(g, parts, CoverKind.COCHORDAL)


def _cochord_connected(g: Graph, deadline: float) -> Tuple[int, bool, int, List[EdgeSet]]:
    greedy = cochord_greedy(g)
    lower = induced_matching_number(g).value
    if lower >= greedy.size:
        return greedy.size, True, greedy.size, list(greedy.parts)

    def extendable(members: List[Edge]) -> bool:
        return extends_to_cochordal(g, members) is not None

    for k in range(lower, greedy.size):
        try:
            classes = cover_with_predicate(g, k, accepts=extendable, deadline=deadline)
        except SearchTimeout:
            logger.info("Cover search for %s timed out at size %d", g, k)
            return greedy.size, False, k, list(greedy.parts)
        if classes is not None:
            return k, True, k, [extends_to_cochordal(g, members) for members in classes]
    return greedy.size, True, greedy.size, list(greedy.parts)


def cochord_exact(
    g: Graph, timeout_ms: int = DEFAULT_TIMEOUT_MS, edge_cap: int = DEFAULT_EDGE_CAP
) -> CochordResult:
    """Exact co-chordal cover number, solved per connected component.

    A co-chordal subgraph with edges in two components contains an induced 2K2, so
    the cover number is additive. When the deadline passes the greedy cover is
    returned as a flagged upper bound.
    """
    edge_count = g.edge_count
    if edge_count > edge_cap:
        raise CapacityError(
            f"Exact cover search is limited to {edge_cap} edges, got {edge_count}",
            limit=edge_cap,
            reached=edge_count,
        )
    if edge_count > RECOMMENDED_COVER_EDGES:
        logger.warning("Exact cover search on %d edges may not finish in time", edge_count)
    deadline = time.monotonic() + timeout_ms / 1000
    value, lower, exact = 0, 0, True
    parts: List[EdgeSet] = []
    for component in g.components():
        if popcount(component) < 2:
            continue
        kept = list(iter_bits(component))
        sub_value, sub_exact, sub_lower, sub_parts = _cochord_connected(
            induced_subgraph(g, component), deadline
        )
        value += sub_value
        lower += sub_lower
        exact = exact and sub_exact
        parts.extend(
            EdgeSet.from_pairs(g.n, ((kept[u], kept[v]) for u, v in part)) for part in sub_parts
        )
    return CochordResult(value, exact, lower, Cover.certify(g, parts, CoverKind.COCHORDAL))


def is_claw_and_2k2_free(g: Graph) -> bool:
    return has_induced(g, TWO_K2) is None and has_induced(g, CLAW) is None


def free_cover(g: Graph, limit: int, timeout_ms: int = DEFAULT_TIMEOUT_MS) -> FreeCover:
    """Partition E(g) into at most `limit` classes spanning (2K2, claw)-free subgraphs.

    Neither property survives edge deletion, so partial classes are only held to
    being cliques of G* and the full test runs on complete assignments.
    """
    deadline = time.monotonic() + timeout_ms / 1000

    def free(members: List[Edge]) -> bool:
        return is_claw_and_2k2_free(g.spanning(members))

    try:
        for k in range(limit + 1):
            classes = cover_with_predicate(g, k, complete=free, deadline=deadline)
            if classes is not None:
                parts = tuple(EdgeSet.from_pairs(g.n, members) for members in classes)
                return FreeCover(limit, parts, True)
    except SearchTimeout:
        return FreeCover(limit, None, False)
    return FreeCover(limit, None, True)


def clique_deletion_check(
    g: Graph,
    j: int,
    f: FieldSpec = FieldSpec(),
    vertex_cap: int = DEFAULT_VERTEX_CAP,
    face_cap: int = DEFAULT_FACE_CAP,
    whole: Optional[int] = None,
) -> bool:
    """reg(G) <= reg(G minus the clique j) + 1; pass `whole` to reuse a known reg(G)."""
    if j & ~g.full_mask or not g.is_clique(j):
        raise ArgumentError(f"Vertex set {[v for v in iter_bits(j)]} is not a clique")
    if whole is None:
        whole = complex_regularity(g, f, vertex_cap, face_cap).value
    rest = complex_regularity(induced_subgraph(g, g.full_mask & ~j), f, vertex_cap, face_cap)
    return whole <= rest.value + 1
