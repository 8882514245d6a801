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
"""Structure predicates with certificates.

Every predicate returns something a caller can check without trusting this
module: perfect elimination orderings, induced holes, bipartitions, split
partitions and pairs of maximal independent sets of different sizes.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from edge_regularity.constants import HOLE_SEARCH_CAP, WELL_COVERED_CAP
from edge_regularity.core import (
    ArgumentError,
    CapacityError,
    EdgeSet,
    FamilyKind,
    Graph,
    GraphFamilySpec,
    InvariantViolation,
    complement,
    iter_bits,
    mask_of,
    popcount,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChordalityCertificate:
    """Chordality verdict with a perfect elimination ordering or an induced hole."""

    verdict: bool
    peo: Optional[Tuple[int, ...]] = None
    """Present iff chordal."""
    hole: Optional[Tuple[int, ...]] = None
    """Present iff not chordal: an induced cycle of length >= 4."""

    def validate(self, g: Graph) -> bool:
        """Re-check the certificate against g from scratch."""
        if self.verdict:
            return (
                self.hole is None
                and self.peo is not None
                and is_perfect_elimination_ordering(g, self.peo)
            )
        return (
            self.peo is None
            and self.hole is not None
            and len(self.hole) >= 4
            and is_induced_cycle(g, self.hole)
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "verdict": self.verdict,
            "peo": list(self.peo) if self.peo is not None else None,
            "hole": list(self.hole) if self.hole is not None else None,
        }


@dataclass(frozen=True)
class Bipartition:
    side_a: int
    side_b: int

    def validate(self, g: Graph) -> bool:
        if self.side_a & self.side_b or self.side_a | self.side_b != g.full_mask:
            return False
        return g.is_independent(self.side_a) and g.is_independent(self.side_b)


@dataclass(frozen=True)
class WeakChordality:
    verdict: bool
    hole: Optional[Tuple[int, ...]] = None
    """An induced cycle of length >= 5, in g or in its complement."""
    in_complement: bool = False


@dataclass(frozen=True)
class WellCovered:
    verdict: bool
    smaller: Optional[int] = None
    larger: Optional[int] = None
    """Two maximal independent sets of different sizes when the verdict is False."""
    independent_size: Optional[int] = None
    """The common size of all maximal independent sets when the verdict is True."""


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    """Each vertex's neighbours later in the order form a clique."""
    if sorted(order) != list(range(g.n)):
        return False
    later = g.full_mask
    for v in order:
        later &= ~(1 << v)
        if not g.is_clique(g.adj[v] & later):
            return False
    return True


def is_induced_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    """The listed vertices, in order, form a cycle with no chords."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k or any(not 0 <= v < g.n for v in cycle):
        return False
    mask = mask_of(cycle)
    for i, v in enumerate(cycle):
        expected = 1 << cycle[i - 1] | 1 << cycle[(i + 1) % k]
        if g.adj[v] & mask != expected:
            return False
    return True


def maximum_cardinality_search(g: Graph) -> List[int]:
    """Visit order of MCS; ties go to the smallest vertex index."""
    weight = [0] * g.n
    unvisited = g.full_mask
    order = []
    while unvisited:
        v = max(iter_bits(unvisited), key=lambda u: (weight[u], -u))
        order.append(v)
        unvisited &= ~(1 << v)
        for u in iter_bits(g.adj[v] & unvisited):
            weight[u] += 1
    return order


def _shortest_path(g: Graph, source: int, target: int, allowed: int) -> Optional[List[int]]:
    parent = {source: source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == target:
            path = [u]
            while path[-1] != source:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in iter_bits(g.adj[u] & allowed):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return None


def _hole_through(g: Graph, v: int, x: int, y: int) -> Optional[Tuple[int, ...]]:
    """A hole v, x, ..., y when x and y are non-adjacent neighbours of v joined outside N[v]."""
    allowed = (g.full_mask & ~(g.adj[v] | 1 << v)) | 1 << x | 1 << y
    path = _shortest_path(g, x, y, allowed)
    if path is None:
        return None
    return (v,) + tuple(path)


def _find_hole(g: Graph, hint: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    candidates = list(range(g.n))
    if hint is not None:
        candidates.remove(hint)
        candidates.insert(0, hint)
    for v in candidates:
        nbrs = list(iter_bits(g.adj[v]))
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1 :]:
                if g.has_edge(x, y):
                    continue
                hole = _hole_through(g, v, x, y)
                if hole is not None:
                    return hole
    return None


def is_chordal(g: Graph) -> ChordalityCertificate:
    """MCS ordering, PEO verification, and an induced hole on failure."""
    peo = tuple(reversed(maximum_cardinality_search(g)))
    later = g.full_mask
    for v in peo:
        later &= ~(1 << v)
        if not g.is_clique(g.adj[v] & later):
            hole = _find_hole(g, hint=v)
            if hole is None:
                raise InvariantViolation("MCS ordering failed but no hole exists")
            return ChordalityCertificate(False, hole=hole)
    return ChordalityCertificate(True, peo=peo)


def is_cochordal(g: Graph) -> ChordalityCertificate:
    """Chordality of the complement; certificate indices are shared with g."""
    return is_chordal(complement(g))


def maximal_cliques(g: Graph, within: Optional[int] = None) -> Iterator[int]:
    """Bron-Kerbosch with Tomita pivoting, yielding vertex masks."""

    def expand(r: int, p: int, x: int) -> Iterator[int]:
        if not p:
            if not x:
                yield r
            return
        pivot = max(iter_bits(p | x), key=lambda u: (popcount(p & g.adj[u]), -u))
        for v in iter_bits(p & ~g.adj[pivot]):
            yield from expand(r | 1 << v, p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    yield from expand(0, g.full_mask if within is None else within, 0)


def is_split(g: Graph) -> Optional[Tuple[int, int]]:
    """A (clique, independent set) partition, searched over maximum cliques."""
    cliques = list(maximal_cliques(g))
    top = max(popcount(c) for c in cliques)
    for clique in sorted(c for c in cliques if popcount(c) == top):
        rest = g.full_mask & ~clique
        if g.is_independent(rest):
            return clique, rest
    return None


def iter_induced_cycles(
    g: Graph, min_len: int, max_len: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """Backtracking search for induced cycles whose length lies in [min_len, max_len].

    Each cycle is grown as an induced path from its smallest vertex; a candidate
    may touch only the last path vertex, or the first one when it closes the cycle.
    Every cycle is produced once per direction.
    """
    if max_len is None:
        max_len = g.n
    min_len = max(min_len, 3)
    if max_len < min_len:
        return

    def extend(path: List[int], on_path: int, interior: int, higher: int):
        s, last = path[0], path[-1]
        for w in iter_bits(g.adj[last] & higher & ~on_path & ~interior):
            if g.adj[w] >> s & 1:
                if min_len <= len(path) + 1 <= max_len:
                    yield tuple(path + [w])
                continue
            if len(path) + 2 <= max_len:
                yield from extend(
                    path + [w], on_path | 1 << w, interior | g.adj[last] | 1 << last, higher
                )

    for s in range(g.n):
        if popcount(g.adj[s]) < 2:
            continue
        higher = g.full_mask & ~((1 << (s + 1)) - 1)
        for p1 in iter_bits(g.adj[s] & higher):
            yield from extend([s, p1], 1 << s | 1 << p1, 0, higher)


def find_induced_cycle(
    g: Graph, min_len: int, max_len: Optional[int] = None
) -> Optional[Tuple[int, ...]]:
    return next(iter_induced_cycles(g, min_len, max_len), None)


def is_weakly_chordal(g: Graph, cap: int = HOLE_SEARCH_CAP) -> WeakChordality:
    """No induced cycle of length >= 5 in g or in its complement."""
    if g.n > cap:
        raise CapacityError(
            f"Hole search is limited to {cap} vertices, got {g.n}", limit=cap, reached=g.n
        )
    hole = find_induced_cycle(g, 5)
    if hole is not None:
        return WeakChordality(False, hole, in_complement=False)
    hole = find_induced_cycle(complement(g), 5)
    if hole is not None:
        return WeakChordality(False, hole, in_complement=True)
    return WeakChordality(True)


def is_bipartite(g: Graph) -> Optional[Bipartition]:
    """BFS two-colouring; the smallest vertex of each component goes to side_a."""
    colour: Dict[int, int] = {}
    for root in range(g.n):
        if root in colour:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in iter_bits(g.adj[u]):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    side_a = mask_of(v for v, c in colour.items() if c == 0)
    return Bipartition(side_a, g.full_mask & ~side_a)


def is_well_covered(g: Graph, cap: int = WELL_COVERED_CAP) -> WellCovered:
    """Enumerate maximal independent sets, stopping at the first size mismatch."""
    if g.n > cap:
        raise CapacityError(
            f"Well-covered testing is limited to {cap} vertices, got {g.n}",
            limit=cap,
            reached=g.n,
        )
    first = None
    for independent in maximal_cliques(complement(g)):
        if first is None:
            first = independent
        elif popcount(independent) != popcount(first):
            pair = sorted((first, independent), key=popcount)
            return WellCovered(False, smaller=pair[0], larger=pair[1])
    return WellCovered(True, independent_size=popcount(first or 0))


def is_very_well_covered(g: Graph) -> bool:
    """Well-covered with independence number exactly half the vertex count."""
    if g.n % 2 or g.isolated_mask():
        return False
    result = is_well_covered(g)
    return result.verdict and 2 * result.independent_size == g.n


def _induced_2k2(g: Graph) -> Optional[int]:
    edges = g.edges()
    for a, (u, v) in enumerate(edges):
        closed = g.adj[u] | g.adj[v] | 1 << u | 1 << v
        for x, y in edges[a + 1 :]:
            if not closed & (1 << x | 1 << y):
                return 1 << u | 1 << v | 1 << x | 1 << y
    return None


def _induced_claw(g: Graph) -> Optional[int]:
    for centre in range(g.n):
        nbrs = g.adj[centre]
        if popcount(nbrs) < 3:
            continue
        for a in iter_bits(nbrs):
            rest_a = nbrs & ~g.adj[a] & ~((1 << (a + 1)) - 1)
            for b in iter_bits(rest_a):
                rest_b = rest_a & ~g.adj[b] & ~((1 << (b + 1)) - 1)
                if rest_b:
                    d = (rest_b & -rest_b).bit_length() - 1
                    return 1 << centre | 1 << a | 1 << b | 1 << d
    return None


def has_induced(g: Graph, pattern: GraphFamilySpec) -> Optional[int]:
    """A vertex set inducing 2K2, the claw K_{1,3}, or a cycle C_k; None if absent."""
    kind, params = pattern.kind, pattern.params
    if kind is FamilyKind.MATCHING and params == (2,):
        return _induced_2k2(g)
    if kind is FamilyKind.CLAW or (
        kind is FamilyKind.COMPLETE_BIPARTITE and sorted(params) == [1, 3]
    ):
        return _induced_claw(g)
    if kind is FamilyKind.CYCLE:
        cycle = find_induced_cycle(g, params[0], params[0])
        return mask_of(cycle) if cycle is not None else None
    raise ArgumentError(f"Unsupported induced pattern: {pattern}")


def is_chain_graph(g: Graph) -> bool:
    """Bipartite with no induced 2K2, i.e. bipartite and co-chordal."""
    return is_bipartite(g) is not None and _induced_2k2(g) is None


def perfect_matching_bipartite(g: Graph, b: Bipartition) -> Optional[EdgeSet]:
    """Augmenting-path matching from side_a into side_b; None unless it is perfect."""
    if not b.validate(g):
        raise ArgumentError("Bipartition is not valid for this graph")
    if popcount(b.side_a) != popcount(b.side_b):
        return None
    mate: Dict[int, int] = {}

    def augment(u: int, seen: int) -> Tuple[bool, int]:
        for w in iter_bits(g.adj[u] & ~seen):
            seen |= 1 << w
            if w not in mate:
                mate[w] = u
                return True, seen
            ok, seen = augment(mate[w], seen)
            if ok:
                mate[w] = u
                return True, seen
        return False, seen

    for u in iter_bits(b.side_a):
        ok, _ = augment(u, 0)
        if not ok:
            return None
    return EdgeSet.from_pairs(g.n, ((u, w) for w, u in mate.items()))


def matching_neighbourhoods_complete(g: Graph, m: EdgeSet) -> bool:
    """For each matching edge xy, every neighbour of x is adjacent to every neighbour of y."""
    for x, y in m:
        near_x = g.adj[x] & ~(1 << y)
        near_y = g.adj[y] & ~(1 << x)
        for a in iter_bits(near_x):
            if near_y & ~g.adj[a]:
                return False
    return True
