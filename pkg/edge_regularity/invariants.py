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
"""Exact invariants of small graphs, each returned with a witness."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

from edge_regularity.constants import (
    CHROMATIC_CAP,
    CYCLE_BOUND_CAP,
    INDEPENDENCE_CAP,
    INDMATCH_EDGE_CAP,
    MATCHING_CAP,
    MIN_MAXIMAL_MATCHING_CAP,
)
from edge_regularity.core import (
    CapacityError,
    EdgeSet,
    Graph,
    InvariantViolation,
    complement,
    edge_conflict_graph,
    is_induced_matching,
    iter_bits,
    popcount,
)
from edge_regularity.homology import RegularityResult
from edge_regularity.recognition import is_bipartite, iter_induced_cycles

logger = logging.getLogger(__name__)


class VertexSet(NamedTuple):
    value: int
    vertices: int


class Partition(NamedTuple):
    value: int
    blocks: Tuple[int, ...]


class Matching(NamedTuple):
    value: int
    edges: EdgeSet


class Packing(NamedTuple):
    value: int
    components: Tuple[int, ...]
    """Vertex masks of the packed induced edges and cycles."""


@dataclass
class InvariantReport:
    """Invariants gathered for one graph; absent values were not requested or did not finish."""

    graph_id: str
    alpha: Optional[int] = None
    omega: Optional[int] = None
    chi: Optional[int] = None
    nu: Optional[int] = None
    min_maximal_matching: Optional[int] = None
    indmatch: Optional[int] = None
    cycle_matching_bound: Optional[int] = None
    cochord: Optional[int] = None
    cochord_method: Optional[str] = None
    """exact or upper_bound"""
    regularity: List[RegularityResult] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    errors: Dict[str, str] = field(default_factory=dict)

    def regularity_over(self, p: int) -> Optional[int]:
        for result in self.regularity:
            if result.field.p == p:
                return result.value
        return None

    def chain_holds(self) -> Optional[bool]:
        """indmatch <= reg over GF(2) <= cochord, or None when a term is missing."""
        reg = self.regularity_over(2)
        if self.indmatch is None or reg is None or self.cochord is None:
            return None
        if self.cochord_method != "exact":
            return None
        return self.indmatch <= reg <= self.cochord

    def to_dict(self, record_timings: bool = False) -> Dict[str, object]:
        data: Dict[str, object] = {"graph_id": self.graph_id}
        for name in (
            "alpha",
            "omega",
            "chi",
            "nu",
            "min_maximal_matching",
            "indmatch",
            "cycle_matching_bound",
        ):
            value = getattr(self, name)
            if value is not None:
                data[name] = value
        if self.cochord is not None:
            data["cochord"] = {"value": self.cochord, "method": self.cochord_method}
        if self.regularity:
            data["regularity"] = [r.to_dict() for r in self.regularity]
        chain = self.chain_holds()
        if chain is not None:
            data["chain_holds"] = chain
        if self.errors:
            data["errors"] = dict(sorted(self.errors.items()))
        if record_timings and self.timings:
            data["timings"] = {k: round(v, 3) for k, v in sorted(self.timings.items())}
        return data


def _check_cap(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise CapacityError(f"{what} is limited to {cap}, got {size}", limit=cap, reached=size)


def _colour_order(g: Graph, p: int) -> List[Tuple[int, int]]:
    """Greedy colour classes over p as (vertex, colour) pairs with ascending colours."""
    order = []
    uncoloured = p
    colour = 0
    while uncoloured:
        colour += 1
        q = uncoloured
        while q:
            v = (q & -q).bit_length() - 1
            uncoloured &= ~(1 << v)
            q &= ~g.adj[v] & ~(1 << v)
            order.append((v, colour))
    return order


def _maximum_clique(g: Graph) -> int:
    """Branch and bound with a greedy colouring bound, as in MCQ."""
    best = 0

    def expand(r: int, size: int, p: int) -> None:
        nonlocal best
        best_size = popcount(best)
        for v, colour in reversed(_colour_order(g, p)):
            if size + colour <= best_size:
                return
            candidates = p & g.adj[v]
            if candidates:
                expand(r | 1 << v, size + 1, candidates)
                best_size = popcount(best)
            elif size + 1 > best_size:
                best = r | 1 << v
                best_size = size + 1
            p &= ~(1 << v)

    expand(0, 0, g.full_mask)
    return best


def clique_number(g: Graph, cap: int = INDEPENDENCE_CAP) -> VertexSet:
    _check_cap("Clique search", g.n, cap)
    clique = _maximum_clique(g)
    return VertexSet(popcount(clique), clique)


def independence_number(g: Graph, cap: int = INDEPENDENCE_CAP) -> VertexSet:
    """Maximum clique of the complement."""
    _check_cap("Independent set search", g.n, cap)
    independent = _maximum_clique(complement(g))
    return VertexSet(popcount(independent), independent)


def _colour_with(g: Graph, order: List[int], k: int) -> Optional[List[int]]:
    classes = [0] * k

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(min(used + 1, k)):
            if not classes[c] & g.adj[v]:
                classes[c] |= 1 << v
                if place(i + 1, max(used, c + 1)):
                    return True
                classes[c] &= ~(1 << v)
        return False

    return classes if place(0, 0) else None


def chromatic_number(g: Graph, cap: int = CHROMATIC_CAP) -> Partition:
    """Iterative deepening from the clique number; colour classes are the witness."""
    _check_cap("Exact colouring", g.n, cap)
    if g.n == 0:
        return Partition(0, ())
    greedy: Dict[int, int] = {}
    for v, colour in _colour_order(g, g.full_mask):
        greedy[colour] = greedy.get(colour, 0) | 1 << v
    upper = len(greedy)
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for k in range(popcount(_maximum_clique(g)), upper):
        classes = _colour_with(g, order, k)
        if classes is not None:
            return Partition(k, tuple(c for c in classes if c))
    return Partition(upper, tuple(greedy[c] for c in sorted(greedy)))


def clique_cover(g: Graph, cap: int = CHROMATIC_CAP) -> Partition:
    """Fewest cliques partitioning the vertices: a colouring of the complement."""
    return chromatic_number(complement(g), cap)


def _bipartite_matching(g: Graph, side: int) -> Dict[int, int]:
    mate: Dict[int, int] = {}

    def augment(u: int, seen: List[int]) -> bool:
        for w in iter_bits(g.adj[u] & ~seen[0]):
            seen[0] |= 1 << w
            if w not in mate or augment(mate[w], seen):
                mate[w] = u
                return True
        return False

    for u in iter_bits(side):
        augment(u, [0])
    return mate


def matching_number(g: Graph, cap: int = MATCHING_CAP) -> Matching:
    """Augmenting paths on bipartite graphs, branch and bound otherwise."""
    _check_cap("Maximum matching", g.n, cap)
    sides = is_bipartite(g)
    if sides is not None:
        mate = _bipartite_matching(g, sides.side_a)
        edges = EdgeSet.from_pairs(g.n, ((u, w) for w, u in mate.items()))
        return Matching(len(edges), edges)

    best: List[Tuple[int, int]] = []

    def search(remaining: int, chosen: List[Tuple[int, int]]) -> None:
        nonlocal best
        live = remaining & ~g.isolated_mask(remaining)
        if len(chosen) + popcount(live) // 2 <= len(best):
            return
        if not live:
            best = list(chosen)
            return
        v = (live & -live).bit_length() - 1
        for w in iter_bits(g.adj[v] & live):
            chosen.append((v, w))
            search(live & ~(1 << v | 1 << w), chosen)
            chosen.pop()
        search(live & ~(1 << v), chosen)

    search(g.full_mask, [])
    edges = EdgeSet.from_pairs(g.n, best)
    return Matching(len(edges), edges)


def min_maximal_matching(g: Graph, cap: int = MIN_MAXIMAL_MATCHING_CAP) -> Matching:
    """Iterative deepening; every maximal matching covers an end of the first uncovered edge."""
    _check_cap("Minimum maximal matching", g.n, cap)
    edges = g.edges()

    def first_free(covered: int) -> Optional[Tuple[int, int]]:
        for u, v in edges:
            if not covered & (1 << u | 1 << v):
                return u, v
        return None

    def search(covered: int, chosen: List[Tuple[int, int]], budget: int) -> bool:
        free = first_free(covered)
        if free is None:
            return True
        if budget == 0:
            return False
        u, v = free
        options = [(u, v)]
        options += [(u, w) for w in iter_bits(g.adj[u] & ~covered) if w != v]
        options += [(v, w) for w in iter_bits(g.adj[v] & ~covered) if w != u]
        for a, b in options:
            chosen.append((a, b))
            if search(covered | 1 << a | 1 << b, chosen, budget - 1):
                return True
            chosen.pop()
        return False

    k = 0
    while True:
        chosen: List[Tuple[int, int]] = []
        if search(0, chosen, k):
            witness = EdgeSet.from_pairs(g.n, chosen)
            return Matching(len(witness), witness)
        k += 1


def induced_matching_number(g: Graph, cap: int = INDMATCH_EDGE_CAP) -> Matching:
    """Independence number of G*, mapped back to edges of g."""
    edges = g.edges()
    _check_cap("Induced matching search over edges", len(edges), cap)
    chosen = independence_number(edge_conflict_graph(g), cap=max(cap, len(edges))).vertices
    witness = EdgeSet.from_pairs(g.n, (edges[i] for i in iter_bits(chosen)))
    if not is_induced_matching(g, witness):
        raise InvariantViolation(f"Independent set of G* is not an induced matching: {witness}")
    return Matching(len(witness), witness)


def _packing_pieces(g: Graph) -> Dict[int, List[Tuple[int, int]]]:
    """Per lowest vertex, the (mask, weight) of induced edges and induced C_{3i+2} for i >= 1."""
    pieces: Dict[int, set] = {v: set() for v in range(g.n)}
    for u, v in g.edges():
        pieces[u].add((1 << u | 1 << v, 1))
    for cycle in iter_induced_cycles(g, 5):
        if len(cycle) % 3 == 2:
            mask = sum(1 << v for v in cycle)
            pieces[min(cycle)].add((mask, (len(cycle) + 1) // 3))
    return {v: sorted(found) for v, found in pieces.items()}


def cycle_matching_bound(g: Graph, cap: int = CYCLE_BOUND_CAP) -> Packing:
    """Heaviest induced subgraph made of edges (weight 1) and cycles C_{3i+2} (weight i + 1).

    Components must be pairwise non-adjacent, so the weight is the regularity
    of the induced subgraph and bounds reg(G) from below.
    """
    _check_cap("Cycle matching bound", g.n, cap)
    pieces = _packing_pieces(g)
    closed = [g.adj[v] | 1 << v for v in range(g.n)]
    memo: Dict[int, Tuple[int, Tuple[int, ...]]] = {}

    def best(remaining: int) -> Tuple[int, Tuple[int, ...]]:
        if remaining in memo:
            return memo[remaining]
        if not remaining:
            return 0, ()
        v = (remaining & -remaining).bit_length() - 1
        result = best(remaining & ~(1 << v))
        for mask, weight in pieces[v]:
            if mask & ~remaining:
                continue
            blocked = 0
            for u in iter_bits(mask):
                blocked |= closed[u]
            value, used = best(remaining & ~blocked)
            if value + weight > result[0]:
                result = (value + weight, (mask,) + used)
        memo[remaining] = result
        return result

    value, components = best(g.full_mask)
    return Packing(value, tuple(sorted(components)))
