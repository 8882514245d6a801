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
"""Independence complexes and their reduced homology over prime fields.

Regularity of a graph is read off induced subcomplexes: the largest i such that
some W has a nonzero reduced Betti number in dimension i - 1 for Ind(G[W]).
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np
from sympy import isprime

from edge_regularity.constants import DEFAULT_FACE_CAP, DEFAULT_VERTEX_CAP
from edge_regularity.core import (
    CapacityError,
    Graph,
    ParameterError,
    disjoint_union,
    induced_subgraph,
    iter_bits,
    popcount,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p)."""

    p: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not 2 <= self.p <= 2**31 or not isprime(self.p):
            raise ParameterError(f"Field modulus must be a prime in [2, 2^31], got {self.p!r}")

    def __str__(self) -> str:
        return f"GF({self.p})"


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex on vertices 0..n-1 stored as vertex bitmasks.

    faces[k] holds the faces with k vertices (dimension k - 1), sorted by mask;
    faces[0] is always (0,), the empty face.
    """

    n: int
    faces: Tuple[Tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.faces) - 2

    @property
    def face_count(self) -> int:
        return sum(len(level) for level in self.faces)

    def faces_of_dim(self, d: int) -> Tuple[int, ...]:
        if d + 1 < 0 or d + 1 >= len(self.faces):
            return ()
        return self.faces[d + 1]

    def is_closed(self) -> bool:
        """Every face minus one vertex is again a face."""
        members = [frozenset(level) for level in self.faces]
        for k in range(1, len(self.faces)):
            for face in self.faces[k]:
                if any(face & ~(1 << v) not in members[k - 1] for v in iter_bits(face)):
                    return False
        return True


@dataclass(frozen=True)
class BettiVector:
    field: FieldSpec
    betti: Tuple[int, ...]
    """(b_{-1}, b_0, b_1, ...): betti[i] is the reduced Betti number in dimension i - 1."""

    def nonzero_degrees(self) -> FrozenSet[int]:
        """Degrees i with a nonzero reduced Betti number in dimension i - 1."""
        return frozenset(i for i, b in enumerate(self.betti) if b)

    def euler_characteristic(self) -> int:
        return sum(b if i % 2 else -b for i, b in enumerate(self.betti))


@dataclass(frozen=True)
class RegularityResult:
    field: FieldSpec
    value: int
    witness: int
    """Vertex mask W whose independence complex carries the nonzero homology."""
    degree: int
    """Homological degree i, equal to value; the homology sits in dimension i - 1."""

    def validate(self, g: Graph, face_cap: int = DEFAULT_FACE_CAP) -> bool:
        """Recompute the witness homology directly, without component splitting."""
        if self.degree != self.value:
            return False
        sub = induced_subgraph(g, self.witness)
        betti = reduced_betti(independence_complex(sub, face_cap), self.field).betti
        return self.degree < len(betti) and betti[self.degree] != 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "field": self.field.p,
            "value": self.value,
            "witness": [v for v in iter_bits(self.witness)],
            "degree": self.degree,
        }


@dataclass(frozen=True)
class FieldComparison:
    results: List[RegularityResult]
    consistent: bool


def independence_complex(g: Graph, face_cap: int = DEFAULT_FACE_CAP) -> SimplicialComplex:
    """All independent sets of g, built level by level."""
    levels: List[List[int]] = [[0]]
    frontier: List[Tuple[int, int]] = [(0, g.full_mask)]
    count = 1
    while frontier:
        next_frontier = []
        for face, candidates in frontier:
            for v in iter_bits(candidates):
                higher = candidates & ~((1 << (v + 1)) - 1)
                next_frontier.append((face | 1 << v, higher & ~g.adj[v]))
        if not next_frontier:
            break
        count += len(next_frontier)
        if count > face_cap:
            raise CapacityError(
                f"Independence complex exceeds the face cap of {face_cap} (reached {count})",
                limit=face_cap,
                reached=count,
            )
        levels.append(sorted(face for face, _ in next_frontier))
        frontier = next_frontier
    return SimplicialComplex(g.n, tuple(tuple(level) for level in levels))


def induced_subcomplex(c: SimplicialComplex, w: int) -> SimplicialComplex:
    """Faces of c contained in w."""
    levels = [tuple(f for f in level if not f & ~w) for level in c.faces]
    while len(levels) > 1 and not levels[-1]:
        levels.pop()
    return SimplicialComplex(c.n, tuple(levels))


def _sign(face: int, v: int) -> int:
    # position of v among the vertices of face, counted from the smallest
    return -1 if popcount(face & ((1 << v) - 1)) % 2 else 1


def boundary_matrix(c: SimplicialComplex, k: int, f: FieldSpec) -> np.ndarray:
    """Dense matrix of the boundary map from faces with k vertices to faces with k - 1.

    k = 1 is the augmentation onto the empty face. Entries are reduced mod p.
    """
    if k < 1 or k >= len(c.faces):
        rows = len(c.faces[k - 1]) if 0 <= k - 1 < len(c.faces) else 0
        cols = len(c.faces[k]) if 0 <= k < len(c.faces) else 0
        return np.zeros((rows, cols), dtype=np.int64)
    index = {face: i for i, face in enumerate(c.faces[k - 1])}
    matrix = np.zeros((len(c.faces[k - 1]), len(c.faces[k])), dtype=np.int64)
    for j, face in enumerate(c.faces[k]):
        for v in iter_bits(face):
            matrix[index[face & ~(1 << v)], j] = _sign(face, v) % f.p
    return matrix


def _rank_gf2(c: SimplicialComplex, k: int) -> int:
    """Rank over GF(2) with each column packed into an int, eliminated on its top bit."""
    index = {face: i for i, face in enumerate(c.faces[k - 1])}
    pivots: Dict[int, int] = {}
    for face in c.faces[k]:
        column = 0
        for v in iter_bits(face):
            column |= 1 << index[face & ~(1 << v)]
        while column:
            top = column.bit_length() - 1
            if top not in pivots:
                pivots[top] = column
                break
            column ^= pivots[top]
    return len(pivots)


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Row reduction mod an odd prime p < 2^31; products stay inside int64."""
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nonzero = np.nonzero(a[rank:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, col]), p - 2, p)) % p
        below = np.nonzero(a[rank + 1 :, col])[0] + rank + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, col], a[rank]) % p) % p
        rank += 1
    return rank


def boundary_rank(c: SimplicialComplex, k: int, f: FieldSpec) -> int:
    if k < 1 or k >= len(c.faces):
        return 0
    if f.p == 2:
        return _rank_gf2(c, k)
    return rank_mod_p(boundary_matrix(c, k, f), f.p)


def reduced_betti(c: SimplicialComplex, f: FieldSpec = FieldSpec()) -> BettiVector:
    ranks = [boundary_rank(c, k, f) for k in range(len(c.faces) + 1)]
    betti = tuple(len(c.faces[k]) - ranks[k] - ranks[k + 1] for k in range(len(c.faces)))
    return BettiVector(f, betti)


def reduced_euler_characteristic(c: SimplicialComplex) -> int:
    """Alternating face count, with the empty face in dimension -1."""
    return sum(len(level) if k % 2 else -len(level) for k, level in enumerate(c.faces))


def _sumset(parts: Sequence[FrozenSet[int]]) -> FrozenSet[int]:
    total = frozenset([0])
    for part in parts:
        total = frozenset(a + b for a in total for b in part)
    return total


def subset_degrees(
    g: Graph,
    f: FieldSpec = FieldSpec(),
    face_cap: int = DEFAULT_FACE_CAP,
    split_components: bool = True,
) -> List[FrozenSet[int]]:
    """For every vertex mask W, the degrees i with nonzero homology of Ind(G[W]) in dimension i - 1.

    An isolated vertex makes Ind(G[W]) a cone, so its entry is empty. A disconnected
    G[W] is a join of the components' complexes and takes the sumset of their degrees.
    """
    degrees: List[FrozenSet[int]] = [frozenset()] * (1 << g.n)
    degrees[0] = frozenset([0])
    computed = 0
    for size in range(1, g.n + 1):
        for combo in combinations(range(g.n), size):
            w = sum(1 << v for v in combo)
            if g.isolated_mask(w):
                continue
            parts = g.components(w)
            if split_components and len(parts) > 1:
                degrees[w] = _sumset([degrees[part] for part in parts])
                continue
            sub = induced_subgraph(g, w)
            degrees[w] = reduced_betti(independence_complex(sub, face_cap), f).nonzero_degrees()
            computed += 1
    logger.debug("Computed homology of %d induced complexes of %s over %s", computed, g, f)
    return degrees


def complex_regularity(
    g: Graph,
    f: FieldSpec = FieldSpec(),
    vertex_cap: int = DEFAULT_VERTEX_CAP,
    face_cap: int = DEFAULT_FACE_CAP,
    split_components: bool = True,
) -> RegularityResult:
    """Largest degree over all induced subcomplexes; ties go to the smallest witness mask."""
    if g.n > vertex_cap:
        raise CapacityError(
            f"Regularity scan is limited to {vertex_cap} vertices, got {g.n}",
            limit=vertex_cap,
            reached=g.n,
        )
    degrees = subset_degrees(g, f, face_cap, split_components)
    value, witness = 0, 0
    for w, found in enumerate(degrees):
        if found and max(found) > value:
            value, witness = max(found), w
    return RegularityResult(f, value, witness, value)


def regularity_multi_field(
    g: Graph,
    primes: Sequence[FieldSpec],
    vertex_cap: int = DEFAULT_VERTEX_CAP,
    face_cap: int = DEFAULT_FACE_CAP,
) -> FieldComparison:
    results = [complex_regularity(g, f, vertex_cap, face_cap) for f in primes]
    consistent = len({r.value for r in results}) <= 1
    if not consistent:
        logger.warning(
            "Field dependence for %s: %s",
            g,
            ", ".join(f"{r.field}={r.value}" for r in results),
        )
    return FieldComparison(results, consistent)


def join_regularity_check(
    g1: Graph,
    g2: Graph,
    f: FieldSpec = FieldSpec(),
    vertex_cap: int = DEFAULT_VERTEX_CAP,
    face_cap: int = DEFAULT_FACE_CAP,
) -> bool:
    """Additivity over disjoint unions, with the union scanned without component splitting."""
    union = disjoint_union(g1, g2)
    whole = complex_regularity(union, f, vertex_cap, face_cap, split_components=False)
    parts = (
        complex_regularity(g1, f, vertex_cap, face_cap).value
        + complex_regularity(g2, f, vertex_cap, face_cap).value
    )
    return whole.value == parts
