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
"""Graph sources: input streams, the small-graph atlas and seeded random generators."""
import logging
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from edge_regularity.core import Graph, GraphFamilySpec, make_family, whisker
from edge_regularity.formats import emit_graph6, parse_edge_list, read_graph6_stream
from edge_regularity.recognition import is_bipartite, is_well_covered

logger = logging.getLogger(__name__)

ATLAS_NMAX = 7
"""networkx ships every graph on up to 7 vertices, one per isomorphism class."""


def read_graphs(
    sources: Sequence[Tuple[str, bytes]], fmt: str = "graph6"
) -> Iterator[Tuple[str, Graph]]:
    """(graph_id, graph) pairs from named byte sources.

    graph6 sources hold one graph per line and ids are the graph6 strings; an
    edge-list source holds a single graph named after its source.
    """
    for name, data in sources:
        if fmt == "graph6":
            for _, g in read_graph6_stream(data):
                yield emit_graph6(g).decode(), g
        elif fmt == "edges":
            yield name, parse_edge_list(data.decode("utf-8"))
        else:
            raise ValueError(f"Unknown input format: {fmt}")


def load_sources(paths: Iterable[str], stdin: Optional[bytes] = None) -> List[Tuple[str, bytes]]:
    """Read each path; "-" stands for the given stdin bytes."""
    sources = []
    for path in paths:
        if path == "-":
            sources.append(("<stdin>", stdin or b""))
        else:
            sources.append((path, Path(path).read_bytes()))
    return sources


def family_graphs(names: Iterable[str]) -> Iterator[Tuple[str, Graph]]:
    for name in names:
        spec = GraphFamilySpec.parse(name)
        yield str(spec), make_family(spec)


def atlas_graphs(nmax: int = ATLAS_NMAX, with_empty: bool = False) -> Iterator[Tuple[str, Graph]]:
    """Every graph on at most nmax vertices up to isomorphism, in atlas order."""
    if nmax > ATLAS_NMAX:
        raise ValueError(f"The atlas stops at {ATLAS_NMAX} vertices, got nmax={nmax}")
    for index, graph in enumerate(nx.graph_atlas_g()):
        if graph.number_of_nodes() > nmax:
            break
        if graph.number_of_nodes() == 0 and not with_empty:
            continue
        yield f"atlas-{index}", Graph.from_networkx(graph)


def random_graph(rng: np.random.Generator, n: int, density: float = 0.5) -> Graph:
    upper = rng.random((n, n)) < density
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if upper[u, v]]
    return Graph.from_edges(n, edges)


def random_graphs(
    count: int, nmax: int, seed: int = 0, nmin: int = 1
) -> Iterator[Tuple[str, Graph]]:
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(nmin, nmax + 1))
        density = float(rng.uniform(0.2, 0.8))
        yield f"random-{seed}-{i}", random_graph(rng, n, density)


def random_edge_bipartition(rng: np.random.Generator, g: Graph) -> Tuple[Graph, Graph]:
    """Split E(g) at random into two graphs on the same vertex set."""
    edges = g.edges()
    sides = rng.integers(0, 2, size=len(edges))
    first = [e for e, side in zip(edges, sides) if side == 0]
    second = [e for e, side in zip(edges, sides) if side == 1]
    return g.spanning(first), g.spanning(second)


def random_bipartite_graph(rng: np.random.Generator, a: int, b: int, density: float) -> Graph:
    cross = rng.random((a, b)) < density
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b) if cross[i, j]])


def well_covered_bipartite_instances(
    count: int, nmax: int = 14, seed: int = 0
) -> Iterator[Tuple[str, Graph]]:
    """Well-covered bipartite graphs without isolated vertices.

    Uniform samples are rarely well-covered, so even draws whisker a random bipartite
    graph (always well-covered) and odd draws filter random balanced bipartite graphs.
    """
    rng = np.random.default_rng(seed)
    produced, attempts = 0, 0
    while produced < count:
        attempts += 1
        half = int(rng.integers(1, nmax // 2 + 1))
        if attempts % 2 == 0:
            a = int(rng.integers(0, half + 1))
            base = random_bipartite_graph(rng, a, half - a, float(rng.uniform(0.2, 0.8)))
            candidate = whisker(base)
        else:
            candidate = random_bipartite_graph(rng, half, half, float(rng.uniform(0.3, 0.9)))
            if candidate.isolated_mask() or not is_well_covered(candidate).verdict:
                continue
        if is_bipartite(candidate) is None:
            continue
        yield f"wcb-{seed}-{produced}", candidate
        produced += 1
    logger.debug("Generated %d well-covered bipartite graphs in %d attempts", count, attempts)
