from itertools import combinations, product

import networkx as nx
import pytest

from edge_regularity.core import CapacityError, complement, family, is_induced_matching, whisker
from edge_regularity.corpus import atlas_graphs
from edge_regularity.homology import FieldSpec, complex_regularity
from edge_regularity.invariants import (
    InvariantReport,
    chromatic_number,
    clique_cover,
    clique_number,
    cycle_matching_bound,
    independence_number,
    induced_matching_number,
    matching_number,
    min_maximal_matching,
)


def atlas(nmax=5):
    return [g for _, g in atlas_graphs(nmax)]


def brute_chromatic(g):
    for k in range(1, g.n + 1):
        for colours in product(range(k), repeat=g.n):
            if all(colours[u] != colours[v] for u, v in g.edges()):
                return k
    return 0


def is_matching(edges):
    ends = [v for e in edges for v in e]
    return len(ends) == len(set(ends))


def brute_min_maximal_matching(g):
    edges = g.edges()
    for size in range(len(edges) + 1):
        for chosen in combinations(edges, size):
            if not is_matching(chosen):
                continue
            covered = {v for e in chosen for v in e}
            if all(u in covered or v in covered for u, v in edges):
                return size
    return 0


def brute_indmatch(g):
    edges = g.edges()
    for size in range(len(edges), 0, -1):
        if any(is_induced_matching(g, c) for c in combinations(edges, size)):
            return size
    return 0


def test_clique_and_independence_numbers_agree_with_networkx():
    for g in atlas(6):
        omega = clique_number(g)
        alpha = independence_number(g)
        assert omega.value == nx.max_weight_clique(g.to_networkx(), weight=None)[1]
        assert alpha.value == nx.max_weight_clique(complement(g).to_networkx(), weight=None)[1]
        assert g.is_clique(omega.vertices) and g.is_independent(alpha.vertices)


def test_chromatic_number_matches_brute_force():
    for g in atlas():
        result = chromatic_number(g)
        assert result.value == brute_chromatic(g)
        assert len(result.blocks) == result.value
        assert all(g.is_independent(block) for block in result.blocks)
        assert sum(result.blocks) == g.full_mask


def test_matching_number_agrees_with_networkx():
    for g in atlas(6):
        result = matching_number(g)
        assert result.value == len(nx.max_weight_matching(g.to_networkx(), maxcardinality=True))
        assert result.edges.is_matching()
        assert all(g.has_edge(u, v) for u, v in result.edges)


def test_min_maximal_matching_matches_brute_force():
    for g in atlas():
        result = min_maximal_matching(g)
        assert result.value == brute_min_maximal_matching(g)
        covered = result.edges.vertex_mask
        assert all(covered >> u & 1 or covered >> v & 1 for u, v in g.edges())


def test_induced_matching_number_matches_brute_force():
    for g in atlas():
        result = induced_matching_number(g)
        assert result.value == brute_indmatch(g)
        assert is_induced_matching(g, result.edges)


@pytest.mark.parametrize("n", list(range(3, 13)), ids=[f"c{n}" for n in range(3, 13)])
def test_induced_matching_of_cycles(n):
    assert induced_matching_number(family(f"C{n}")).value == n // 3


def test_petersen_invariants():
    g = family("petersen")
    assert independence_number(g).value == 4
    assert clique_number(g).value == 2
    assert chromatic_number(g).value == 3
    assert matching_number(g).value == 5
    assert induced_matching_number(g).value == 3


@pytest.mark.parametrize(
    "name,value",
    [("C5", 3), ("K3", 1), ("E3", 3), ("C4", 2), ("petersen", 5)],
    ids=["pentagon", "triangle", "edgeless", "square", "petersen"],
)
def test_clique_cover(name, value):
    result = clique_cover(family(name))
    assert result.value == value
    assert all(family(name).is_clique(block) for block in result.blocks)


@pytest.mark.parametrize(
    "name,value",
    [("C5", 2), ("C8", 3), ("P5", 2), ("3K2", 3), ("K4", 1), ("E2", 0)],
    ids=["pentagon", "octagon", "path", "three_k2", "complete", "edgeless"],
)
def test_cycle_matching_bound(name, value):
    result = cycle_matching_bound(family(name))
    assert result.value == value
    masks = result.components
    assert all(not a & b for a, b in combinations(masks, 2))


def test_cycle_matching_bound_sits_between_indmatch_and_regularity():
    for g in atlas():
        bound = cycle_matching_bound(g).value
        assert induced_matching_number(g).value <= bound <= complex_regularity(g).value


def test_whisker_of_pentagon():
    g = whisker(family("C5"))
    assert induced_matching_number(g).value == 2
    assert cycle_matching_bound(g).value == 2


@pytest.mark.parametrize(
    "func,cap",
    [(clique_number, 7), (independence_number, 7), (chromatic_number, 7), (matching_number, 7)],
    ids=["omega", "alpha", "chi", "nu"],
)
def test_caps(func, cap):
    with pytest.raises(CapacityError):
        func(family("P8"), cap=cap)


def test_induced_matching_edge_cap():
    with pytest.raises(CapacityError):
        induced_matching_number(family("K5"), cap=9)


def test_invariant_report_chain_and_serialization():
    g = family("C5")
    report = InvariantReport("C5", alpha=2, indmatch=1, cochord=2, cochord_method="exact")
    assert report.chain_holds() is None
    report.regularity.append(complex_regularity(g, FieldSpec(2)))
    assert report.regularity_over(2) == 2
    assert report.regularity_over(3) is None
    assert report.chain_holds() is True
    report.timings["alpha"] = 1.23456
    data = report.to_dict()
    assert data["cochord"] == {"value": 2, "method": "exact"}
    assert data["chain_holds"] is True
    assert "timings" not in data and "omega" not in data
    assert report.to_dict(record_timings=True)["timings"] == {"alpha": 1.235}
    report.cochord_method = "upper_bound"
    assert report.chain_holds() is None
