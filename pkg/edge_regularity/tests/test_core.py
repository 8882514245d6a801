import networkx as nx
import pytest

from edge_regularity.core import (
    ArgumentError,
    CapacityError,
    EdgeSet,
    FamilyKind,
    Graph,
    GraphFamilySpec,
    ParameterError,
    complement,
    disjoint_union,
    edge_conflict_graph,
    family,
    induced_subgraph,
    is_induced_matching,
    iter_bits,
    mask_of,
    matching_conflict_graph,
    pendant_attachment,
    popcount,
    whisker,
)
from edge_regularity.corpus import atlas_graphs


def test_bit_helpers():
    assert list(iter_bits(0b101001)) == [0, 3, 5]
    assert popcount(0b101001) == 3
    assert mask_of([0, 3, 5]) == 0b101001
    assert list(iter_bits(0)) == []


@pytest.mark.parametrize(
    "name,kind,params,n,m",
    [
        ("P4", FamilyKind.PATH, (4,), 4, 3),
        ("C5", FamilyKind.CYCLE, (5,), 5, 5),
        ("K4", FamilyKind.COMPLETE, (4,), 4, 6),
        ("3K2", FamilyKind.MATCHING, (3,), 6, 3),
        ("K2,3", FamilyKind.COMPLETE_BIPARTITE, (2, 3), 5, 6),
        ("petersen", FamilyKind.PETERSEN, (), 10, 15),
        ("claw", FamilyKind.CLAW, (), 4, 3),
        ("E3", FamilyKind.EDGELESS, (3,), 3, 0),
    ],
    ids=[
        "path",
        "cycle",
        "complete",
        "matching",
        "complete_bipartite",
        "petersen",
        "claw",
        "edgeless",
    ],
)
def test_family_parse_and_build(name, kind, params, n, m):
    spec = GraphFamilySpec.parse(name)
    assert spec.kind is kind
    assert spec.params == params
    g = family(name)
    assert (g.n, g.edge_count) == (n, m)
    assert str(spec).lower() == name.lower()


@pytest.mark.parametrize(
    "name,error",
    [
        ("C2", ParameterError),
        ("P0", ParameterError),
        ("X5", ParameterError),
        ("K65", CapacityError),
    ],
    ids=["short_cycle", "empty_path", "unknown", "too_large"],
)
def test_family_rejects(name, error):
    with pytest.raises(error):
        family(name)


def test_petersen_matches_networkx():
    assert nx.is_isomorphic(family("petersen").to_networkx(), nx.petersen_graph())


@pytest.mark.parametrize(
    "n,rows,error",
    [
        (2, (0b10, 0b00), ArgumentError),
        (1, (0b1,), ArgumentError),
        (2, (0b10,), ArgumentError),
        (65, (0,) * 65, CapacityError),
    ],
    ids=["asymmetric", "loop", "row_count", "too_many_vertices"],
)
def test_graph_validation(n, rows, error):
    with pytest.raises(error):
        Graph(n, rows)


def test_from_edges_rejects_loops_and_range():
    with pytest.raises(ArgumentError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ArgumentError):
        Graph.from_edges(3, [(0, 3)])


def test_labels_do_not_affect_equality():
    plain = family("P3")
    named = Graph.from_edges(3, [(0, 1), (1, 2)], labels=["a", "b", "c"])
    assert plain == named
    assert named.label(2) == "c"


def test_edges_and_components():
    g = disjoint_union(family("P3"), family("K2"))
    assert g.edges() == [(0, 1), (1, 2), (3, 4)]
    assert g.components() == [0b00111, 0b11000]
    assert g.isolated_mask(0b00101) == 0b00101
    assert g.is_independent(0b01101)
    assert g.is_independent(0b00011) is False
    assert g.is_clique(0b11000)


def test_complement_is_involution():
    g = family("C5")
    assert complement(g) != g
    assert nx.is_isomorphic(complement(g).to_networkx(), g.to_networkx())
    assert complement(complement(g)) == g


def test_induced_subgraph_relabels():
    h = induced_subgraph(family("C6"), mask_of([0, 1, 2, 4]))
    assert h.n == 4
    assert h.edges() == [(0, 1), (1, 2)]
    with pytest.raises(ArgumentError):
        induced_subgraph(family("P3"), 0b1000)


def test_whisker_and_pendants():
    w = whisker(family("C5"))
    assert w.n == 10
    assert w.edge_count == 10
    assert all(w.degree(5 + i) == 1 and w.has_edge(i, 5 + i) for i in range(5))
    p = pendant_attachment(family("C6"), [3, 0, 3])
    assert p.n == 8
    assert p.has_edge(0, 6) and p.has_edge(3, 7)


def test_edge_set_normalizes():
    s = EdgeSet.from_pairs(4, [(1, 0), (0, 1), (3, 2)])
    assert list(s) == [(0, 1), (2, 3)]
    assert s.is_matching()
    assert not EdgeSet.from_pairs(4, [(0, 1), (1, 2)]).is_matching()
    with pytest.raises(ArgumentError):
        EdgeSet.from_pairs(3, [(0, 3)])


@pytest.mark.parametrize(
    "name,expected_edges",
    [("C5", 10), ("3K2", 0), ("C6", 12), ("P4", 3)],
    ids=["c5_is_complete", "matching_is_edgeless", "c6", "p4"],
)
def test_edge_conflict_graph(name, expected_edges):
    g = family(name)
    conflict = edge_conflict_graph(g)
    assert conflict.n == g.edge_count
    assert conflict.edge_count == expected_edges


def test_matching_conflict_graph_of_c6():
    g = family("C6")
    alternate = EdgeSet.from_pairs(6, [(0, 1), (2, 3), (4, 5)])
    conflict = matching_conflict_graph(g, alternate)
    assert conflict == family("K3")
    with pytest.raises(ArgumentError):
        matching_conflict_graph(g, EdgeSet.from_pairs(6, [(0, 2)]))
    with pytest.raises(ArgumentError):
        matching_conflict_graph(g, EdgeSet.from_pairs(6, [(0, 1), (1, 2)]))


@pytest.mark.parametrize(
    "name,edges,expected",
    [
        ("C6", [(0, 1), (3, 4)], True),
        ("C6", [(0, 1), (2, 3)], False),
        ("3K2", [(0, 1), (2, 3), (4, 5)], True),
        ("P4", [(0, 1), (1, 2)], False),
    ],
    ids=["opposite_edges", "adjacent_edges", "matching_graph", "not_a_matching"],
)
def test_is_induced_matching(name, edges, expected):
    assert is_induced_matching(family(name), edges) is expected


@pytest.mark.slow
def test_independent_sets_of_edge_conflict_graph_are_induced_matchings():
    for graph_id, g in atlas_graphs(5):
        edges = g.edges()
        conflict = edge_conflict_graph(g)
        for mask in range(1 << len(edges)):
            chosen = [edges[i] for i in iter_bits(mask)]
            assert conflict.is_independent(mask) == is_induced_matching(g, chosen), (graph_id, mask)
