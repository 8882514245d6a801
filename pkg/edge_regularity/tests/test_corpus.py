import numpy as np
import pytest

from edge_regularity.core import GraphParseError, family
from edge_regularity.corpus import (
    atlas_graphs,
    family_graphs,
    load_sources,
    random_edge_bipartition,
    random_graphs,
    read_graphs,
    well_covered_bipartite_instances,
)
from edge_regularity.recognition import is_bipartite, is_well_covered


@pytest.mark.parametrize(
    "nmax,count", [(1, 1), (3, 7), (4, 18), (5, 52)], ids=["n1", "n3", "n4", "n5"]
)
def test_atlas_counts(nmax, count):
    assert len(list(atlas_graphs(nmax))) == count


def test_atlas_limit():
    with pytest.raises(ValueError):
        list(atlas_graphs(8))
    assert next(atlas_graphs(2, with_empty=True))[1].n == 0


def test_read_graphs_graph6_ids():
    graphs = list(read_graphs([("in", b">>graph6<<\nDhc\n@\n")]))
    assert [graph_id for graph_id, _ in graphs] == ["Dhc", "@"]
    assert graphs[0][1] == family("C5")


def test_read_graphs_edge_list_ids():
    graphs = list(read_graphs([("square.txt", b"0 1\n1 2\n2 3\n3 0\n")], "edges"))
    assert graphs == [("square.txt", family("C4"))]


def test_read_graphs_reports_line_numbers():
    with pytest.raises(GraphParseError) as exc_info:
        list(read_graphs([("in", b"@\n@\nD?\n")]))
    assert exc_info.value.line == 3


def test_load_sources(tmp_path):
    path = tmp_path / "g.g6"
    path.write_bytes(b"A_\n")
    assert load_sources([str(path), "-"], b"@\n") == [(str(path), b"A_\n"), ("<stdin>", b"@\n")]


def test_family_graphs():
    assert [graph_id for graph_id, _ in family_graphs(["c5", "3k2"])] == ["C5", "3K2"]


def test_random_graphs_are_seeded():
    first = list(random_graphs(10, 8, seed=3))
    second = list(random_graphs(10, 8, seed=3))
    assert first == second
    assert all(1 <= g.n <= 8 for _, g in first)
    assert [graph_id for graph_id, _ in first][:2] == ["random-3-0", "random-3-1"]


def test_random_edge_bipartition_splits_edges():
    g = family("petersen")
    first, second = random_edge_bipartition(np.random.default_rng(0), g)
    assert first.n == second.n == g.n
    assert sorted(first.edges() + second.edges()) == g.edges()


def test_well_covered_bipartite_instances():
    graphs = list(well_covered_bipartite_instances(8, nmax=10, seed=1))
    assert len(graphs) == 8
    for _, g in graphs:
        assert is_bipartite(g) is not None
        assert g.isolated_mask() == 0
        assert is_well_covered(g).verdict
