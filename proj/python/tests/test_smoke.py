import math
import random

import pytest

import citenet


def chain(k):
    nodes = [(f"n{i}", float(i)) for i in range(k)]
    edges = [(f"n{i + 1}", f"n{i}") for i in range(k - 1)]
    graph, _ = citenet.build_graph(nodes, edges)
    return graph


def test_build_reports_dropped_edges():
    graph, report = citenet.build_graph([("A", 0), ("B", 1)], [("B", "A"), ("A", "B")])
    assert len(graph) == 2
    assert graph.edge_count == 1
    assert report["edges_acausal_dropped"] == 1
    assert report["acausal_fraction"] == 0.5
    assert graph.edges() == [("B", "A")]
    assert "A" in graph and "Z" not in graph


def test_queries_and_errors():
    graph = chain(3)
    assert sorted(citenet.descendants(graph, "n2")) == ["n0", "n1"]
    assert sorted(citenet.ancestors(graph, "n0")) == ["n1", "n2"]
    assert citenet.citation_count(graph, "n2") == 0
    assert citenet.degree_distribution(graph, "in") == {0: 1, 1: 2}
    with pytest.raises(citenet.UnknownNodeError):
        citenet.descendants(graph, "missing")
    with pytest.raises(citenet.DataError):
        citenet.citation_count(graph, "missing")
    with pytest.raises(citenet.Error):
        citenet.build_graph([("A", math.nan)], [])


def test_reduction_matches_networkx():
    nx = pytest.importorskip("networkx")
    rng = random.Random(4)
    n = 60
    nodes = [(f"v{i}", float(i)) for i in range(n)]
    edges = [(f"v{i}", f"v{j}") for i in range(n) for j in range(i) if rng.random() < 0.15]
    graph, _ = citenet.build_graph(nodes, edges)
    reduced = citenet.transitive_reduction(graph, chunk_size=64)

    reference = nx.transitive_reduction(nx.DiGraph(edges))
    assert sorted(reduced.edges()) == sorted(reference.edges())

    closure = citenet.transitive_closure(graph)
    reference_closure = nx.transitive_closure_dag(nx.DiGraph(edges))
    assert sorted(closure.edges()) == sorted(reference_closure.edges())

    with pytest.raises(citenet.ResourceError):
        citenet.transitive_closure(graph, edge_budget=10)


def test_report_and_ranking():
    graph, _ = citenet.build_graph(
        [("A", 2), ("B", 1), ("C", 0)], [("A", "B"), ("B", "C"), ("A", "C")]
    )
    report = citenet.tr_report(graph)
    assert report["edges_before"] == 3
    assert report["edges_after"] == 2
    assert report["edge_loss_fraction"] == pytest.approx(1 / 3)
    assert citenet.post_tr_ranking(graph, top_k=1) == [("C", 2, 1)]


def test_interval_and_midpoint():
    graph = chain(5)
    summary = citenet.interval(graph, "n4", "n0")
    assert summary["N"] == 3
    assert summary["P"] == 3
    assert citenet.find_midpoint(graph, "n4", "n0") == ("n2", 1, 1)
    with pytest.raises(citenet.UsageError):
        citenet.interval(graph, "n1", "n1")


def test_dimension_formulas():
    assert citenet.mm_ordering_fraction(2) == pytest.approx(0.25)
    assert citenet.mm_dimension_from_fraction(4 / 35) == pytest.approx(3, abs=1e-5)
    assert citenet.mm_dimension(4, 4) == pytest.approx(2, abs=1e-5)
    assert citenet.box_counting_dimension(16, 4) == pytest.approx(2)
    assert citenet.box_space_dimension(11, 55) == pytest.approx(1)
    with pytest.raises(citenet.EstimateError):
        citenet.mm_dimension(10, 0)


def test_sprinkle_and_field_estimate():
    graph = citenet.sprinkle("minkowski", dim=2, n=2000, seed=7)
    assert len(graph) == 2000
    ratio = graph.edge_count / 2000**2
    assert 0.23 <= ratio <= 0.27
    report = citenet.estimate_field_dimension(graph, method="mm", num_pairs=50, seed=1)
    assert report["num_pairs_accepted"] == 50
    assert 1.8 <= report["median"] <= 2.2
    again = citenet.estimate_field_dimension(graph, method="mm", num_pairs=50, seed=1, threads=1)
    assert again["estimates"] == report["estimates"]


def test_load_graph(tmp_path):
    (tmp_path / "nodes.tsv").write_text("a\t2000-01-01\nb\t2000-01-02\n")
    (tmp_path / "edges.tsv").write_text("b\ta\n")
    graph, report = citenet.load_graph(str(tmp_path / "nodes.tsv"), str(tmp_path / "edges.tsv"))
    assert report["edges_accepted"] == 1
    assert graph.time("b") - graph.time("a") == 1
