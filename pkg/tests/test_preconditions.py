"""Precondition and error-path checks across the package surface."""

import math

import pytest

from goimll.errors import NonTotalError
from goimll.graphs import (
    SimpleGraph,
    WeightedGraph,
    alternating_paths,
    graph_equal,
    graph_power,
    one_circuits,
    reduce_truncated,
)
from goimll.matrix import adjacency_matrix, check_matrix_adjunction, trace_series_partial
from goimll.measure import measure_truncated
from goimll.projects import Project


def test_edge_weight_must_be_positive():
    with pytest.raises(ValueError):
        WeightedGraph.build([1], [(1, 1, 0.0)])
    with pytest.raises(ValueError):
        WeightedGraph.build([1], [(1, 1, -0.5)])
    with pytest.raises(ValueError):
        WeightedGraph.build([1], [(1, 1, math.inf)])


def test_edge_endpoints_must_lie_in_vertex_set():
    with pytest.raises(ValueError):
        WeightedGraph.build([1], [(1, 2, 0.5)])


def test_simple_graph_rejects_nonpositive_weights():
    with pytest.raises(ValueError):
        SimpleGraph([1], {(1, 1): 0.0})


def test_graph_equal_rejects_negative_tolerance(four_cycle):
    with pytest.raises(ValueError):
        graph_equal(four_cycle, four_cycle, tol=-1.0)


def test_graph_power_requires_positive_exponent():
    with pytest.raises(ValueError):
        graph_power(SimpleGraph([1], {(1, 1): 0.5}), 0)


def test_enumeration_length_preconditions(four_cycle, loop_pair):
    with pytest.raises(ValueError):
        alternating_paths(four_cycle, loop_pair, {1}, {1}, 0)
    with pytest.raises(ValueError):
        reduce_truncated(four_cycle, loop_pair, 0)
    for bad in (0, 1, 3):
        with pytest.raises(ValueError):
            one_circuits(four_cycle, loop_pair, bad)
        with pytest.raises(ValueError):
            measure_truncated(four_cycle, loop_pair, bad)


def test_trace_series_requires_positive_k():
    with pytest.raises(ValueError):
        trace_series_partial(adjacency_matrix(SimpleGraph([1], {(1, 1): 0.5})), 0)


def test_wager_must_be_finite_nonnegative():
    g = WeightedGraph.empty([1])
    with pytest.raises(ValueError):
        Project(-0.1, g)
    with pytest.raises(ValueError):
        Project(math.inf, g)


def test_adjacency_requires_containment():
    s = SimpleGraph([5], {(5, 5): 0.5})
    with pytest.raises(ValueError):
        adjacency_matrix(s, (1, 2))


def test_matrix_adjunction_preconditions():
    f = SimpleGraph([1, 2], {(1, 2): 0.5, (2, 1): 0.5})
    g1 = SimpleGraph([1], {(1, 1): 0.5})
    overlap = SimpleGraph([1], {(1, 1): 0.25})
    with pytest.raises(ValueError):
        check_matrix_adjunction(f, g1, overlap)
    too_small = SimpleGraph([], {})
    with pytest.raises(ValueError):
        check_matrix_adjunction(SimpleGraph([1, 2, 3], {}), g1, too_small)


def test_matrix_adjunction_infinite_first_term():
    # the first cut is already singular: feedback_solve must refuse
    f = SimpleGraph([1, 2], {(1, 2): 1.0, (2, 1): 1.0})
    g1 = SimpleGraph([1, 2], {(1, 2): 1.0, (2, 1): 1.0})
    with pytest.raises(NonTotalError):
        check_matrix_adjunction(f, g1, SimpleGraph([], {}))


def test_cli_rejects_odd_enum_length(tmp_path, capsys):
    from goimll.cli import run

    a = tmp_path / "a.g"
    a.write_text("vertices 1\nedge 1 1 0.5\n")
    assert run(["graph", "measure", "--route", "enum", "--max-len", "3", str(a), str(a)]) == 1
    assert "error" in capsys.readouterr().err
