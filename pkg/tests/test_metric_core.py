import itertools
from fractions import Fraction

import pytest

from conftest import complete, cycle, path
from hull_tools.metric_core import (
    BallSpec,
    four_point_delta,
    graph_distance_matrix,
    hyperconvexity_violation,
    induced_subgraph,
    interval,
    is_modular,
    median_set,
    simple_graph,
    validate_metric,
)
from shared.errors import (
    AsymmetryError,
    DisconnectedGraph,
    LoopEdge,
    NegativeEntry,
    NonzeroDiagonal,
    NotSquare,
    ParseError,
    TriangleError,
    ZeroDistance,
)


# -- Validation ----------------------------------------------------------

def test_validate_metric_accepts_rationals():
    m = validate_metric([[0, "1/2"], ["1/2", 0]])
    assert m.d(0, 1) == Fraction(1, 2)
    assert m.diameter == Fraction(1, 2)
    assert m.labels == ("0", "1")


def test_validate_metric_rejects_non_integral_floats():
    with pytest.raises(ParseError):
        validate_metric([[0, 0.5], [0.5, 0]])


@pytest.mark.parametrize("table, error", [
    ([[0, 1], [1]], NotSquare),
    ([[1, 1], [1, 0]], NonzeroDiagonal),
    ([[0, -1], [-1, 0]], NegativeEntry),
    ([[0, 1], [2, 0]], AsymmetryError),
    ([[0, 0], [0, 0]], ZeroDistance),
])
def test_validate_metric_errors(table, error):
    with pytest.raises(error):
        validate_metric(table)


def test_triangle_error_names_the_triple():
    with pytest.raises(TriangleError) as info:
        validate_metric([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    e = info.value
    assert (e.i, e.j, e.k) == (0, 2, 1)
    assert e.values == (3, 1, 1)
    assert "(0,2,1)" in str(e)


def test_scaled_metric():
    m = validate_metric([[0, 1], [1, 0]]).scaled(3)
    assert m.d(0, 1) == 3


# -- Graphs --------------------------------------------------------------

def test_simple_graph_rejects_loops():
    with pytest.raises(LoopEdge):
        simple_graph(2, [(1, 1)])


def test_graph_distance_matrix_on_cycle():
    m = graph_distance_matrix(cycle(6))
    assert m.d(0, 3) == 3
    assert m.d(1, 5) == 2
    assert m.diameter == 3


def test_disconnected_graph_names_a_pair():
    with pytest.raises(DisconnectedGraph) as info:
        graph_distance_matrix(simple_graph(3, [(0, 1)]))
    assert info.value.pair == (0, 2)


def test_induced_subgraph_keeps_labels():
    g = simple_graph(4, [(0, 1), (1, 2), (2, 3)], labels=["a", "b", "c", "d"])
    sub = induced_subgraph(g, [1, 2, 3])
    assert sub.n == 3
    assert sub.edges() == [(0, 1), (1, 2)]
    assert sub.labels == ("b", "c", "d")


# -- Diagnostics ---------------------------------------------------------

def test_four_point_delta_of_trees_is_zero():
    tree = simple_graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert four_point_delta(graph_distance_matrix(tree)) == 0


def test_four_point_delta_of_c4():
    # pair sums 2, 4, 2: largest minus middle
    assert four_point_delta(graph_distance_matrix(cycle(4))) == 2


def test_four_point_delta_bounded_by_diameter_on_cycles():
    for n in range(4, 9):
        m = graph_distance_matrix(cycle(n))
        assert 0 < four_point_delta(m) <= 2 * m.diameter


def test_interval_and_median():
    m = graph_distance_matrix(path(3))
    assert interval(m, 0, 2) == frozenset({0, 1, 2})
    assert median_set(m, 0, 1, 2) == frozenset({1})


def test_interval_and_median_on_c4():
    m = graph_distance_matrix(cycle(4))
    assert interval(m, 0, 2) == frozenset(range(4))
    assert median_set(m, 0, 1, 2) == frozenset({1})


def test_intervals_are_symmetric_and_hold_the_medians():
    for g in (cycle(5), cycle(6), path(5), complete(4)):
        m = graph_distance_matrix(g)
        for x, y in itertools.combinations(range(m.n), 2):
            assert interval(m, x, y) == interval(m, y, x)
            assert {x, y} <= interval(m, x, y)
        for x, y, z in itertools.combinations(range(m.n), 3):
            common = interval(m, x, y) & interval(m, y, z) & interval(m, x, z)
            assert median_set(m, x, y, z) <= common


def test_four_point_delta_scales_with_the_metric():
    m = graph_distance_matrix(cycle(6))
    assert four_point_delta(m.scaled(3)) == 3 * four_point_delta(m)
    assert four_point_delta(m.scaled(Fraction(1, 2))) == four_point_delta(m) / 2


def test_modularity():
    assert is_modular(graph_distance_matrix(path(4))) == (True, None)
    assert is_modular(graph_distance_matrix(cycle(4)))[0]
    ok, triple = is_modular(graph_distance_matrix(complete(3)))
    assert not ok
    assert triple == (0, 1, 2)


def test_c4_is_not_hyperconvex():
    m = graph_distance_matrix(cycle(4))
    family = [(x, 1) for x in range(4)]
    witness = hyperconvexity_violation(m, family)
    assert witness == tuple(BallSpec(x, 1) for x in range(4))


def test_incompatible_or_intersecting_families_are_not_violations():
    m = graph_distance_matrix(cycle(4))
    assert hyperconvexity_violation(m, [(0, 0), (2, 1)]) is None
    assert hyperconvexity_violation(m, [(0, 1), (2, 1)]) is None
