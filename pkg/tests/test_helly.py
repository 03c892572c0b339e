import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from networkx.algorithms import isomorphism

from conftest import complete, cycle, path
from hull_tools.constructions.generators import generate, random_connected_graph, random_tree
from hull_tools.helly import (
    HELLY_METHODS,
    ball_closure,
    circumclique,
    coarse_helly_gap,
    helly_hull,
    helly_verdicts,
    integer_extremal_functions,
    interval_stability_bound,
    is_clique_helly,
    is_helly,
    linfty,
    one_helly_local_check,
    round_cliques,
    run,
)
from hull_tools.metric_core import (
    BallSpec,
    four_point_delta,
    from_networkx,
    graph_distance_matrix,
    int_table,
    validate_metric,
)
from hull_tools.posets import poset_check
from shared.errors import InstanceTooLarge, NonHellyWarning, NotHelly


def atlas_graphs(max_n):
    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= max_n and nx.is_connected(g):
            yield from_networkx(g)


def balls_meet_pairwise(g, family):
    d = graph_distance_matrix(g).dist
    return all(a.radius + b.radius >= d[a.center][b.center]
               for a, b in itertools.combinations(family, 2))


# -- Hull ----------------------------------------------------------------

def test_hull_of_c4_is_the_wheel(c4):
    result = helly_hull(c4)
    assert result.hull.n == 5
    assert result.embedding == (0, 1, 2, 3)
    assert result.functions[4] == (1, 1, 1, 1)
    assert result.hull.label(4) == "h4"
    assert nx.is_isomorphic(result.hull.to_networkx(), nx.wheel_graph(5))


def test_hull_keeps_originals_in_order(c5):
    result = helly_hull(c5)
    d = graph_distance_matrix(c5).dist
    for x in range(5):
        assert result.functions[x] == tuple(int(v) for v in d[x])
    # the embedding is isometric
    hd = graph_distance_matrix(result.hull).dist
    assert all(hd[x][y] == d[x][y] for x in range(5) for y in range(5))


def test_hull_of_a_helly_graph_adds_nothing(helly_fixtures):
    for name, g in helly_fixtures.items():
        assert helly_hull(g).hull.n == g.n, name


def test_hull_bound():
    with pytest.raises(InstanceTooLarge) as info:
        helly_hull(generate("path:13"))
    assert info.value.bound == 12
    assert info.value.exit_code == 3


def test_hull_is_idempotent_and_isometric(rng, helly_fixtures, c5, c6):
    graphs = list(helly_fixtures.values()) + [c5, c6]
    graphs += [random_connected_graph(int(n), 0.5, int(seed))
               for n, seed in zip(rng.integers(3, 9, size=200),
                                  rng.integers(0, 10_000, size=200))]
    for g in graphs:
        result = helly_hull(g)
        assert is_helly(result.hull, 'berge_triples').value
        d = graph_distance_matrix(g).dist
        hd = graph_distance_matrix(result.hull).dist
        e = result.embedding
        assert all(hd[e[x]][e[y]] == d[x][y] for x in range(g.n) for y in range(g.n))


def extremal_by_product(d):
    """Every integer vector below the eccentricities that satisfies the max-equation."""
    n = len(d)
    boxes = [range(max(row) + 1) for row in d]
    return sorted(f for f in itertools.product(*boxes)
                  if all(f[x] == max(d[x][y] - f[y] for y in range(n)) for x in range(n)))


@pytest.mark.parametrize("name", ["c5", "c6"])
def test_hull_matches_exhaustive_search(request, name):
    g = request.getfixturevalue(name)
    d = int_table(graph_distance_matrix(g))
    assert sorted(helly_hull(g).functions) == extremal_by_product(d)


@pytest.mark.parametrize("g, scale", [(path(4), 2), (cycle(4), 2), (cycle(5), 2),
                                      (complete(3), 4)])
def test_scaled_hull_matches_exhaustive_search(g, scale):
    d = [[scale * v for v in row] for row in int_table(graph_distance_matrix(g))]
    assert integer_extremal_functions(d) == extremal_by_product(d)


def test_hull_hyperbolicity_stays_within_one():
    for g in atlas_graphs(6):
        functions = helly_hull(g).functions
        hull_metric = validate_metric([[linfty(f, h) for h in functions] for f in functions])
        assert four_point_delta(hull_metric) <= four_point_delta(graph_distance_matrix(g)) + 1


# -- Recognition ---------------------------------------------------------

@pytest.mark.parametrize("method", HELLY_METHODS)
def test_helly_fixtures_pass_every_method(helly_fixtures, method):
    for name, g in helly_fixtures.items():
        assert is_helly(g, method).value, name


@pytest.mark.parametrize("method", HELLY_METHODS)
@pytest.mark.parametrize("n", [4, 5, 6])
def test_cycles_fail_every_method(method, n):
    g = cycle(n)
    verdict = is_helly(g, method)
    assert not verdict.value
    assert verdict.method == method
    assert balls_meet_pairwise(g, verdict.witness)


def test_c4_hull_witness_is_the_unit_balls(c4):
    verdict = is_helly(c4, 'hull_equality')
    assert verdict.witness == tuple(BallSpec(x, 1) for x in range(4))


def test_brute_force_witness_has_empty_intersection(c4):
    verdict = is_helly(c4, 'brute_force')
    d = graph_distance_matrix(c4).dist
    common = set(range(4))
    for b in verdict.witness:
        common &= {y for y in range(4) if d[b.center][y] <= b.radius}
    assert not common


def test_unknown_method(c4):
    with pytest.raises(ValueError):
        is_helly(c4, 'guess')


def test_methods_agree_on_small_connected_graphs():
    for g in atlas_graphs(6):
        verdicts = helly_verdicts(g)
        assert set(verdicts) == set(HELLY_METHODS)
        if verdicts['berge_triples'].value:
            assert is_clique_helly(g).value


def test_methods_agree_on_random_graphs():
    rng = np.random.default_rng(7)
    for _ in range(500):
        p = float(rng.uniform(0.2, 0.8))
        g = random_connected_graph(7, p, int(rng.integers(0, 1_000_000)))
        helly_verdicts(g)


def test_trees_are_helly():
    for n in range(2, 9):
        for tree in nx.nonisomorphic_trees(n):
            g = from_networkx(tree)
            assert is_helly(g, 'berge_triples').value
            assert is_helly(g, 'hull_equality').value
    for seed in range(10):
        g = random_tree(20, seed)
        assert is_helly(g, 'berge_triples').value


def test_king_graphs_are_helly(king33):
    assert is_helly(king33, 'hull_equality').value
    assert not is_helly(generate("grid:3,3"), 'berge_triples').value


def test_three_sun_is_not_clique_helly(sun3):
    verdict = is_clique_helly(sun3)
    assert not verdict.value
    assert set(verdict.witness) == {(0, 1, 3), (1, 2, 4), (0, 2, 5)}
    assert not is_helly(sun3, 'hull_equality').value


def test_c4_is_clique_helly(c4):
    assert is_clique_helly(c4).value


# -- Balls and round cliques ---------------------------------------------

def test_ball_closure(c4, cone):
    assert ball_closure(c4, {0, 2}) == frozenset({0, 2})
    assert ball_closure(cone, {0, 2}) == frozenset({0, 2, 4})
    with pytest.raises(ValueError):
        ball_closure(cone, set())


def test_round_cliques_of_the_cone(cone):
    report = round_cliques(cone)
    assert report.helly and report.agree
    assert len(report.cliques) == 13
    sizes = [len(c) for c in report.cliques]
    assert sizes.count(1) == 5
    assert sizes.count(2) == 4
    assert sizes.count(3) == 4
    # cycle edges are not round: their closure picks up the apex
    assert frozenset({0, 1}) not in report.cliques
    assert frozenset({0, 4}) in report.cliques
    assert frozenset({4}) in report.poset.elements


def test_round_cliques_warn_on_non_helly_graphs(c4):
    with pytest.warns(NonHellyWarning):
        report = round_cliques(c4)
    assert not report.helly
    assert report.warnings


def test_round_clique_posets_pass_local_flag_checks(helly_fixtures):
    for name, g in helly_fixtures.items():
        report = poset_check(round_cliques(g).poset)
        assert report['up_flag_failures'] == [], name
        assert report['down_flag_failures'] == [], name


def test_circumclique(cone):
    assert circumclique(cone, {0, 2}) == frozenset({4})
    assert circumclique(cone, {0, 1}) == frozenset({0, 1, 4})
    assert circumclique(cone, {3}) == frozenset({3})


def test_circumclique_is_a_clique_on_king_graphs(king33):
    nxg = king33.to_networkx()
    for size in (1, 2):
        for s in itertools.combinations(range(9), size):
            k = circumclique(king33, set(s))
            assert k <= ball_closure(king33, set(s))
            assert all(nxg.has_edge(u, v) for u, v in itertools.combinations(k, 2))


def test_circumclique_is_equivariant(helly_fixtures):
    for name, g in helly_fixtures.items():
        nxg = g.to_networkx()
        cliques = set(round_cliques(g).cliques)
        autos = list(isomorphism.GraphMatcher(nxg, nxg).isomorphisms_iter())
        for size in (1, 2, 3):
            for s in itertools.combinations(range(g.n), size):
                k = circumclique(g, set(s))
                assert k in cliques, (name, s)
                for a in autos:
                    image = circumclique(g, {a[v] for v in s})
                    assert image == frozenset(a[v] for v in k), (name, s, a)


def test_circumclique_needs_a_helly_graph(c4):
    with pytest.raises(NotHelly):
        circumclique(c4, {0})


def test_one_helly_local_check(c4, cone):
    assert one_helly_local_check(cone, range(5)).value
    verdict = one_helly_local_check(c4, range(4))
    assert not verdict.value
    assert verdict.witness == tuple(BallSpec(x, 1) for x in range(4))


# -- Density and stability -----------------------------------------------

def test_coarse_helly_gap(c4, helly_fixtures):
    assert coarse_helly_gap(c4) == 1
    for g in helly_fixtures.values():
        assert coarse_helly_gap(g) == 0


def test_interval_stability_bound(k1, p3):
    assert interval_stability_bound(k1) == 0
    bound = interval_stability_bound(p3)
    assert isinstance(bound, Fraction)
    assert bound == 1


# -- Entry point ---------------------------------------------------------

def test_run_check_reports_every_method(c4):
    result = run({'graph': c4, 'action': 'check'})
    assert result['kind'] == 'helly_check'
    assert result['verdict'] is False
    assert set(result['methods']) == set(HELLY_METHODS)


def test_run_single_method(p3):
    result = run({'graph': p3, 'action': 'check', 'method': 'berge_triples'})
    assert result['helly'] is True
    assert list(result['methods']) == ['berge_triples']


def test_run_hull_and_circumclique(c4, cone):
    result = run({'graph': c4, 'action': 'hull'})
    assert result['original'] == 4
    assert result['hull'].n == 5
    result = run({'graph': cone, 'action': 'circumclique', 'vertices': [0, 2]})
    assert result['clique'] == [4]


def test_run_round_cliques_suppresses_warning(c4):
    result = run({'graph': c4, 'action': 'round-cliques'})
    assert result['helly'] is False
    assert result['warnings']


def test_run_respects_lowered_bounds():
    with pytest.raises(InstanceTooLarge):
        run({'graph': path(6), 'action': 'hull', 'bounds': {'hull_vertices': 5}})
