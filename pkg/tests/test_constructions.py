import networkx as nx
import pytest

from hull_tools.constructions import (
    braid_lattice_action,
    cell_complex,
    cell_helly_check,
    check_lattice_action,
    garside_b3_ball,
    generate,
    integer_lattice_action,
    lattice_to_graph,
    order_distance,
    random_metric,
    run,
    thickening,
    window_poset,
)
from hull_tools.constructions.garside import (
    A,
    B,
    DELTA,
    IDENTITY,
    Braid,
    generators,
    inverse,
    multiply,
    normal_form,
    prefix_leq,
    shift,
    simple_braid,
    tau,
    unshift,
)
from hull_tools.helly import is_helly
from hull_tools.metric_core import simple_graph
from shared.errors import BadSpec, RadiusTooLarge, WindowTooSmall


# -- Generators ----------------------------------------------------------

def test_king_and_grid(king33):
    assert king33.n == 9
    assert king33.label(0) == "0,0"
    assert len(king33.adj[0]) == 3
    assert len(king33.adj[4]) == 8
    grid = generate("grid:3,3")
    assert len(grid.edges()) == 12


@pytest.mark.parametrize("spec, n, m", [
    ("cycle:5", 5, 5),
    ("path:4", 4, 3),
    ("star:3", 4, 3),
    ("complete:4", 4, 6),
    ("wheel:5", 5, 8),
    ("sun:3", 6, 9),
    ("tree:prufer:1,1", 4, 3),
    ("tree:balanced:2,2", 7, 6),
])
def test_graph_specs(spec, n, m):
    g = generate(spec)
    assert g.n == n
    assert len(g.edges()) == m


def test_random_fixtures_are_reproducible():
    a = generate("random:6,0.5,3")
    assert a == generate("random:6,0.5,3")
    assert nx.is_connected(a.to_networkx())
    t = generate("tree:random:10,4")
    assert nx.is_tree(t.to_networkx())
    assert random_metric(4, 9) == random_metric(4, 9)


@pytest.mark.parametrize("spec", [
    "cycle", "cycle:2", "wheel:3", "foo:1", "king:0", "king:a", "tree:prufer:9",
    "tree:weird:1", "random:4,2,1", "cube_complex:tesseract", "cube_complex:square_tree:0",
])
def test_bad_specs(spec):
    with pytest.raises(BadSpec):
        generate(spec)


# -- Cells ---------------------------------------------------------------

def test_cube_thickening_is_complete():
    c = generate("cube_complex:cube")
    assert len(c.cells) == 27
    t = thickening(c)
    assert len(t.edges()) == 28
    report = cell_helly_check(c)
    assert report['passed']
    assert report['cross_checked']
    assert report['assumptions']


def test_two_squares_and_square_tree():
    c = generate("cube_complex:two_squares")
    assert len(thickening(c).edges()) == 11
    assert cell_helly_check(c)['passed']
    strip = generate("cube_complex:square_tree:3")
    assert cell_helly_check(strip)['passed']
    assert is_helly(thickening(strip), 'berge_triples').value


def test_corner_fails_the_flag_condition():
    c = generate("cube_complex:corner")
    report = cell_helly_check(c)
    assert report['flag_failures']
    assert not report['passed']
    # vertex 0,0,0 dominates the thickening
    assert is_helly(thickening(c), 'berge_triples').value


def test_hollow_cube():
    c = generate("cube_complex:hollow_cube")
    report = cell_helly_check(c)
    assert report['helly_failures'] == []
    assert report['flag_failures']
    t = thickening(c)
    assert nx.is_isomorphic(t.to_networkx(), nx.complete_multipartite_graph(2, 2, 2, 2))
    assert not is_helly(t, 'berge_triples').value


def test_edge_tree_thickening_is_the_tree():
    c = generate("cube_complex:edge_tree:tree:prufer:1,1")
    assert thickening(c).edges() == c.graph.edges()
    assert cell_helly_check(c)['passed']


@pytest.mark.parametrize("cells", [
    [[0, 1], []],
    [[0, 1], [1, 5]],
    [[0, 2], [1]],
    [[0, 1]],
    [[0], [1], [2]],
])
def test_cell_complex_validation(cells):
    g = simple_graph(3, [(0, 1), (1, 2)])
    with pytest.raises(BadSpec):
        cell_complex(g, cells)


# -- Garside -------------------------------------------------------------

def test_normal_forms():
    assert normal_form(0, [A, B, A]) == Braid(1, ())
    assert tau(A) == B
    assert str(shift(IDENTITY)) == "D"
    assert str(unshift(IDENTITY)) == "D^-1"
    assert str(IDENTITY) == "1"
    assert str(inverse(simple_braid(A))) == "D^-1.ab"
    assert simple_braid(DELTA) == Braid(1, ())


def test_generators_form_a_symmetric_set():
    gens = generators()
    assert len(gens) == 18
    assert IDENTITY not in gens
    assert {inverse(g) for g in gens} == set(gens)
    for g in gens:
        assert multiply(g, inverse(g)) == IDENTITY
        assert multiply(inverse(g), g) == IDENTITY


def test_prefix_order():
    a = simple_braid(A)
    assert prefix_leq(IDENTITY, a)
    assert not prefix_leq(a, IDENTITY)
    assert prefix_leq(a, shift(IDENTITY))
    assert prefix_leq(unshift(IDENTITY), IDENTITY)


def test_garside_ball():
    g = garside_b3_ball(1)
    assert g.n == 19
    assert g.label(0) == "1"
    assert len(g.adj[0]) == 18
    with pytest.raises(RadiusTooLarge):
        garside_b3_ball(4)


# -- Lattices ------------------------------------------------------------

def test_integer_lattice_is_a_king_graph():
    la = integer_lattice_action(2, 0, 4)
    assert check_lattice_action(la) == []
    result = lattice_to_graph(la)
    assert result.graph.n == 25
    assert len(result.graph.edges()) == 72
    assert nx.is_isomorphic(result.graph.to_networkx(),
                            generate("king:5,5").to_networkx())
    assert result.distance_mismatches == []
    assert result.interior_helly
    assert len(result.interior) == 9


def test_lattice_check_covers_meets_and_joins():
    la = integer_lattice_action(2, 0, 2)
    assert la.meet((0, 2), (1, 1)) == (0, 1)
    assert la.join((0, 2), (1, 1)) == (1, 2)
    problems = {p for _, p in check_lattice_action(la._replace(meet=la.join))}
    assert "meet not a bound" in problems
    problems = {p for _, p in check_lattice_action(la._replace(join=lambda x, y: x))}
    assert "join not commutative" in problems


def test_integer_lattice_in_three_dimensions():
    result = lattice_to_graph(integer_lattice_action(3, 0, 3))
    assert len(result.interior) == 8
    inner = result.interior
    assert all(result.graph.has_edge(u, v) for u in inner for v in inner if u < v)


def test_order_distance_and_window():
    la = integer_lattice_action(2, 0, 4)
    assert order_distance(la, (1, 1), (3, 2)) == 2
    assert order_distance(la, (2, 2), (2, 2)) == 0
    with pytest.raises(WindowTooSmall) as info:
        lattice_to_graph(la, requested=[(0, 0)])
    assert info.value.vertex == "0,0"
    assert window_poset(integer_lattice_action(1, 0, 2)).hasse == ((0, 1), (1, 2))


def test_braid_lattice_matches_the_cayley_ball():
    la = braid_lattice_action(1)
    assert la.interior == (IDENTITY,)
    result = lattice_to_graph(la)
    ball = garside_b3_ball(1)
    assert result.graph.labels == ball.labels
    assert result.graph.edges() == ball.edges()


# -- Entry point ---------------------------------------------------------

def test_run_graph_kinds():
    result = run({'what': 'tree', 'arg': '1,1'})
    assert result['kind'] == 'graph'
    assert result['spec'] == 'tree:prufer:1,1'
    assert result['graph'].n == 4


def test_run_cube_and_lattice():
    result = run({'what': 'cube', 'arg': 'corner'})
    assert result['kind'] == 'cell_complex'
    assert not result['report']['passed']
    assert result['thickening_helly']
    result = run({'what': 'lattice', 'arg': '2,0,4'})
    assert result['kind'] == 'lattice_graph'
    assert result['interior_helly']


def test_run_garside_ball_is_locally_one_helly():
    result = run({'what': 'garside-ball', 'arg': '2'})
    assert result['kind'] == 'garside_ball'
    assert result['locally_one_helly']
    assert len(result['interior']) == 19
