"""Canonical graph and cube-complex fixtures, addressed by short spec strings.

Graphs:
    cycle:n  path:n  star:n  complete:n  wheel:n  sun:k
    king:a,b,...  grid:a,b,...
    tree:prufer:s1,s2,...  tree:balanced:r,h  tree:random:n,seed
    random:n,p,seed                 (G(n, p), resampled until connected)
Cube complexes (cells are all faces of the listed cubes):
    cube_complex:cube  cube_complex:corner  cube_complex:hollow_cube
    cube_complex:two_squares  cube_complex:square_tree:k
    cube_complex:edge_tree:<tree spec>
"""
import itertools
from fractions import Fraction

import networkx as nx
import numpy as np

from hull_tools.constructions.cells import cell_complex
from hull_tools.metric_core import from_networkx, simple_graph, validate_metric
from shared.errors import BadSpec

MAX_RANDOM_TRIES = 1000


def _ints(spec, text, count=None):
    try:
        values = [int(t) for t in text.split(",") if t != ""]
    except ValueError as e:
        raise BadSpec(spec, "expected comma-separated integers") from e
    if count is not None and len(values) != count:
        raise BadSpec(spec, f"expected {count} integer(s)")
    return values


# ---------------------------------------------------------------------------
# Graphs

def _flatten(node):
    if isinstance(node, tuple):
        return tuple(x for part in node for x in _flatten(part))
    return (node,)


def _lattice_graph(dims, strong):
    """Product of paths; strong product gives king moves, cartesian the grid."""
    g = nx.relabel_nodes(nx.path_graph(dims[0]), lambda i: (i,))
    for size in dims[1:]:
        product = nx.strong_product if strong else nx.cartesian_product
        g = product(g, nx.path_graph(size))
        g = nx.relabel_nodes(g, _flatten)
    return g


def sun_graph(k):
    """k-sun: a k-clique plus, for each clique edge (i, i+1), a vertex adjacent to both."""
    edges = list(itertools.combinations(range(k), 2))
    for i in range(k):
        edges += [(k + i, i), (k + i, (i + 1) % k)]
    return simple_graph(2 * k, edges)


def random_connected_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RANDOM_TRIES):
        g = nx.empty_graph(n)
        for u, v in itertools.combinations(range(n), 2):
            if rng.random() < p:
                g.add_edge(u, v)
        if n == 0 or nx.is_connected(g):
            return from_networkx(g)
    raise BadSpec(f"random:{n},{p},{seed}", "no connected sample found")


def random_tree(n, seed):
    """Uniform labelled tree on n vertices via a random Pruefer sequence."""
    if n <= 2:
        return from_networkx(nx.path_graph(n))
    rng = np.random.default_rng(seed)
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    return from_networkx(nx.from_prufer_sequence(seq))


def random_metric(n, seed, max_weight=6, denominator=2):
    """Shortest-path metric of a complete graph with random rational weights."""
    rng = np.random.default_rng(seed)
    g = nx.complete_graph(n)
    for u, v in g.edges():
        g[u][v]['weight'] = Fraction(int(rng.integers(1, max_weight + 1)), denominator)
    lengths = dict(nx.all_pairs_dijkstra_path_length(g))
    table = [[lengths[i][j] if i != j else 0 for j in range(n)] for i in range(n)]
    return validate_metric(table)


def _tree(spec, rest):
    kind, _, arg = rest.partition(":")
    if kind == "prufer":
        seq = _ints(spec, arg)
        if any(not 0 <= s < len(seq) + 2 for s in seq):
            raise BadSpec(spec, "Pruefer entries must lie in 0..len+1")
        return from_networkx(nx.from_prufer_sequence(seq))
    if kind == "balanced":
        r, h = _ints(spec, arg, 2)
        return from_networkx(nx.balanced_tree(r, h))
    if kind == "random":
        n, seed = _ints(spec, arg, 2)
        return random_tree(n, seed)
    raise BadSpec(spec, "tree spec is prufer:..., balanced:r,h or random:n,seed")


def _graph(spec, kind, arg):
    if kind == "tree":
        return _tree(spec, arg)
    if kind == "random":
        parts = arg.split(",")
        if len(parts) != 3:
            raise BadSpec(spec, "expected random:n,p,seed")
        try:
            n, p, seed = int(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as e:
            raise BadSpec(spec, "expected random:n,p,seed") from e
        if n < 1 or not 0 <= p <= 1:
            raise BadSpec(spec, "need n >= 1 and 0 <= p <= 1")
        return random_connected_graph(n, p, seed)
    if kind in ("king", "grid"):
        dims = _ints(spec, arg)
        if not dims or any(x < 1 for x in dims):
            raise BadSpec(spec, "dimensions must be positive")
        return from_networkx(_lattice_graph(dims, strong=kind == "king"))

    (n,) = _ints(spec, arg, 1)
    if kind == "cycle" and n >= 3:
        return from_networkx(nx.cycle_graph(n))
    if kind == "path" and n >= 1:
        return from_networkx(nx.path_graph(n))
    if kind == "star" and n >= 1:
        return from_networkx(nx.star_graph(n))
    if kind == "complete" and n >= 1:
        return from_networkx(nx.complete_graph(n))
    if kind == "wheel" and n >= 4:
        return from_networkx(nx.wheel_graph(n))
    if kind == "sun" and n >= 3:
        return sun_graph(n)
    raise BadSpec(spec, f"size {n} out of range for {kind}")


# ---------------------------------------------------------------------------
# Cube complexes
#
# A cube is a tuple of (lo, hi) intervals with hi - lo in {0, 1}.

def _faces(cube):
    choices = []
    for lo, hi in cube:
        choices.append([(lo, hi), (lo, lo), (hi, hi)] if hi > lo else [(lo, lo)])
    return {tuple(face) for face in itertools.product(*choices)}


def _vertices(cube):
    return set(itertools.product(*[range(lo, hi + 1) for lo, hi in cube]))


def cube_complex_from_cubes(cubes, name=""):
    faces = set()
    for cube in cubes:
        faces |= _faces(cube)
    points = sorted(set().union(*(_vertices(f) for f in faces)))
    index = {p: i for i, p in enumerate(points)}
    edges = [(index[a], index[b]) for f in faces
             if sum(hi - lo for lo, hi in f) == 1
             for a, b in [sorted(_vertices(f))]]
    graph = simple_graph(len(points), edges,
                         labels=[",".join(str(x) for x in p) for p in points])
    cells = [frozenset(index[p] for p in _vertices(f)) for f in faces]
    return cell_complex(graph, cells, name=name)


def _square(x, y):
    return ((x, x + 1), (y, y + 1))


def _cube_complex(spec, arg):
    unit = (0, 1)
    name, _, rest = arg.partition(":")
    if name == "cube":
        cubes = [(unit, unit, unit)]
    elif name == "corner":
        cubes = [((0, 0), unit, unit), (unit, (0, 0), unit), (unit, unit, (0, 0))]
    elif name == "hollow_cube":
        cubes = []
        for axis, side in itertools.product(range(3), (0, 1)):
            face = [unit, unit, unit]
            face[axis] = (side, side)
            cubes.append(tuple(face))
    elif name == "two_squares":
        cubes = [_square(0, 0), _square(1, 0)]
    elif name == "square_tree":
        (k,) = _ints(spec, rest, 1)
        if k < 1:
            raise BadSpec(spec, "need at least one square")
        cubes = [_square(i, 0) for i in range(k)]
    elif name == "edge_tree":
        tree = _tree(spec, rest.removeprefix("tree:"))
        cells = [frozenset(e) for e in tree.edges()] or [frozenset([0])]
        return cell_complex(tree, cells, name=spec)
    else:
        raise BadSpec(spec, "unknown cube complex")
    return cube_complex_from_cubes(cubes, name=spec)


# ---------------------------------------------------------------------------
# Entry points

def generate(spec):
    """SimpleGraph or CellComplexSpec for a spec string; BadSpec when malformed."""
    kind, sep, arg = spec.strip().partition(":")
    if not sep:
        raise BadSpec(spec, "expected <kind>:<arguments>")
    if kind == "cube_complex":
        return _cube_complex(spec, arg)
    if kind not in ("cycle", "path", "star", "complete", "wheel", "sun", "king",
                    "grid", "tree", "random"):
        raise BadSpec(spec, f"unknown kind {kind!r}")
    return _graph(spec, kind, arg)
