"""Finite metric spaces and graphs with exact distance computations.

Types that describe the metric spaces and graphs flowing through the package,
the validator that enforces the metric axioms, and the basic diagnostics
(four-point delta, median sets, intervals) built on top of them.
"""
import itertools
import logging
from fractions import Fraction
from typing import NamedTuple

import networkx as nx
from tqdm import tqdm

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

log = logging.getLogger("helly_lab.metric_core")


# ---------------------------------------------------------------------------
# Schema types

class FiniteMetric(NamedTuple):
    """A validated finite metric space on points 0..n-1."""
    labels: tuple            # one string per point
    dist: tuple              # n x n tuple of Fractions
    diameter: Fraction = Fraction(0)
    eccentricity: tuple = ()  # per-point max distance

    @property
    def n(self):
        return len(self.dist)

    def d(self, i, j):
        return self.dist[i][j]

    def scaled(self, factor):
        """Return the metric multiplied by a positive rational factor."""
        factor = Fraction(factor)
        return validate_metric([[x * factor for x in row] for row in self.dist],
                               labels=self.labels)


class SimpleGraph(NamedTuple):
    """Undirected simple graph on vertices 0..n-1."""
    n: int
    adj: tuple               # adj[v] is the sorted tuple of neighbors of v
    labels: tuple = ()       # optional display labels, one per vertex

    def label(self, v):
        return self.labels[v] if self.labels else str(v)

    def edges(self):
        """Sorted (u, v) pairs with u < v."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u, v):
        return v in self.adj[u]

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


class BallSpec(NamedTuple):
    center: int
    radius: Fraction


def simple_graph(n, edges, labels=None):
    """Build a SimpleGraph from an edge iterable, rejecting loops.

    Duplicate edges collapse silently here; file parsing warns about them.
    """
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise LoopEdge(u)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u},{v}) references a vertex outside 0..{n - 1}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return SimpleGraph(n=n, adj=tuple(tuple(sorted(s)) for s in nbrs),
                       labels=tuple(labels) if labels else ())


def from_networkx(g, labels=None):
    """Convert a networkx graph, ordering vertices by sorted node key."""
    nodes = sorted(g.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    edges = [(index[u], index[v]) for u, v in g.edges()]
    if labels is None:
        labels = [_node_label(node) for node in nodes]
    return simple_graph(len(nodes), edges, labels=labels)


def _node_label(node):
    if isinstance(node, tuple):
        return ",".join(str(x) for x in node)
    return str(node)


def induced_subgraph(g, vertices):
    """Induced subgraph on `vertices`, keeping their relative order and labels."""
    vertices = sorted(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    edges = [(index[u], index[v]) for u in vertices for v in g.adj[u]
             if v in index and u < v]
    return simple_graph(len(vertices), edges, labels=[g.label(v) for v in vertices])


# ---------------------------------------------------------------------------
# Validation

def _to_fraction(value):
    if isinstance(value, float):
        # floats only survive when they are exact binary fractions of integers
        if not value.is_integer():
            raise ParseError(f"floating-point distance {value!r}; use p/q strings")
    return Fraction(value)


def validate_metric(table, labels=None):
    """Validate a square table and return a FiniteMetric.

    Raises the first violation found in row-major order: shape, diagonal,
    negativity, zero off-diagonal, symmetry, then the triangle inequality.
    """
    rows = [[_to_fraction(x) for x in row] for row in table]
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotSquare(i, len(row), n)
    for i in range(n):
        if rows[i][i] != 0:
            raise NonzeroDiagonal(i, rows[i][i])
    for i, j in itertools.product(range(n), repeat=2):
        if rows[i][j] < 0:
            raise NegativeEntry(i, j, rows[i][j])
    for i, j in itertools.combinations(range(n), 2):
        if rows[i][j] != rows[j][i]:
            raise AsymmetryError(i, j, rows[i][j], rows[j][i])
        if rows[i][j] == 0:
            raise ZeroDistance(i, j)
    for i, j in itertools.combinations(range(n), 2):
        for k in range(n):
            if k in (i, j):
                continue
            if rows[i][j] > rows[i][k] + rows[k][j]:
                raise TriangleError(i, j, k, (rows[i][j], rows[i][k], rows[k][j]))

    ecc = tuple(max(row) if row else Fraction(0) for row in rows)
    labels = tuple(labels) if labels else tuple(str(i) for i in range(n))
    return FiniteMetric(labels=labels,
                        dist=tuple(tuple(row) for row in rows),
                        diameter=max(ecc) if ecc else Fraction(0),
                        eccentricity=ecc)


def graph_distance_matrix(g):
    """BFS shortest-path metric of a connected graph."""
    nxg = g.to_networkx()
    table = []
    for u in range(g.n):
        lengths = nx.single_source_shortest_path_length(nxg, u)
        if len(lengths) < g.n:
            missing = min(v for v in range(g.n) if v not in lengths)
            raise DisconnectedGraph(u, missing)
        table.append([lengths[v] for v in range(g.n)])
    log.debug("distance matrix for %d vertices", g.n)
    labels = [g.label(v) for v in range(g.n)]
    return validate_metric(table, labels=labels)


def int_table(m):
    """Integer copy of a metric's distances; raises if any entry is fractional."""
    out = []
    for row in m.dist:
        if any(x.denominator != 1 for x in row):
            raise ValueError("metric has non-integer distances")
        out.append([int(x) for x in row])
    return out


# ---------------------------------------------------------------------------
# Diagnostics

def four_point_delta(m, progress=False):
    """Least delta >= 0 with the four-point inequality on every quadruple.

    For each quadruple the three pair sums are sorted; delta is the gap between
    the largest and the middle one. Not halved.
    """
    best = Fraction(0)
    quads = itertools.combinations(range(m.n), 4)
    if progress:
        quads = tqdm(quads, desc="four-point", leave=False)
    d = m.dist
    for x, y, z, t in quads:
        sums = sorted((d[x][y] + d[z][t], d[x][z] + d[y][t], d[x][t] + d[y][z]))
        best = max(best, sums[2] - sums[1])
    return best


def interval(m, x, y):
    """{z : d(x,z) + d(z,y) = d(x,y)}."""
    d = m.dist
    return frozenset(z for z in range(m.n) if d[x][z] + d[z][y] == d[x][y])


def median_set(m, x, y, z):
    """Points lying on geodesics between every pair of x, y, z."""
    return interval(m, x, y) & interval(m, y, z) & interval(m, x, z)


def is_modular(m):
    """Return (True, None) or (False, triple) for the first triple with no median."""
    for x, y, z in itertools.combinations(range(m.n), 3):
        if not median_set(m, x, y, z):
            return False, (x, y, z)
    return True, None


def ball(m, center, radius):
    """Members of the closed ball B(center, radius)."""
    return frozenset(y for y in range(m.n) if m.dist[center][y] <= radius)


def hyperconvexity_violation(m, balls):
    """Check a ball family against the hyperconvexity condition.

    Args:
        m: FiniteMetric.
        balls: iterable of BallSpec (or (center, radius) pairs).

    Returns:
        None when the radii are incompatible (some r_i + r_j < d(x_i, x_j)) or
        the balls share a point; otherwise the family itself, which is
        compatible yet has empty intersection inside the finite space.
    """
    balls = [BallSpec(c, Fraction(r)) for c, r in balls]
    for a, b in itertools.combinations(balls, 2):
        if a.radius + b.radius < m.dist[a.center][b.center]:
            return None
    common = frozenset(range(m.n))
    for b in balls:
        common &= ball(m, b.center, b.radius)
    if common:
        return None
    return tuple(balls)


# ---------------------------------------------------------------------------
# Entry point

def run(config):
    """Launcher entry: 'delta' or 'median' on a metric from config['metric']."""
    m = config['metric']
    action = config.get('action', 'delta')
    if action == 'delta':
        return {'kind': 'metric_delta', 'points': m.n,
                'delta': four_point_delta(m, progress=config.get('progress', False))}
    x, y, z = config['triple']
    return {'kind': 'metric_median', 'triple': [x, y, z],
            'median': sorted(median_set(m, x, y, z))}
