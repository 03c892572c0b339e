"""Injective hull (tight span) of a finite rational metric space.

Points of the hull are extremal functions: f with f(x) + f(y) >= d(x, y) for
all x, y and f(x) = max_y (d(x, y) - f(y)). The hull is a polyhedral complex;
its cells are described by which pairs are tight (f(x) + f(y) = d(x, y)).

    kuratowski / dual_function / q_step / project_to_tight_span
        - pointwise maps on functions
    tight_span_vertices / tight_span_cells / combinatorial_dimension
        - exact enumeration of the cell complex
    dim_at_most
        - the 2(n+1)-point dimension criterion
"""
import itertools
import logging
import math
from collections import deque
from fractions import Fraction
from typing import NamedTuple

import networkx as nx
from tqdm import tqdm

from shared.config import bound as default_bound
from shared.errors import FunctionOutsideDelta, InstanceTooLarge

log = logging.getLogger("helly_lab.tight_span")


# ---------------------------------------------------------------------------
# Schema types

class NotInDelta(NamedTuple):
    pair: tuple              # (x, y) with f(x) + f(y) < d(x, y)
    verdict: str = 'not_in_delta'


class InDeltaNotExtremal(NamedTuple):
    coordinate: int          # first x where f*(x) < f(x)
    dominated: tuple         # g <= f, g != f, g in Delta
    verdict: str = 'in_delta_not_extremal'


class Extremal(NamedTuple):
    lipschitz: bool          # |f(x) - f(y)| <= d(x, y) everywhere
    verdict: str = 'extremal'


class Projection(NamedTuple):
    function: tuple          # last iterate; extremal when exact
    steps: int               # q-steps applied
    exact: bool              # fixed point reached within max_iter
    gap: tuple               # per-coordinate bound 2(q^n f - q^(n+1) f); zeros when exact


class TightSpanCell(NamedTuple):
    tight_pairs: tuple       # sorted (x, y) pairs with x <= y; (x, x) means f(x) = 0
    dim: int
    vertex_ids: tuple        # indices into tight_span_vertices(m)


class DimCheck(NamedTuple):
    holds: bool
    witness: tuple = None    # (Z, matching pairs) on failure


# ---------------------------------------------------------------------------
# Pointwise maps

def kuratowski(m, x):
    """e(x) = d(x, .)."""
    return tuple(m.dist[x])


def linfty(f, g):
    return max((abs(a - b) for a, b in zip(f, g)), default=Fraction(0))


def dual_function(m, f):
    """f*(x) = max over z of d(x, z) - f(z), z ranging over all points."""
    return tuple(max(m.dist[x][z] - f[z] for z in range(m.n)) for x in range(m.n))


def delta_violation(m, f):
    """First pair (x, y), x <= y, with f(x) + f(y) < d(x, y), or None."""
    for x in range(m.n):
        for y in range(x, m.n):
            if f[x] + f[y] < m.dist[x][y]:
                return (x, y)
    return None


def classify_function(m, f):
    """Classify f as NotInDelta, InDeltaNotExtremal or Extremal."""
    f = tuple(Fraction(v) for v in f)
    if len(f) != m.n:
        raise ValueError(f"function has {len(f)} values for {m.n} points")
    pair = delta_violation(m, f)
    if pair is not None:
        return NotInDelta(pair=pair)
    star = dual_function(m, f)
    for x in range(m.n):
        if star[x] < f[x]:
            g = list(f)
            g[x] = max(star[x], Fraction(0))
            return InDeltaNotExtremal(coordinate=x, dominated=tuple(g))
    lipschitz = all(abs(f[x] - f[y]) <= m.dist[x][y]
                    for x, y in itertools.combinations(range(m.n), 2))
    if not lipschitz:
        log.warning("extremal function %s is not 1-Lipschitz", f)
    return Extremal(lipschitz=lipschitz)


def q_step(m, f):
    """q(f) = (f + f*) / 2."""
    star = dual_function(m, f)
    return tuple((a + b) / 2 for a, b in zip(f, star))


def project_to_tight_span(m, f, max_iter=None):
    """Iterate q until a fixed point or max_iter steps.

    Returns:
        Projection. When not exact, `gap` bounds how far the last iterate can be
        from its limit's extremality, coordinate by coordinate.
    """
    max_iter = default_bound('projection_max_iter', max_iter)
    current = tuple(Fraction(v) for v in f)
    pair = delta_violation(m, current)
    if pair is not None:
        raise FunctionOutsideDelta(pair)
    steps = 0
    while True:
        nxt = q_step(m, current)
        if nxt == current:
            return Projection(current, steps, True, tuple(Fraction(0) for _ in current))
        if steps >= max_iter:
            gap = tuple(2 * (a - b) for a, b in zip(current, nxt))
            log.info("projection stopped after %d steps, max gap %s", steps, max(gap))
            return Projection(current, steps, False, gap)
        current = nxt
        steps += 1


# ---------------------------------------------------------------------------
# Vertex enumeration
#
# The vertices of the tight span are the vertices of the polyhedron
# {f : f(x) + f(y) >= d(x, y)}, and its bounded edges connect them. At a
# vertex v with tight graph T (a loop where v(x) = 0) an edge leaves along
# 1_A - 1_B, where B is a loop-free independent set of T, A = N_T(B), the A-B
# tight pairs connect A and B, and every component of T on the remaining
# points has an odd cycle or a loop. The walk runs in units of
# 1 / (2 * lcm of the denominators), in which every vertex is integral.

def _unit_scale(m):
    return 2 * math.lcm(*(v.denominator for row in m.dist for v in row))


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _tight_graph(d, v):
    nbr = [0] * len(v)
    loops = 0
    for x in range(len(v)):
        if v[x] == 0:
            loops |= 1 << x
        for y in range(x + 1, len(v)):
            if v[x] + v[y] == d[x][y]:
                nbr[x] |= 1 << y
                nbr[y] |= 1 << x
    return nbr, loops


def _rigid(nbr, loops, rest):
    """Every component of the tight graph on `rest` has an odd cycle or a loop."""
    while rest:
        start = (rest & -rest).bit_length() - 1
        side = {start: 0}
        members = 1 << start
        odd = False
        stack = [start]
        while stack:
            x = stack.pop()
            for y in _bits(nbr[x] & rest):
                if y not in side:
                    side[y] = 1 - side[x]
                    members |= 1 << y
                    stack.append(y)
                elif side[y] == side[x]:
                    odd = True
        if not odd and not members & loops:
            return False
        rest &= ~members
    return True


def _decreasing_sides(nbr, loops, n):
    """Loop-free independent sets B of T whose neighbourhoods chain them together."""
    seen = set()
    stack = [1 << x for x in range(n) if not loops >> x & 1]
    while stack:
        side = stack.pop()
        if side in seen:
            continue
        seen.add(side)
        reach = 0
        for b in _bits(side):
            reach |= nbr[b]
        yield side, reach
        for c in range(n):
            bit = 1 << c
            if not (side | reach | loops) & bit and nbr[c] & reach:
                stack.append(side | bit)


def _adjacent_vertices(d, v):
    n = len(v)
    nbr, loops = _tight_graph(d, v)
    full = (1 << n) - 1
    for side, reach in _decreasing_sides(nbr, loops, n):
        rest = full & ~(side | reach)
        if not _rigid(nbr, loops, rest):
            continue
        down = list(_bits(side))
        # doubled step length; even at every vertex
        step = min(2 * v[b] for b in down)
        for b, c in itertools.combinations(down, 2):
            step = min(step, v[b] + v[c] - d[b][c])
        for b in down:
            for z in _bits(rest):
                step = min(step, 2 * (v[b] + v[z] - d[b][z]))
        t = step // 2
        yield tuple(v[x] - t if side >> x & 1 else v[x] + t if reach >> x & 1 else v[x]
                    for x in range(n))


def tight_span_vertices(m, bound=None):
    """All vertices of the tight span, sorted lexicographically.

    Walks the bounded edges from the Kuratowski function of point 0.
    """
    limit = default_bound('tight_span_points', bound)
    if m.n > limit:
        raise InstanceTooLarge("tight span points", m.n, limit)
    if m.n == 0:
        return []
    scale = _unit_scale(m)
    d = [[int(x * scale) for x in row] for row in m.dist]
    start = tuple(d[0])
    found = {start}
    queue = deque([start])
    while queue:
        for w in _adjacent_vertices(d, queue.popleft()):
            if w not in found:
                found.add(w)
                queue.append(w)
    log.debug("%d tight span vertices for %d points", len(found), m.n)
    return [tuple(Fraction(x, scale) for x in v) for v in sorted(found)]


# ---------------------------------------------------------------------------
# Cells

def tight_pairs(m, f):
    """Sorted pairs (x, y), x <= y, with f(x) + f(y) = d(x, y)."""
    return tuple((x, y) for x in range(m.n) for y in range(x, m.n)
                 if f[x] + f[y] == m.dist[x][y])


def _covers(pairs, n):
    touched = set()
    for x, y in pairs:
        touched.add(x)
        touched.add(y)
    return len(touched) == n


def constraint_rank(pairs, n):
    """Rank of the linear system f(x) + f(y) = const over the given pairs.

    n minus the number of components of the pair graph that are bipartite and
    loop-free; isolated points count as such components.
    """
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(pairs)
    free = sum(1 for comp in nx.connected_components(g)
               if nx.is_bipartite(g.subgraph(comp)))
    return n - free


def tight_span_cells(m, bound=None):
    """All cells of the tight span, each with its tight pairs, dimension, vertices.

    Cells are the covering members of the intersection closure of the vertex
    tight-pair sets. Ordered by (dim, vertex_ids).
    """
    vertices = tight_span_vertices(m, bound=bound)
    vertex_sets = [frozenset(tight_pairs(m, f)) for f in vertices]
    family = set(vertex_sets)
    frontier = set(family)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in vertex_sets:
                c = a & b
                if c not in family and c not in fresh and _covers(c, m.n):
                    fresh.add(c)
        family |= fresh
        frontier = fresh

    cells = []
    for pairs in family:
        ids = tuple(i for i, vs in enumerate(vertex_sets) if pairs <= vs)
        dim = m.n - constraint_rank(sorted(pairs), m.n)
        cells.append(TightSpanCell(tight_pairs=tuple(sorted(pairs)), dim=dim,
                                   vertex_ids=ids))
    cells.sort(key=lambda c: (c.dim, c.vertex_ids))
    log.debug("%d cells over %d vertices", len(cells), len(vertices))
    return cells


def combinatorial_dimension(m, bound=None):
    return max(c.dim for c in tight_span_cells(m, bound=bound))


# ---------------------------------------------------------------------------
# The 2(n+1)-point criterion

def _perfect_matchings(points):
    if not points:
        yield ()
        return
    first = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for tail in _perfect_matchings(rest):
            yield ((first, points[i]),) + tail


def best_derangement(d, z):
    """Largest sum of d(z, j(z)) over fixed-point-free bijections j of z.

    Returns (sum, number of bijections attaining it). Dynamic programming over
    the set of images already used by z[0], ..., z[i-1].
    """
    size = len(z)
    best = [None] * (1 << size)
    best[0] = (0, 1)
    for used in range(1 << size):
        if best[used] is None:
            continue
        i = used.bit_count()
        if i == size:
            continue
        total, count = best[used]
        for j in range(size):
            if j == i or used >> j & 1:
                continue
            key = used | 1 << j
            value = total + d[z[i]][z[j]]
            if best[key] is None or value > best[key][0]:
                best[key] = (value, count)
            elif value == best[key][0]:
                best[key] = (value, best[key][1] + count)
    return best[-1]


def dim_at_most(m, k, bound=None, progress=False):
    """Check dim E(X) <= k with the 2(k+1)-point criterion.

    For every subset Z of size 2(k+1) and every fixed-point-free involution i
    of Z there must be a fixed-point-free bijection j != i of Z with
    sum d(z, i(z)) <= sum d(z, j(z)). Spaces with fewer points pass vacuously.
    Since i is itself such a bijection, the test fails exactly when i is the
    unique maximizer.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    limit = default_bound('dim_criterion_points', bound)
    if m.n > limit:
        raise InstanceTooLarge("dimension criterion points", m.n, limit)
    size = 2 * (k + 1)
    if m.n < size:
        return DimCheck(holds=True)
    d = m.dist
    subsets = itertools.combinations(range(m.n), size)
    if progress:
        subsets = tqdm(subsets, desc=f"dim<={k}", leave=False)
    for z in subsets:
        top, ties = best_derangement(d, z)
        if ties > 1:
            continue
        for matching in _perfect_matchings(list(z)):
            if 2 * sum(d[a][b] for a, b in matching) == top:
                return DimCheck(holds=False, witness=(z, matching))
    return DimCheck(holds=True)


# ---------------------------------------------------------------------------
# Entry point

def run(config):
    """Launcher entry for `tightspan vertices|cells|dim|project`."""
    m = config['metric']
    action = config.get('action', 'vertices')
    bounds = config.get('bounds', {})
    limit = bounds.get('tight_span_points')

    if action == 'vertices':
        return {'kind': 'tight_span_vertices', 'labels': list(m.labels),
                'vertices': tight_span_vertices(m, bound=limit)}
    if action == 'cells':
        return {'kind': 'tight_span_cells', 'labels': list(m.labels),
                'vertices': tight_span_vertices(m, bound=limit),
                'cells': tight_span_cells(m, bound=limit)}
    if action == 'dim':
        dim = combinatorial_dimension(m, bound=limit)
        result = {'kind': 'tight_span_dim', 'dim': dim}
        k = config.get('k')
        if k is not None:
            check = dim_at_most(m, k, bound=bounds.get('dim_criterion_points'))
            result['criterion'] = {'k': k, 'holds': check.holds,
                                   'witness': check.witness}
        return result
    proj = project_to_tight_span(m, config['function'],
                                 max_iter=bounds.get('projection_max_iter'))
    return {'kind': 'tight_span_projection', 'function': proj.function,
            'steps': proj.steps, 'exact': proj.exact, 'gap': proj.gap}
