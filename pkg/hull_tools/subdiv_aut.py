"""Helly subdivisions and the classification of automorphisms.

Finite graphs: every automorphism is elliptic and stabilizes the circumclique
of any orbit. Infinite graphs are reached through a GraphOracle (a lazy
neighbor function) and only their translation lengths are estimated, inside
a bounded window, with a certificate when the distances grow periodically.
"""
import itertools
import logging
import math
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import Callable, NamedTuple

from sympy.combinatorics import Permutation

from hull_tools.helly import circumclique, integer_hull, require_helly, round_cliques
from hull_tools.metric_core import graph_distance_matrix, int_table, simple_graph
from shared.config import bound as default_bound
from shared.errors import BadSpec, InstanceTooLarge, NotAutomorphism, WindowExhausted

log = logging.getLogger("helly_lab.subdiv_aut")


# ---------------------------------------------------------------------------
# Schema types

class SubdivisionResult(NamedTuple):
    graph: object            # SimpleGraph
    vertex_meaning: tuple    # round clique (frozenset) or scaled function per vertex
    scale: int               # 2 * N!
    embedding: tuple         # embedding[x] = subdivision vertex of original x


class GraphAutomorphism(NamedTuple):
    forward: object          # tuple (finite) or callable (oracle)
    backward: object


class GraphOracle(NamedTuple):
    name: str
    basepoint: object
    neighbors: Callable      # vertex -> sorted list of neighbors


class AutomorphismClass(NamedTuple):
    kind: str                # 'elliptic', 'hyperbolic' or 'unclassified'
    clique: frozenset = None
    subdivision_vertex: int = None
    fixed_cliques: tuple = ()
    length: Fraction = None


class TranslationLength(NamedTuple):
    estimate: Fraction
    certified: bool
    period: int = None       # a, with d(g^(a m) v, v) = m L
    step: int = None         # L
    distances: tuple = ()    # d(g^k v, v) for k = 1..horizon


# ---------------------------------------------------------------------------
# Subdivisions

def first_subdivision(g, bound=None):
    """Round cliques joined when they meet and their union is a clique."""
    require_helly(g, bound=bound)
    cliques = round_cliques(g, bound=bound).cliques
    edges = []
    for i, j in itertools.combinations(range(len(cliques)), 2):
        a, b = cliques[i], cliques[j]
        union = a | b
        if a & b and all(v in g.adj[u] for u, v in itertools.combinations(union, 2)):
            edges.append((i, j))
    labels = ["{" + ",".join(g.label(v) for v in sorted(c)) + "}" for c in cliques]
    graph = simple_graph(len(cliques), edges, labels=labels)
    embedding = tuple(cliques.index(frozenset([x])) for x in range(g.n))
    return SubdivisionResult(graph=graph, vertex_meaning=cliques, scale=2,
                             embedding=embedding)


def _clique_of_function(d, f):
    """Round clique carried by a doubled extremal function."""
    out = frozenset(range(len(d)))
    for x, value in enumerate(f):
        radius = -(-value // 2)
        out &= frozenset(y for y in range(len(d)) if d[x][y] <= radius)
    return out


def nth_subdivision(g, n, bound=None, hull_bound=None):
    """Hull of the metric 2 * n! * d restricted to integer functions."""
    if n < 1:
        raise ValueError("subdivision order must be at least 1")
    scale = 2 * math.factorial(n)
    limit = default_bound('subdivision_size', bound)
    if scale * g.n > limit:
        raise InstanceTooLarge("subdivision size (2*N!)*|V|", scale * g.n, limit)
    require_helly(g, bound=hull_bound)
    d = int_table(graph_distance_matrix(g))
    scaled = [[scale * x for x in row] for row in d]
    result = integer_hull(scaled, labels=[g.label(v) for v in range(g.n)])
    if n == 1:
        meaning = tuple(_clique_of_function(d, f) for f in result.functions)
    else:
        meaning = result.functions
    return SubdivisionResult(graph=result.hull, vertex_meaning=meaning, scale=scale,
                             embedding=result.embedding)


# ---------------------------------------------------------------------------
# Automorphisms of finite graphs

def automorphism_from_permutation(perm):
    """GraphAutomorphism from an image tuple or a sympy Permutation."""
    if isinstance(perm, Permutation):
        perm = perm.array_form
    forward = tuple(perm)
    backward = [0] * len(forward)
    for i, image in enumerate(forward):
        backward[image] = i
    return GraphAutomorphism(forward=forward, backward=tuple(backward))


def parse_cycles(text, n):
    """'(0 1)(2 3)' -> GraphAutomorphism on n vertices."""
    text = text.strip()
    if not text or text == "()":
        return automorphism_from_permutation(tuple(range(n)))
    cycles = []
    for chunk in text.replace(")", "").split("(")[1:]:
        items = chunk.replace(",", " ").split()
        try:
            cycles.append([int(x) for x in items])
        except ValueError as e:
            raise BadSpec(text, "cycle entries must be vertex indices") from e
    try:
        perm = Permutation(cycles, size=n)
    except ValueError as e:
        raise BadSpec(text, str(e)) from e
    if perm.size != n:
        raise BadSpec(text, f"mentions vertices outside 0..{n - 1}")
    return automorphism_from_permutation(perm)


def verify_automorphism(g, a):
    """Raise NotAutomorphism unless `a` is an adjacency-preserving bijection."""
    fwd, bwd = a.forward, a.backward
    if len(fwd) != g.n or len(bwd) != g.n:
        raise NotAutomorphism(f"map has {len(fwd)} entries for {g.n} vertices")
    for v in range(g.n):
        if bwd[fwd[v]] != v or fwd[bwd[v]] != v:
            raise NotAutomorphism(f"forward and backward disagree at vertex {v}")
    for u, v in g.edges():
        if not g.has_edge(fwd[u], fwd[v]):
            raise NotAutomorphism("edge not preserved", edge=(u, v))


def _image(a, s):
    return frozenset(a.forward[v] for v in s)


def induced_subdivision_automorphism(sub, a):
    """Action of `a` on the round cliques, as an image tuple of vertex indices."""
    index = {c: i for i, c in enumerate(sub.vertex_meaning)}
    return tuple(index[_image(a, c)] for c in sub.vertex_meaning)


def fixed_round_cliques(sub, a):
    """Round cliques of a first subdivision that `a` maps onto themselves."""
    return tuple(c for c in sub.vertex_meaning if _image(a, c) == c)


def classify_automorphism(g, a, bound=None):
    """Elliptic certificate for an automorphism of a finite Helly graph."""
    verify_automorphism(g, a)
    require_helly(g, bound=bound)
    orbit = {0}
    v = a.forward[0]
    while v not in orbit:
        orbit.add(v)
        v = a.forward[v]
    clique = circumclique(g, frozenset(orbit), bound=bound)
    sub = first_subdivision(g, bound=bound)
    return AutomorphismClass(kind='elliptic', clique=clique,
                             subdivision_vertex=sub.vertex_meaning.index(clique),
                             fixed_cliques=fixed_round_cliques(sub, a))


# ---------------------------------------------------------------------------
# Oracles

def king_oracle(dims):
    """Z^dims with l-infinity adjacency."""
    steps = [s for s in itertools.product((-1, 0, 1), repeat=dims) if any(s)]

    def neighbors(x):
        return sorted(tuple(a + b for a, b in zip(x, s)) for s in steps)
    return GraphOracle(name=f"king:{dims}", basepoint=(0,) * dims, neighbors=neighbors)


def tree_oracle(degree):
    """The degree-regular tree as reduced words in `degree` involutions."""
    def neighbors(w):
        out = [w[:-1]] if w else []
        out += [w + (c,) for c in range(degree) if not w or c != w[-1]]
        return sorted(out)
    return GraphOracle(name=f"tree:{degree}", basepoint=(), neighbors=neighbors)


def _reduce_word(word):
    out = []
    for c in word:
        if out and out[-1] == c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def parse_oracle(spec):
    kind, _, arg = spec.partition(":")
    try:
        value = int(arg)
    except ValueError as e:
        raise BadSpec(spec, "expected king:N or tree:d") from e
    if kind == "king" and value >= 1:
        return king_oracle(value)
    if kind == "tree" and value >= 2:
        return tree_oracle(value)
    raise BadSpec(spec, "expected king:N (N >= 1) or tree:d (d >= 2)")


def parse_oracle_map(oracle, spec):
    """Automorphism of a built-in oracle from a map spec.

    king:N accepts 'identity', 'shift-bump' (x1..xN -> x2+1, x3, .., xN, x1)
    and 'translate:v1,..,vN'; tree:d accepts 'identity' and 'word:c1,..,ck'
    (left multiplication by the word).
    """
    kind = oracle.name.split(":")[0]
    dims = len(oracle.basepoint) if kind == "king" else None
    name, _, arg = spec.partition(":")
    if name == "identity":
        return GraphAutomorphism(forward=lambda x: x, backward=lambda x: x)
    if kind == "king" and name == "shift-bump":
        if dims < 2:
            raise BadSpec(spec, "shift-bump needs N >= 2")
        return GraphAutomorphism(
            forward=lambda x: (x[1] + 1, *x[2:], x[0]),
            backward=lambda y: (y[-1], y[0] - 1, *y[1:-1]),
        )
    if kind == "king" and name == "translate":
        try:
            vec = tuple(int(t) for t in arg.split(","))
        except ValueError as e:
            raise BadSpec(spec, "translation entries must be integers") from e
        if len(vec) != dims:
            raise BadSpec(spec, f"translation needs {dims} entries")
        return GraphAutomorphism(
            forward=lambda x: tuple(a + b for a, b in zip(x, vec)),
            backward=lambda x: tuple(a - b for a, b in zip(x, vec)),
        )
    if kind == "tree" and name == "word":
        degree = int(oracle.name.split(":")[1])
        try:
            word = tuple(int(t) for t in arg.split(","))
        except ValueError as e:
            raise BadSpec(spec, "word letters must be integers") from e
        if any(not 0 <= c < degree for c in word):
            raise BadSpec(spec, f"letters must lie in 0..{degree - 1}")
        inverse = tuple(reversed(word))
        return GraphAutomorphism(
            forward=lambda w: _reduce_word(word + w),
            backward=lambda w: _reduce_word(inverse + w),
        )
    raise BadSpec(spec, f"unknown map for {oracle.name}")


def check_oracle_automorphism(o, a, radius=2):
    """Verify `a` on the ball of `radius` about the basepoint."""
    neighbors = lru_cache(maxsize=None)(o.neighbors)
    seen = {o.basepoint}
    frontier = [o.basepoint]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            image_nbrs = set(neighbors(a.forward(u)))
            if a.backward(a.forward(u)) != u:
                raise NotAutomorphism(f"backward does not invert forward at {u}")
            for w in neighbors(u):
                if a.forward(w) not in image_nbrs:
                    raise NotAutomorphism("edge not preserved", edge=(u, w))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt


def window_distance(neighbors, source, target, radius):
    """Bidirectional BFS distance, or None when it exceeds `radius`."""
    if source == target:
        return 0
    dist = ({source: 0}, {target: 0})
    fronts = (deque([source]), deque([target]))
    depth = [0, 0]
    while depth[0] + depth[1] < radius and fronts[0] and fronts[1]:
        side = 0 if len(fronts[0]) <= len(fronts[1]) else 1
        mine, other = dist[side], dist[1 - side]
        best = None
        for _ in range(len(fronts[side])):
            u = fronts[side].popleft()
            for w in neighbors(u):
                if w in mine:
                    continue
                mine[w] = depth[side] + 1
                fronts[side].append(w)
                if w in other:
                    total = mine[w] + other[w]
                    best = total if best is None else min(best, total)
        depth[side] += 1
        if best is not None:
            return best
    return None


def translation_length(o, a, n, horizon, radius=None):
    """Estimate the translation length of `a` at the basepoint.

    Computes d_k = d(a^k v, v) for k = 1..horizon. Certified when some period
    p <= 2n has d_(p m) = m * d_p for every multiple of p up to the horizon,
    with at least two multiples; the length is then d_p / p.
    """
    radius = default_bound('window_radius', radius)
    neighbors = lru_cache(maxsize=None)(o.neighbors)
    point = o.basepoint
    distances = []
    for k in range(1, horizon + 1):
        point = a.forward(point)
        dk = window_distance(neighbors, o.basepoint, point, radius)
        if dk is None:
            estimate = Fraction(distances[-1], k - 1) if distances else None
            raise WindowExhausted(k, radius, estimate=estimate)
        distances.append(dk)
    log.debug("orbit distances %s", distances)

    for p in range(1, min(2 * n, horizon // 2) + 1):
        step = distances[p - 1]
        if all(distances[p * m - 1] == m * step for m in range(1, horizon // p + 1)):
            return TranslationLength(estimate=Fraction(step, p), certified=True,
                                     period=p, step=step, distances=tuple(distances))
    return TranslationLength(estimate=Fraction(distances[-1], horizon), certified=False,
                             distances=tuple(distances))


def classify_oracle_automorphism(o, a, n, horizon, radius=None):
    """Hyperbolic when a positive length is certified, elliptic when it is 0."""
    result = translation_length(o, a, n, horizon, radius=radius)
    if not result.certified:
        return AutomorphismClass(kind='unclassified', length=result.estimate)
    if result.estimate == 0:
        return AutomorphismClass(kind='elliptic', length=Fraction(0))
    return AutomorphismClass(kind='hyperbolic', length=result.estimate)


# ---------------------------------------------------------------------------
# Entry points

def run(config):
    """Launcher entry for `subdivide` and `aut classify|length`."""
    action = config.get('action', 'subdivide')
    bounds = config.get('bounds', {})

    if action == 'subdivide':
        g = config['graph']
        n = config.get('n', 1)
        if config.get('construction', 'hull') == 'round-cliques':
            sub = first_subdivision(g, bound=bounds.get('hull_vertices'))
        else:
            sub = nth_subdivision(g, n, bound=bounds.get('subdivision_size'),
                                  hull_bound=bounds.get('hull_vertices'))
        return {'kind': 'subdivision', 'original': g.n, 'graph': sub.graph,
                'scale': sub.scale, 'embedding': sub.embedding,
                'meaning': sub.vertex_meaning}

    if action == 'classify':
        g = config['graph']
        a = parse_cycles(config['perm'], g.n)
        cls = classify_automorphism(g, a, bound=bounds.get('hull_vertices'))
        return {'kind': 'automorphism', 'class': cls.kind,
                'clique': sorted(cls.clique),
                'subdivision_vertex': cls.subdivision_vertex,
                'fixed_cliques': [sorted(c) for c in cls.fixed_cliques]}

    o = parse_oracle(config['oracle'])
    a = parse_oracle_map(o, config['map'])
    check_oracle_automorphism(o, a)
    dims = len(o.basepoint) if o.name.startswith("king") else 1
    result = translation_length(o, a, config.get('n') or dims, config['horizon'],
                                radius=bounds.get('window_radius'))
    return {'kind': 'translation_length', 'length': result.estimate,
            'certified': result.certified, 'period': result.period,
            'step': result.step, 'distances': list(result.distances)}
