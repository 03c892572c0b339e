"""Helly graphs: hulls, recognition, round cliques and circumcliques.

The Helly hull of a connected graph has the integer extremal functions as
vertices (f(x) + f(y) >= d(x, y), f(x) = max_y d(x, y) - f(y), values bounded by
eccentricities), joined exactly when their sup-distance is 1. A graph is Helly
iff its hull adds nothing.

    helly_hull / integer_hull           - hull enumeration
    is_helly                            - hull_equality | berge_triples | brute_force
    helly_verdicts / require_helly      - cross-checked verdicts
    is_clique_helly                     - Helly property of maximal cliques
    ball_closure / round_cliques        - round cliques and their poset
    circumclique                        - canonical clique of a bounded set
    coarse_helly_gap                    - density of a graph in its hull
    interval_stability_bound            - interval-level stability proxy
    one_helly_local_check               - Helly property of radius-1 balls
"""
import itertools
import logging
import warnings
from collections import deque
from fractions import Fraction
from typing import NamedTuple

import networkx as nx
from tqdm import tqdm

from hull_tools.metric_core import BallSpec, graph_distance_matrix, int_table, simple_graph
from hull_tools.posets import from_relation
from shared.config import bound as default_bound
from shared.errors import InstanceTooLarge, MethodDisagreement, NonHellyWarning, NotHelly

log = logging.getLogger("helly_lab.helly")

HELLY_METHODS = ('hull_equality', 'berge_triples', 'brute_force')


# ---------------------------------------------------------------------------
# Schema types

class HullResult(NamedTuple):
    hull: object             # SimpleGraph; vertices 0..n-1 are the originals
    embedding: tuple         # embedding[x] = hull index of e(x)
    functions: tuple         # per hull vertex, a tuple of ints


class Verdict(NamedTuple):
    value: bool
    method: str
    witness: tuple = None    # BallSpecs (or vertex sets for clique families)


class RoundCliqueReport(NamedTuple):
    cliques: tuple           # frozensets, ordered by (size, members)
    poset: object            # Poset of the cliques under inclusion
    helly: bool
    agree: bool              # both descriptions produced the same set
    warnings: tuple


def _clique_key(s):
    return (len(s), tuple(sorted(s)))


def _table(g):
    return int_table(graph_distance_matrix(g))


def linfty(f, g):
    return max((abs(a - b) for a, b in zip(f, g)), default=0)


# ---------------------------------------------------------------------------
# Hull enumeration
#
# Integer extremal functions, joined at sup-distance 1, form a connected
# graph containing the Kuratowski functions. The search walks it from those,
# listing the extremal g with |g - f| <= 1 around each f by backtracking over
# {f(x) - 1, f(x), f(x) + 1}. A partial g is cut when it leaves Delta or an
# assigned x can no longer find its tight partner among the remaining points.

def _unit_neighbors(d, ecc, f):
    """Extremal g != f with |g - f| <= 1."""
    n = len(d)
    g = [0] * n
    out = []

    def windows(i):
        # value windows of points i.. given g[:i]; None when some x < i is stuck
        low = [max(f[y] - 1, 0) for y in range(n)]
        high = [min(f[y] + 1, ecc[y]) for y in range(n)]
        for y in range(i, n):
            for u in range(i):
                low[y] = max(low[y], d[y][u] - g[u], g[u] - d[u][y])
                high[y] = min(high[y], g[u] + d[u][y])
            if low[y] > high[y]:
                return None
        for x in range(i):
            if g[x] == 0 or any(g[x] + g[y] == d[x][y] for y in range(i)):
                continue
            if not any(low[y] <= d[x][y] - g[x] <= high[y] for y in range(i, n)):
                return None
        return low, high

    def search(i):
        bounds = windows(i)
        if bounds is None:
            return
        if i == n:
            if g != list(f):
                out.append(tuple(g))
            return
        low, high = bounds
        for value in range(low[i], high[i] + 1):
            g[i] = value
            search(i + 1)

    search(0)
    return out


def integer_hull_graph(d, progress=False):
    """{function: neighbor functions} over all integer extremal functions."""
    n = len(d)
    if n == 0:
        return {}
    ecc = [max(row) for row in d]
    adjacency = {}
    queue = deque(tuple(row) for row in d)
    bar = tqdm(desc="hull", leave=False, disable=not progress)
    while queue:
        f = queue.popleft()
        if f in adjacency:
            continue
        adjacency[f] = _unit_neighbors(d, ecc, f)
        bar.update(1)
        queue.extend(h for h in adjacency[f] if h not in adjacency)
    bar.close()
    return adjacency


def integer_extremal_functions(d, progress=False):
    """All integer extremal functions of an integer metric table, sorted."""
    return sorted(integer_hull_graph(d, progress=progress))


def integer_hull(d, labels=None, progress=False):
    """Hull graph of an integer metric table; originals come first, in order."""
    n = len(d)
    adjacency = integer_hull_graph(d, progress=progress)
    originals = [tuple(row) for row in d]
    extra = sorted(set(adjacency) - set(originals))
    ordered = originals + extra
    index = {f: i for i, f in enumerate(ordered)}
    edges = sorted({tuple(sorted((index[f], index[h])))
                    for f, near in adjacency.items() for h in near})
    labels = list(labels) if labels else [str(x) for x in range(n)]
    labels += [f"h{i}" for i in range(n, len(ordered))]
    hull = simple_graph(len(ordered), edges, labels=labels)
    log.info("hull of %d points has %d vertices, %d edges", n, hull.n, len(edges))
    return HullResult(hull=hull, embedding=tuple(range(n)), functions=tuple(ordered))


def helly_hull(g, bound=None, progress=False):
    """Helly hull of a connected graph."""
    limit = default_bound('hull_vertices', bound)
    if g.n > limit:
        raise InstanceTooLarge("hull input vertices", g.n, limit)
    return integer_hull(_table(g), labels=[g.label(v) for v in range(g.n)],
                        progress=progress)


# ---------------------------------------------------------------------------
# Balls and closures

def ball_members(d, center, radius):
    return frozenset(y for y in range(len(d)) if d[center][y] <= radius)


def _closure(d, s):
    n = len(d)
    out = frozenset(range(n))
    for v in range(n):
        out &= ball_members(d, v, max(d[v][x] for x in s))
    return out


def ball_closure(g, s):
    """Intersection of all balls containing s."""
    if not s:
        raise ValueError("ball_closure needs a nonempty set")
    return _closure(_table(g), s)


def distinct_balls(d):
    """{members: BallSpec} keeping the smallest (radius, center) for each set."""
    out = {}
    for c in range(len(d)):
        for r in range(max(d[c]) + 1):
            members = ball_members(d, c, r)
            spec = BallSpec(c, r)
            if members not in out or (r, c) < (out[members].radius, out[members].center):
                out[members] = spec
    return out


def _common(d, balls):
    out = frozenset(range(len(d)))
    for b in balls:
        out &= ball_members(d, b.center, b.radius)
    return out


# ---------------------------------------------------------------------------
# Recognition

def _by_hull(g, d, bound):
    limit = default_bound('hull_vertices', bound)
    if g.n > limit:
        raise InstanceTooLarge("hull input vertices", g.n, limit)
    originals = {tuple(row) for row in d}
    for f in integer_extremal_functions(d):
        if f not in originals:
            return Verdict(False, 'hull_equality',
                           tuple(BallSpec(x, f[x]) for x in range(len(d))))
    return Verdict(True, 'hull_equality')


def _by_berge(d, progress=False):
    n = len(d)
    pair_closure = {}
    for a, b in itertools.combinations(range(n), 2):
        pair_closure[(a, b)] = _closure(d, (a, b))
    triples = itertools.combinations(range(n), 3)
    if progress:
        triples = tqdm(triples, desc="berge", leave=False)
    for x, y, z in triples:
        if pair_closure[(x, y)] & pair_closure[(y, z)] & pair_closure[(x, z)]:
            continue
        family = set()
        for a, b in ((x, y), (y, z), (x, z)):
            for v in range(n):
                family.add(BallSpec(v, max(d[v][a], d[v][b])))
        return Verdict(False, 'berge_triples', tuple(sorted(family)))
    return Verdict(True, 'berge_triples')


def _shrink(family, empty):
    """Drop members (largest radius first) while `empty(rest)` still holds."""
    family = list(family)
    for member in sorted(family, key=lambda b: (-b.radius, b.center)):
        rest = [b for b in family if b != member]
        if len(rest) >= 2 and empty(rest):
            family = rest
    return tuple(sorted(family))


def _by_brute_force(g, d, bound):
    limit = default_bound('brute_force_vertices', bound)
    if g.n > limit:
        raise InstanceTooLarge("brute-force vertices", g.n, limit)
    balls = distinct_balls(d)
    keys = sorted(balls, key=_clique_key)
    inter = nx.Graph()
    inter.add_nodes_from(range(len(keys)))
    inter.add_edges_from((i, j) for i, j in itertools.combinations(range(len(keys)), 2)
                         if keys[i] & keys[j])
    for clique in sorted(sorted(c) for c in nx.find_cliques(inter)):
        common = frozenset(range(g.n))
        for i in clique:
            common &= keys[i]
        if not common:
            family = [balls[keys[i]] for i in clique]
            witness = _shrink(family, lambda rest: not _common(d, rest))
            return Verdict(False, 'brute_force', witness)
    return Verdict(True, 'brute_force')


def is_helly(g, method='hull_equality', bound=None, progress=False):
    """Helly verdict by one method; False carries a ball-family witness.

    Args:
        g: connected SimpleGraph.
        method: 'hull_equality', 'berge_triples' or 'brute_force'.
        bound: vertex bound for the chosen method.
    """
    d = _table(g)
    if method == 'hull_equality':
        return _by_hull(g, d, bound)
    if method == 'berge_triples':
        return _by_berge(d, progress=progress)
    if method == 'brute_force':
        return _by_brute_force(g, d, bound)
    raise ValueError(f"unknown Helly method {method!r}")


def helly_verdicts(g, bounds=None):
    """Run every method the size allows; raise MethodDisagreement on a split."""
    bounds = bounds or {}
    verdicts = {}
    if g.n <= default_bound('hull_vertices', bounds.get('hull_vertices')):
        verdicts['hull_equality'] = is_helly(g, 'hull_equality',
                                             bound=bounds.get('hull_vertices'))
    verdicts['berge_triples'] = is_helly(g, 'berge_triples')
    if g.n <= default_bound('brute_force_vertices', bounds.get('brute_force_vertices')):
        verdicts['brute_force'] = is_helly(g, 'brute_force',
                                           bound=bounds.get('brute_force_vertices'))
    if len({v.value for v in verdicts.values()}) > 1:
        raise MethodDisagreement(verdicts)
    return verdicts


def require_helly(g, bound=None):
    """Raise NotHelly unless g is Helly (hull check when small, Berge otherwise)."""
    method = 'hull_equality' if g.n <= default_bound('hull_vertices', bound) else 'berge_triples'
    verdict = is_helly(g, method, bound=bound)
    if not verdict.value:
        raise NotHelly(verdict.witness)
    return verdict


# ---------------------------------------------------------------------------
# Clique-Helly

def maximal_cliques(g):
    return sorted((frozenset(c) for c in nx.find_cliques(g.to_networkx())), key=_clique_key)


def set_family_helly(family, n):
    """Helly property of a set family on ground set 0..n-1 by the triple criterion.

    Returns None or a pairwise-intersecting subfamily with empty intersection.
    """
    for triple in itertools.combinations(range(n), 3):
        members = [s for s in family if len(s & set(triple)) >= 2]
        if len(members) < 2:
            continue
        if not frozenset.intersection(*members):
            return _shrink_sets(members)
    return None


def _shrink_sets(members):
    members = sorted(members, key=_clique_key)
    for m in list(members):
        rest = [s for s in members if s != m]
        if len(rest) >= 2 and not frozenset.intersection(*rest):
            members = rest
    return tuple(members)


def set_family_brute_force(family):
    inter = nx.Graph()
    inter.add_nodes_from(range(len(family)))
    inter.add_edges_from((i, j) for i, j in itertools.combinations(range(len(family)), 2)
                         if family[i] & family[j])
    for clique in sorted(sorted(c) for c in nx.find_cliques(inter)):
        members = [family[i] for i in clique]
        if not frozenset.intersection(*members):
            return _shrink_sets(members)
    return None


def is_clique_helly(g, bound=None):
    """Helly property of the family of maximal cliques."""
    cliques = maximal_cliques(g)
    witness = set_family_helly(cliques, g.n)
    if g.n <= default_bound('clique_cross_check_vertices', bound):
        brute = set_family_brute_force(cliques)
        if (witness is None) != (brute is None):
            raise MethodDisagreement({
                'triple_criterion': Verdict(witness is None, 'triple_criterion', witness),
                'brute_force': Verdict(brute is None, 'brute_force', brute),
            })
    if witness is None:
        return Verdict(True, 'clique_helly')
    return Verdict(False, 'clique_helly', tuple(tuple(sorted(s)) for s in witness))


def one_helly_local_check(g, centers):
    """Helly property of the radius-1 balls about `centers`.

    Balls B(u, 1), B(v, 1) meet iff d(u, v) <= 2, so the maximal
    pairwise-intersecting subfamilies are the maximal cliques of the
    distance-at-most-2 graph on the centers. Each center's ball must lie
    fully inside g.
    """
    nxg = g.to_networkx()
    centers = sorted(centers)
    balls = {u: frozenset([u, *g.adj[u]]) for u in centers}
    near = nx.Graph()
    near.add_nodes_from(centers)
    for u in centers:
        reach = nx.single_source_shortest_path_length(nxg, u, cutoff=2)
        near.add_edges_from((u, v) for v in reach if v in balls and v != u)
    for clique in sorted(sorted(c) for c in nx.find_cliques(near)):
        if not frozenset.intersection(*(balls[u] for u in clique)):
            return Verdict(False, 'one_helly', tuple(BallSpec(u, 1) for u in clique))
    return Verdict(True, 'one_helly')


# ---------------------------------------------------------------------------
# Round cliques

def _is_clique(g, s):
    return all(v in g.adj[u] for u, v in itertools.combinations(s, 2))


def round_cliques(g, bound=None):
    """All round cliques, by ball closure and by maximal-clique intersections."""
    d = _table(g)
    ball_closed = set()
    for clique in nx.enumerate_all_cliques(g.to_networkx()):
        s = frozenset(clique)
        if _closure(d, s) == s:
            ball_closed.add(s)

    maximal = maximal_cliques(g)
    by_intersection = {frozenset([v]) for v in range(g.n)}
    layer = set(maximal)
    while layer:
        by_intersection |= layer
        layer = {a & b for a in layer for b in maximal
                 if a & b and (a & b) not in by_intersection}

    helly = require_helly_quiet(g, bound)
    notes = []
    agree = ball_closed == by_intersection
    if not helly:
        msg = "graph is not Helly; round cliques listed by ball closure"
        warnings.warn(msg, NonHellyWarning, stacklevel=2)
        notes.append(msg)
    elif not agree:
        raise MethodDisagreement({'ball_closed': len(ball_closed),
                                  'clique_intersections': len(by_intersection)})

    cliques = tuple(sorted(ball_closed, key=_clique_key))
    poset = from_relation(cliques, lambda a, b: a <= b)
    return RoundCliqueReport(cliques=cliques, poset=poset, helly=helly, agree=agree,
                             warnings=tuple(notes))


def require_helly_quiet(g, bound=None):
    try:
        require_helly(g, bound=bound)
    except NotHelly:
        return False
    return True


# ---------------------------------------------------------------------------
# Circumclique

def _diameter(d, s):
    return max((d[a][b] for a in s for b in s), default=0)


def circumclique(g, k, bound=None):
    """Canonical round clique of a nonempty vertex set of a Helly graph.

    K_0 is the ball closure of k. While diam(K_n) = D > 1:
    K' = K_n intersected with B(x, ceil(D/2)) for all x in K_n, then
    K_(n+1) = the points x of K' with K' inside B(x, ir(K')), where ir is the
    least radius of a ball centred in K' containing K'.
    """
    if not k:
        raise ValueError("circumclique needs a nonempty set")
    require_helly(g, bound=bound)
    d = _table(g)
    current = _closure(d, k)
    while True:
        diam = _diameter(d, current)
        if diam <= 1:
            return current
        half = -(-diam // 2)
        shrunk = set(current)
        for x in current:
            shrunk &= ball_members(d, x, half)
        inner = min(max(d[a][b] for b in shrunk) for a in shrunk)
        current = frozenset(a for a in shrunk if max(d[a][b] for b in shrunk) <= inner)
        log.debug("circumclique step: diameter %d -> %d", diam, _diameter(d, current))


# ---------------------------------------------------------------------------
# Density and stability

def coarse_helly_gap(g, bound=None):
    """max over hull vertices f of min over x of d_inf(f, e(x))."""
    result = helly_hull(g, bound=bound)
    originals = result.functions[:g.n]
    return max(min(linfty(f, e) for e in originals) for f in result.functions)


def interval_stability_bound(g):
    """Largest one-sided Hausdorff distance from I(x, y) to I(x, z) over edges yz.

    A proxy: it compares interval sets, not geodesic paths.
    """
    d = _table(g)
    n = len(d)
    intervals = {(a, b): [z for z in range(n) if d[a][z] + d[z][b] == d[a][b]]
                 for a in range(n) for b in range(n)}
    worst = 0
    for x in range(n):
        for y in range(n):
            for z in g.adj[y]:
                target = intervals[(x, z)]
                for p in intervals[(x, y)]:
                    worst = max(worst, min(d[p][q] for q in target))
    return Fraction(worst)


# ---------------------------------------------------------------------------
# Entry point

def run(config):
    """Launcher entry for `helly check|hull|round-cliques|circumclique|gap|stability`."""
    g = config['graph']
    action = config.get('action', 'check')
    bounds = config.get('bounds', {})

    if action == 'check':
        method = config.get('method')
        if method:
            verdicts = {method: is_helly(g, method, bound=bounds.get(
                'brute_force_vertices' if method == 'brute_force' else 'hull_vertices'),
                progress=config.get('progress', False))}
        else:
            verdicts = helly_verdicts(g, bounds)
        value = all(v.value for v in verdicts.values())
        return {'kind': 'helly_check', 'helly': value,
                'methods': {name: {'value': v.value, 'witness': v.witness}
                            for name, v in sorted(verdicts.items())},
                'verdict': value}
    if action == 'clique':
        v = is_clique_helly(g, bound=bounds.get('clique_cross_check_vertices'))
        return {'kind': 'clique_helly', 'clique_helly': v.value, 'witness': v.witness,
                'verdict': v.value}
    if action == 'hull':
        result = helly_hull(g, bound=bounds.get('hull_vertices'),
                            progress=config.get('progress', False))
        return {'kind': 'helly_hull', 'original': g.n, 'hull': result.hull,
                'functions': result.functions, 'embedding': result.embedding}
    if action == 'round-cliques':
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonHellyWarning)
            report = round_cliques(g, bound=bounds.get('hull_vertices'))
        return {'kind': 'round_cliques', 'labels': [g.label(v) for v in range(g.n)],
                'cliques': report.cliques, 'helly': report.helly,
                'covers': report.poset.hasse, 'warnings': list(report.warnings)}
    if action == 'circumclique':
        clique = circumclique(g, frozenset(config['vertices']),
                              bound=bounds.get('hull_vertices'))
        return {'kind': 'circumclique', 'input': sorted(config['vertices']),
                'clique': sorted(clique)}
    if action == 'gap':
        return {'kind': 'coarse_helly_gap',
                'gap': coarse_helly_gap(g, bound=bounds.get('hull_vertices'))}
    return {'kind': 'interval_stability', 'bound': interval_stability_bound(g),
            'proxy': 'interval sets, not geodesic paths'}
