"""Finite posets: bowties, lattice and flag checks, chain complexes.

Elements are stored by index; `elements[i]` is the caller's identifier. The
order is kept both as its reflexive closure and as the Hasse (covering)
relation, both computed with networkx.
"""
import itertools
from typing import NamedTuple, TypedDict

import networkx as nx

from shared.errors import BadSpec


# ---------------------------------------------------------------------------
# Schema types

class Poset(NamedTuple):
    elements: tuple          # identifiers, index i <-> elements[i]
    leq: frozenset           # (i, j) with elements[i] <= elements[j], reflexive
    hasse: tuple             # sorted covering pairs (i, j)

    @property
    def size(self):
        return len(self.elements)

    def le(self, i, j):
        return (i, j) in self.leq

    def lt(self, i, j):
        return i != j and (i, j) in self.leq

    def comparable(self, i, j):
        return (i, j) in self.leq or (j, i) in self.leq

    def up_set(self, i):
        return frozenset(j for j in range(self.size) if (i, j) in self.leq)

    def down_set(self, i):
        return frozenset(j for j in range(self.size) if (j, i) in self.leq)

    def upper_bounds(self, items, within=None):
        pool = range(self.size) if within is None else within
        return frozenset(u for u in pool if all((a, u) in self.leq for a in items))

    def lower_bounds(self, items, within=None):
        pool = range(self.size) if within is None else within
        return frozenset(u for u in pool if all((u, a) in self.leq for a in items))

    def _extreme(self, candidates, greatest):
        for c in candidates:
            if greatest and all((o, c) in self.leq for o in candidates):
                return c
            if not greatest and all((c, o) in self.leq for o in candidates):
                return c
        return None

    def meet(self, i, j, within=None):
        """Greatest common lower bound inside `within`, or None."""
        return self._extreme(self.lower_bounds((i, j), within), greatest=True)

    def join(self, i, j, within=None):
        """Least common upper bound inside `within`, or None."""
        return self._extreme(self.upper_bounds((i, j), within), greatest=False)

    def dual(self):
        return _make(self.elements, {(j, i) for i, j in self.leq})

    def is_graded(self):
        """True when all maximal chains between any comparable pair have equal length."""
        dag = nx.DiGraph(self.hasse)
        dag.add_nodes_from(range(self.size))
        for i, j in self.leq:
            if i == j:
                continue
            lengths = {len(p) for p in nx.all_simple_paths(dag, i, j)}
            if len(lengths) > 1:
                return False
        return True


def _make(elements, pairs):
    n = len(elements)
    strict = nx.DiGraph()
    strict.add_nodes_from(range(n))
    strict.add_edges_from((i, j) for i, j in pairs if i != j)
    if not nx.is_directed_acyclic_graph(strict):
        cycle = nx.find_cycle(strict)
        raise BadSpec(str([elements[u] for u, _ in cycle]), "order relation has a cycle")
    closure = nx.transitive_closure_dag(strict)
    reduction = nx.transitive_reduction(closure)
    leq = frozenset(closure.edges()) | frozenset((i, i) for i in range(n))
    return Poset(elements=tuple(elements), leq=leq, hasse=tuple(sorted(reduction.edges())))


def from_hasse(elements, covers):
    """Poset from identifiers and (lower, upper) identifier pairs."""
    index = {e: i for i, e in enumerate(elements)}
    try:
        pairs = {(index[a], index[b]) for a, b in covers}
    except KeyError as e:
        raise BadSpec(str(e.args[0]), "unknown poset element") from e
    return _make(elements, pairs)


def from_relation(elements, le):
    """Poset from identifiers and a predicate le(a, b)."""
    pairs = {(i, j) for i, a in enumerate(elements) for j, b in enumerate(elements)
             if le(a, b)}
    return _make(elements, pairs)


# ---------------------------------------------------------------------------
# Checks

class PosetReport(TypedDict):
    bowties: list            # (a, b, c, d) identifiers, a, b <= c, d
    is_lattice: bool
    up_flag_failures: list   # (x, kind, elements), kind 'semilattice' or 'flag'
    down_flag_failures: list  # same shape, checked on the down-set of x
    graded: bool


def find_bowties(p):
    """Index quadruples (a, b, c, d): a, b incomparable below incomparable c, d,
    with nothing in between both pairs."""
    out = []
    antichains = [(a, b) for a, b in itertools.combinations(range(p.size), 2)
                  if not p.comparable(a, b)]
    for a, b in antichains:
        ups = p.upper_bounds((a, b))
        for c, d in antichains:
            if c not in ups or d not in ups:
                continue
            between = [x for x in ups if p.le(x, c) and p.le(x, d)]
            if not between:
                out.append((a, b, c, d))
    return out


def is_lattice(p):
    for i, j in itertools.combinations(range(p.size), 2):
        if p.meet(i, j) is None or p.join(i, j) is None:
            return False
    return True


def _flag_failures(p, x, upward):
    region = p.up_set(x) if upward else p.down_set(x)
    failures = []
    combine = p.meet if upward else p.join
    bounds = p.upper_bounds if upward else p.lower_bounds
    members = sorted(region)
    for a, b in itertools.combinations(members, 2):
        if combine(a, b, within=region) is None:
            failures.append((x, 'semilattice', (a, b)))
    for a, b, c in itertools.combinations(members, 3):
        pairwise = (bounds((a, b), region) and bounds((b, c), region)
                    and bounds((a, c), region))
        if pairwise and not bounds((a, b, c), region):
            failures.append((x, 'flag', (a, b, c)))
    return failures


def poset_check(p):
    """Bowties, lattice property and local flag conditions of every element."""
    name = p.elements.__getitem__

    def render(failures):
        return [(name(x), kind, tuple(name(e) for e in els)) for x, kind, els in failures]

    up, down = [], []
    for x in range(p.size):
        up.extend(_flag_failures(p, x, upward=True))
        down.extend(_flag_failures(p, x, upward=False))
    return PosetReport(
        bowties=[tuple(name(i) for i in q) for q in find_bowties(p)],
        is_lattice=is_lattice(p),
        up_flag_failures=render(up),
        down_flag_failures=render(down),
        graded=p.is_graded(),
    )


# ---------------------------------------------------------------------------
# Orthoscheme chains

class ChainComplex(NamedTuple):
    simplices: tuple         # chains v0 < v1 < ... as identifier tuples
    f_vector: tuple          # f_vector[k] = number of chains with k + 1 elements


def orthoscheme_chains(p):
    """All nonempty chains, i.e. cliques of the comparability graph."""
    comp = nx.Graph()
    comp.add_nodes_from(range(p.size))
    comp.add_edges_from((i, j) for i, j in p.leq if i != j)
    height = {i: len(p.down_set(i)) for i in range(p.size)}
    chains = []
    for clique in nx.enumerate_all_cliques(comp):
        chain = sorted(clique, key=lambda i: height[i])
        chains.append(tuple(p.elements[i] for i in chain))
    chains.sort(key=lambda c: (len(c), [str(e) for e in c]))
    counts = [0] * max((len(c) for c in chains), default=0)
    for c in chains:
        counts[len(c) - 1] += 1
    return ChainComplex(simplices=tuple(chains), f_vector=tuple(counts))


# ---------------------------------------------------------------------------
# Entry point

def run(config):
    """Launcher entry for `poset check|chains`."""
    p = config['poset']
    if config.get('action', 'check') == 'chains':
        cc = orthoscheme_chains(p)
        return {'kind': 'poset_chains', 'f_vector': list(cc.f_vector),
                'simplices': [list(s) for s in cc.simplices]}
    report = poset_check(p)
    return {'kind': 'poset_check', **report}
