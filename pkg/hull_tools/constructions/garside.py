"""The 3-strand braid group as a Garside group.

Simple braids are the six permutations of S3 (sympy Permutations), ordered by
the weak order; Delta is the longest one. An element is stored in left normal
form as (inf, factors): Delta**inf followed by proper simple factors, each
pair left-weighted. Equality of braids is equality of normal forms.
"""
import itertools
import logging
from collections import deque
from typing import NamedTuple

from sympy.combinatorics import Permutation

from hull_tools.metric_core import simple_graph
from shared.config import bound as default_bound
from shared.errors import RadiusTooLarge

log = logging.getLogger("helly_lab.garside")

A = Permutation([1, 0, 2])
B = Permutation([0, 2, 1])
ONE = Permutation([0, 1, 2])
DELTA = A * B * A

SIMPLES = tuple(sorted((ONE, A, B, A * B, B * A, DELTA),
                       key=lambda p: (p.inversions(), p.array_form)))
SIMPLE_NAMES = {ONE: '1', A: 'a', B: 'b', A * B: 'ab', B * A: 'ba', DELTA: 'D'}


class Braid(NamedTuple):
    inf: int
    factors: tuple           # proper simples (neither 1 nor Delta), left-weighted

    def __str__(self):
        parts = []
        if self.inf:
            parts.append("D" if self.inf == 1 else f"D^{self.inf}")
        parts += [SIMPLE_NAMES[s] for s in self.factors]
        return ".".join(parts) if parts else "1"


IDENTITY = Braid(0, ())


# ---------------------------------------------------------------------------
# Simple braids

def length(s):
    return s.inversions()


def weak_leq(x, y):
    """x is a prefix of y among simples."""
    return length(x) + length(~x * y) == length(y)


def tau(s):
    """Conjugation by Delta: s Delta = Delta tau(s)."""
    return ~DELTA * s * DELTA


def complement(s):
    """The simple d with s d = Delta."""
    return ~s * DELTA


def _pull(x, y):
    """Largest prefix z of y with x z simple; returns (x z, z^-1 y)."""
    best = ONE
    for z in SIMPLES:
        if weak_leq(z, y) and length(x * z) == length(x) + length(z):
            if length(z) > length(best):
                best = z
    return x * best, ~best * y


# ---------------------------------------------------------------------------
# Normal forms and the group law

def normal_form(inf, word):
    """Left normal form of Delta**inf times a word of simples."""
    word = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            x, y = _pull(word[i], word[i + 1])
            if (x, y) != (word[i], word[i + 1]):
                word[i], word[i + 1] = x, y
                changed = True
    while word and word[0] == DELTA:
        word.pop(0)
        inf += 1
    while word and word[-1] == ONE:
        word.pop()
    return Braid(inf, tuple(word))


def _tau_power(s, q):
    return tau(s) if q % 2 else s


def multiply(x, y):
    """Delta^p A . Delta^q B = Delta^(p+q) tau^q(A) B."""
    moved = [_tau_power(s, y.inf) for s in x.factors]
    return normal_form(x.inf + y.inf, moved + list(y.factors))


def simple_braid(s):
    return normal_form(0, [s])


def inverse(x):
    """A^-1 = complement(A) Delta^-1, applied factor by factor."""
    out = Braid(-x.inf, ())
    for s in x.factors:
        out = multiply(Braid(-1, (tau(complement(s)),)), out)
    return out


def prefix_leq(x, y):
    """x <= y in the prefix order: x^-1 y is a positive braid."""
    return multiply(inverse(x), y).inf >= 0


def shift(x):
    """Right multiplication by Delta."""
    return multiply(x, Braid(1, ()))


def unshift(x):
    return multiply(x, Braid(-1, ()))


# ---------------------------------------------------------------------------
# Cayley ball for S^-1 S

def generators():
    """Nontrivial elements of S^-1 S, sorted by label."""
    out = {multiply(inverse(simple_braid(s)), simple_braid(t))
           for s, t in itertools.product(SIMPLES, repeat=2)}
    out.discard(IDENTITY)
    return sorted(out, key=str)


class CayleyBall(NamedTuple):
    elements: tuple          # Braids ordered by (distance, label)
    distance: dict           # Braid -> word length
    graph: object            # SimpleGraph with normal-form labels


def cayley_ball(radius, bound=None):
    limit = default_bound('garside_radius', bound)
    if radius > limit:
        raise RadiusTooLarge(radius, limit)
    gens = generators()
    dist = {IDENTITY: 0}
    queue = deque([IDENTITY])
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for g in gens:
            y = multiply(x, g)
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    elements = tuple(sorted(dist, key=lambda e: (dist[e], str(e))))
    index = {e: i for i, e in enumerate(elements)}
    edges = set()
    for x in elements:
        for g in gens:
            y = multiply(x, g)
            if y in index:
                edges.add(tuple(sorted((index[x], index[y]))))
    graph = simple_graph(len(elements), sorted(edges), labels=[str(e) for e in elements])
    log.info("B3 ball of radius %d: %d elements, %d edges", radius, graph.n, len(edges))
    return CayleyBall(elements=elements, distance=dist, graph=graph)


def garside_b3_ball(radius, bound=None):
    """Ball of `radius` about the identity in the Cayley graph of B3 w.r.t. S^-1 S."""
    return cayley_ball(radius, bound=bound).graph
