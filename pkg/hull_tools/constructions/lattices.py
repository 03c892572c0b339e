"""Helly graphs from lattices with a cofinal increasing automorphism.

A LatticeAction is explored through a finite window. Two elements are joined
when unshift(x) <= y <= shift(x); the graph distance should then equal the
order distance min{t : unshift^t(x) <= y <= shift^t(x)}. Only the interior
(elements whose whole neighborhood lies in the window) is certified.
"""
import itertools
import logging
from typing import Callable, NamedTuple

from hull_tools.constructions import garside
from hull_tools.helly import is_helly
from hull_tools.metric_core import graph_distance_matrix, induced_subgraph, simple_graph
from hull_tools.posets import from_relation
from shared.errors import WindowTooSmall

log = logging.getLogger("helly_lab.lattices")


class LatticeAction(NamedTuple):
    name: str
    window: tuple            # explored elements, in a fixed order
    interior: tuple          # elements whose neighbors all lie in the window
    leq: Callable
    shift: Callable          # increasing order automorphism
    unshift: Callable        # its inverse
    label: Callable = str
    meet: Callable = None    # greatest lower bound, when known in closed form
    join: Callable = None    # least upper bound, when known in closed form


class LatticeGraph(NamedTuple):
    graph: object            # SimpleGraph on the window
    interior: tuple          # window indices of interior elements
    distance_mismatches: list  # (x, y, graph distance, order distance)
    interior_helly: bool


def window_poset(la):
    return from_relation(la.window, la.leq)


def order_distance(la, x, y, limit=64):
    """min t >= 0 with unshift^t(x) <= y <= shift^t(x)."""
    low, high = x, x
    for t in range(limit + 1):
        if la.leq(low, y) and la.leq(y, high):
            return t
        low, high = la.unshift(low), la.shift(high)
    raise ValueError(f"order distance from {x} to {y} exceeds {limit}")


def _bound_problems(la, op, name, below):
    """Commutativity, associativity and the bound property of a meet or join."""
    problems = []
    le = la.leq if below else (lambda a, b: la.leq(b, a))
    for x, y in itertools.combinations(la.window, 2):
        m = op(x, y)
        if op(y, x) != m:
            problems.append(((la.label(x), la.label(y)), f"{name} not commutative"))
        if not (le(m, x) and le(m, y)):
            problems.append(((la.label(x), la.label(y)), f"{name} not a bound"))
        elif any(le(z, x) and le(z, y) and not le(z, m) for z in la.window):
            problems.append(((la.label(x), la.label(y)), f"{name} not the best bound"))
    for x, y, z in itertools.combinations(la.window, 3):
        if op(op(x, y), z) != op(x, op(y, z)):
            problems.append(((la.label(x), la.label(y), la.label(z)),
                             f"{name} not associative"))
    return problems


def check_lattice_action(la, samples=None):
    """Shift strictly increasing on the window, unshift its inverse, cofinality.

    When the action carries meet and join they are also checked on the window
    against leq. Returns a list of (element, problem) pairs; empty when
    everything holds.
    """
    problems = []
    for x in la.window:
        up = la.shift(x)
        if not la.leq(x, up) or la.leq(up, x):
            problems.append((la.label(x), "shift not strictly increasing"))
        if la.unshift(up) != x:
            problems.append((la.label(x), "unshift does not invert shift"))
    pairs = samples or itertools.combinations(la.window, 2)
    for x, y in pairs:
        try:
            order_distance(la, x, y)
        except ValueError:
            problems.append(((la.label(x), la.label(y)), "not cofinal"))
    if la.meet is not None:
        problems += _bound_problems(la, la.meet, "meet", below=True)
    if la.join is not None:
        problems += _bound_problems(la, la.join, "join", below=False)
    return problems


def lattice_to_graph(la, requested=None):
    """Window graph with interior distance and Helly checks.

    Raises:
        WindowTooSmall: a requested element is not in the interior.
    """
    interior = set(la.interior)
    for x in requested or ():
        if x not in interior:
            raise WindowTooSmall(la.label(x))
    index = {x: i for i, x in enumerate(la.window)}
    edges = []
    for x, y in itertools.combinations(la.window, 2):
        if la.leq(la.unshift(x), y) and la.leq(y, la.shift(x)):
            edges.append((index[x], index[y]))
    g = simple_graph(len(la.window), edges, labels=[la.label(x) for x in la.window])

    inner = tuple(sorted(index[x] for x in la.interior))
    d = graph_distance_matrix(g).dist
    mismatches = []
    for i, j in itertools.combinations(inner, 2):
        expected = order_distance(la, la.window[i], la.window[j])
        if d[i][j] != expected:
            mismatches.append((g.label(i), g.label(j), int(d[i][j]), expected))
    if mismatches:
        log.warning("%d interior pairs disagree with the order distance", len(mismatches))
    verdict = is_helly(induced_subgraph(g, inner), 'berge_triples')
    return LatticeGraph(graph=g, interior=inner, distance_mismatches=mismatches,
                        interior_helly=verdict.value)


# ---------------------------------------------------------------------------
# Factories

def integer_lattice_action(dims, low, high):
    """Z^dims, componentwise order, shift by (1, ..., 1), window [low, high]^dims."""
    window = tuple(itertools.product(range(low, high + 1), repeat=dims))
    interior = tuple(itertools.product(range(low + 1, high), repeat=dims))
    return LatticeAction(
        name=f"Z^{dims}[{low},{high}]",
        window=window,
        interior=interior,
        leq=lambda x, y: all(a <= b for a, b in zip(x, y)),
        shift=lambda x: tuple(a + 1 for a in x),
        unshift=lambda x: tuple(a - 1 for a in x),
        label=lambda x: ",".join(str(a) for a in x),
        meet=lambda x, y: tuple(map(min, x, y)),
        join=lambda x, y: tuple(map(max, x, y)),
    )


def braid_lattice_action(radius, bound=None):
    """B3 under the prefix order with shift = right multiplication by Delta.

    The window is the Cayley ball of `radius`; its interior is the ball of
    radius - 1.
    """
    ball = garside.cayley_ball(radius, bound=bound)
    interior = tuple(x for x in ball.elements if ball.distance[x] < radius)
    return LatticeAction(
        name=f"B3[{radius}]",
        window=ball.elements,
        interior=interior,
        leq=garside.prefix_leq,
        shift=garside.shift,
        unshift=garside.unshift,
    )
