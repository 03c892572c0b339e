"""Generalized cells, thickenings and the cell-Helly conditions."""
import itertools
from typing import NamedTuple, TypedDict

import networkx as nx

from hull_tools.helly import set_family_brute_force, set_family_helly
from hull_tools.metric_core import simple_graph
from shared.config import bound as default_bound
from shared.errors import BadSpec, MethodDisagreement

# Conditions the checker cannot decide; reported, never assumed.
ASSUMPTIONS = (
    "complex is simply connected",
    "nonempty cell intersections are simply connected",
)


class CellComplexSpec(NamedTuple):
    graph: object            # SimpleGraph (the 1-skeleton)
    cells: tuple             # frozensets of vertices, sorted by (size, members)
    name: str = ""


class CellReport(TypedDict):
    helly_failures: list      # pairwise-intersecting cells with empty intersection
    flag_failures: list       # cell triples whose pairwise intersections fit in no cell
    disconnected_intersections: list
    locally_bounded: bool
    cross_checked: bool       # brute-force Helly search also ran
    assumptions: list
    passed: bool


def _key(s):
    return (len(s), tuple(sorted(s)))


def cell_complex(graph, cells, name=""):
    """Validate cells: nonempty, in range, connected, covering vertices and edges."""
    nxg = graph.to_networkx()
    family = []
    for cell in cells:
        cell = frozenset(cell)
        if not cell:
            raise BadSpec(name or "cells", "empty cell")
        outside = [v for v in cell if not 0 <= v < graph.n]
        if outside:
            raise BadSpec(name or "cells", f"cell mentions unknown vertex {outside[0]}")
        if not nx.is_connected(nxg.subgraph(cell)):
            raise BadSpec(name or "cells", f"cell {sorted(cell)} is not connected")
        family.append(cell)
    covered = frozenset().union(*family) if family else frozenset()
    if len(covered) != graph.n:
        missing = min(set(range(graph.n)) - covered)
        raise BadSpec(name or "cells", f"vertex {missing} lies in no cell")
    for u, v in graph.edges():
        if not any(u in c and v in c for c in family):
            raise BadSpec(name or "cells", f"edge ({u},{v}) lies in no cell")
    return CellComplexSpec(graph=graph, cells=tuple(sorted(set(family), key=_key)),
                           name=name)


def thickening(c):
    """Join u != v whenever some cell contains both."""
    edges = set()
    for cell in c.cells:
        edges.update(itertools.combinations(sorted(cell), 2))
    return simple_graph(c.graph.n, sorted(edges),
                        labels=[c.graph.label(v) for v in range(c.graph.n)])


def cell_helly_check(c, bound=None):
    """Finite Helly property, flag condition and intersection connectivity."""
    g = c.graph
    cells = list(c.cells)
    witness = set_family_helly(cells, g.n)
    cross = g.n <= default_bound('clique_cross_check_vertices', bound)
    if cross and (witness is None) != (set_family_brute_force(cells) is None):
        raise MethodDisagreement({'triple_criterion': witness is None,
                                  'brute_force': witness is not None})
    helly_failures = [tuple(tuple(sorted(s)) for s in witness)] if witness else []

    flag_failures = []
    for x1, x2, x3 in itertools.combinations(cells, 3):
        a, b, d = x1 & x2, x2 & x3, x3 & x1
        if not (a and b and d):
            continue
        union = a | b | d
        if not any(union <= cell for cell in cells):
            flag_failures.append(tuple(tuple(sorted(s)) for s in (x1, x2, x3)))

    nxg = g.to_networkx()
    disconnected = []
    for x1, x2 in itertools.combinations(cells, 2):
        common = x1 & x2
        if common and not nx.is_connected(nxg.subgraph(common)):
            disconnected.append(tuple(sorted(common)))

    return CellReport(
        helly_failures=helly_failures,
        flag_failures=flag_failures,
        disconnected_intersections=sorted(set(disconnected)),
        locally_bounded=True,
        cross_checked=cross,
        assumptions=list(ASSUMPTIONS),
        passed=not (helly_failures or flag_failures or disconnected),
    )
