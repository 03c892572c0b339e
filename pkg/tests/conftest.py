import os
import sys
from fractions import Fraction

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from hull_tools.constructions.generators import generate, sun_graph  # noqa: E402
from hull_tools.helly import helly_hull  # noqa: E402
from hull_tools.metric_core import simple_graph, validate_metric  # noqa: E402

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def cycle(n):
    return simple_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return simple_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return simple_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def c6():
    return cycle(6)


@pytest.fixture
def k1():
    return simple_graph(1, [])


@pytest.fixture
def k2():
    return complete(2)


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def p3():
    return path(3)


@pytest.fixture
def cone(c4):
    """Helly hull of the 4-cycle: vertices 0..3 on the cycle, 4 the apex."""
    return helly_hull(c4).hull


@pytest.fixture
def sun3():
    return sun_graph(3)


@pytest.fixture
def king33():
    return generate("king:3,3")


@pytest.fixture
def helly_fixtures(k1, k2, k3, p3, cone):
    return {
        'K1': k1, 'K2': k2, 'K3': k3, 'P3': p3, 'P4': path(4), 'cone': cone,
        'star3': generate("star:3"), 'king22': generate("king:2,2"),
    }


@pytest.fixture
def equilateral():
    return validate_metric([[0, 1, 1], [1, 0, 1], [1, 1, 0]])


@pytest.fixture
def c4_metric():
    return validate_metric([[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])


@pytest.fixture
def half():
    return Fraction(1, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def read_fixture(name):
    with open(os.path.join(FIXTURE_DIR, name), encoding='utf-8') as f:
        return f.read()
