"""
Hull Tools Package
Exact computations on injective hulls of finite metric spaces and Helly graphs.

    metric_core    - finite metrics, graphs, four-point delta, medians
    tight_span     - tight span vertices, cells, dimension, projection
    helly          - Helly hulls, recognition, round cliques, circumcliques
    posets         - posets, bowties, flag conditions, chain complexes
    subdiv_aut     - Helly subdivisions, automorphisms, translation lengths
    constructions  - lattices, thickenings, B3 Cayley balls, fixtures
"""

from .metric_core import run as run_metric
from .tight_span import run as run_tight_span
from .helly import run as run_helly
from .posets import run as run_poset
from .subdiv_aut import run as run_subdiv_aut
from .constructions import run as run_construct

__all__ = [
    'run_metric',
    'run_tight_span',
    'run_helly',
    'run_poset',
    'run_subdiv_aut',
    'run_construct',
]
