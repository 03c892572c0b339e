"""Constructions subpackage.

Builders and checkers for Helly graphs that come from other structures; this
__init__ re-exports the public surface so
`from hull_tools.constructions import X` works:

    .lattices   - lattices with a shift automorphism -> graphs (Z^n, B3)
    .cells      - generalized cells, thickenings, cell-Helly conditions
    .garside    - B3 Garside normal forms and Cayley balls
    .generators - fixture graphs and cube complexes from spec strings
    .build      - the `construct` entry point

Poset diagnostics live in hull_tools.posets and are re-exported here.
"""
from hull_tools.posets import (
    ChainComplex,
    Poset,
    from_hasse,
    from_relation,
    orthoscheme_chains,
    poset_check,
)

from .cells import CellComplexSpec, cell_complex, cell_helly_check, thickening
from .garside import (
    Braid,
    cayley_ball,
    garside_b3_ball,
    generators,
    inverse,
    multiply,
    normal_form,
    prefix_leq,
    tau,
)
from .generators import (
    cube_complex_from_cubes,
    generate,
    random_connected_graph,
    random_metric,
    random_tree,
    sun_graph,
)
from .lattices import (
    LatticeAction,
    braid_lattice_action,
    check_lattice_action,
    integer_lattice_action,
    lattice_to_graph,
    order_distance,
    window_poset,
)
from .build import run
