"""Launcher entry for `construct ...`: builds a fixture and runs its checks."""
import logging

from hull_tools.constructions.cells import cell_helly_check, thickening
from hull_tools.constructions.garside import cayley_ball
from hull_tools.constructions.generators import generate
from hull_tools.constructions.lattices import (
    braid_lattice_action,
    integer_lattice_action,
    lattice_to_graph,
)
from hull_tools.helly import is_helly, one_helly_local_check

log = logging.getLogger("helly_lab.constructions")

GRAPH_KINDS = ('cycle', 'path', 'star', 'complete', 'wheel', 'king', 'grid', 'tree',
               'sun', 'random')


def _graph_spec(config):
    kind = config['what']
    arg = config.get('arg', '')
    if kind == 'tree' and not arg.startswith(('prufer:', 'balanced:', 'random:')):
        arg = 'prufer:' + arg
    return f"{kind}:{arg}"


def run(config):
    what = config['what']
    bounds = config.get('bounds', {})

    if what in GRAPH_KINDS:
        g = generate(_graph_spec(config))
        return {'kind': 'graph', 'spec': _graph_spec(config), 'graph': g}

    if what == 'cube':
        c = generate(f"cube_complex:{config.get('arg') or 'cube'}")
        t = thickening(c)
        report = cell_helly_check(c, bound=bounds.get('clique_cross_check_vertices'))
        verdict = is_helly(t, 'berge_triples')
        log.info("%s: cell check %s, thickening Helly %s", c.name,
                 report['passed'], verdict.value)
        return {'kind': 'cell_complex', 'name': c.name, 'graph': t,
                'cells': [sorted(s) for s in c.cells], 'report': report,
                'thickening_helly': verdict.value}

    if what == 'lattice':
        dims, low, high = (int(x) for x in config['arg'].split(","))
        result = lattice_to_graph(integer_lattice_action(dims, low, high))
        return {'kind': 'lattice_graph', 'graph': result.graph,
                'interior': list(result.interior),
                'distance_mismatches': result.distance_mismatches,
                'interior_helly': result.interior_helly}

    if what == 'braid-lattice':
        la = braid_lattice_action(int(config.get('arg') or 1),
                                  bound=bounds.get('garside_radius'))
        result = lattice_to_graph(la)
        return {'kind': 'lattice_graph', 'graph': result.graph,
                'interior': list(result.interior),
                'distance_mismatches': result.distance_mismatches,
                'interior_helly': result.interior_helly}

    # garside-ball
    radius = int(config.get('arg') or 1)
    ball = cayley_ball(radius, bound=bounds.get('garside_radius'))
    centers = [i for i, x in enumerate(ball.elements) if ball.distance[x] < radius]
    local = one_helly_local_check(ball.graph, centers)
    return {'kind': 'garside_ball', 'radius': radius, 'graph': ball.graph,
            'interior': centers, 'locally_one_helly': local.value,
            'witness': local.witness}
