"""
helly-lab command-line launcher.

Each subcommand builds a config dict and hands it to a module's `run(config)`;
the result is emitted in the requested format. Exit codes: 0 success, 1 a
property came out false, 2 input error, 3 enumeration bound exceeded.

Examples:
    python helly_lab_launcher.py helly hull c4.txt --format dot
    python helly_lab_launcher.py tightspan cells triangle.csv
    python helly_lab_launcher.py aut length --oracle king:2 --map shift-bump --horizon 12
    python helly_lab_launcher.py --bound hull_vertices=8 helly check --generate cycle:6
"""
import argparse
import logging
import sys
from fractions import Fraction

from hull_tools import (
    run_construct,
    run_helly,
    run_metric,
    run_poset,
    run_subdiv_aut,
    run_tight_span,
)
from hull_tools.constructions.generators import generate
from hull_tools.metric_core import SimpleGraph
from shared.config import load_config, resolve_bounds
from shared.emit import FORMATS, emit
from shared.errors import (
    EXIT_FALSE_VERDICT,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    HellyLabError,
    ParseError,
)
from shared.file_utils import parse_graph, parse_metric, parse_poset, write_output

log = logging.getLogger("helly_lab.launcher")


# -- Input helpers ---------------------------------------------------------

def _source(path):
    return sys.stdin if path == '-' else path


def _load_graph(args):
    if getattr(args, 'generate', None):
        g = generate(args.generate)
        if not isinstance(g, SimpleGraph):
            raise ParseError(f"{args.generate!r} does not describe a graph")
        return g
    if not args.input:
        raise ParseError("missing graph file (or --generate SPEC)")
    return parse_graph(_source(args.input))


def _parse_bound_flags(items):
    overrides = {}
    for item in items or ():
        name, sep, value = item.partition('=')
        if not sep:
            raise ParseError(f"--bound expects name=value, got {item!r}")
        try:
            overrides[name.strip()] = int(value)
        except ValueError:
            raise ParseError(f"bound {name!r} must be an integer") from None
    return overrides


def _ints(text):
    try:
        return [int(t) for t in text.replace(',', ' ').split()]
    except ValueError:
        raise ParseError(f"expected integers, got {text!r}") from None


# -- Commands --------------------------------------------------------------

def run_tightspan_command(args, config):
    config.update({'metric': parse_metric(_source(args.input)), 'action': args.action,
                   'k': args.k})
    if args.action == 'project':
        if not args.function:
            raise ParseError("tightspan project needs --function v1,v2,...")
        try:
            config['function'] = [Fraction(t.strip()) for t in args.function.split(',')]
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"--function values must be rationals: {args.function!r}") \
                from None
    return run_tight_span(config)


def run_helly_command(args, config):
    config.update({'graph': _load_graph(args), 'action': args.action,
                   'method': args.method})
    if args.action == 'circumclique':
        if not args.vertices:
            raise ParseError("helly circumclique needs --vertices v1,v2,...")
        config['vertices'] = _ints(args.vertices)
    return run_helly(config)


def run_subdivide_command(args, config):
    config.update({'graph': _load_graph(args), 'action': 'subdivide', 'n': args.n,
                   'construction': args.construction})
    return run_subdiv_aut(config)


def run_aut_command(args, config):
    config['action'] = args.action
    if args.action == 'classify':
        if args.perm is None:
            raise ParseError("aut classify needs --perm '(0 1)...'")
        config.update({'graph': _load_graph(args), 'perm': args.perm})
    else:
        if not (args.oracle and args.map and args.horizon):
            raise ParseError("aut length needs --oracle, --map and --horizon")
        config.update({'oracle': args.oracle, 'map': args.map, 'horizon': args.horizon,
                       'n': args.n})
    return run_subdiv_aut(config)


def run_poset_command(args, config):
    config.update({'poset': parse_poset(_source(args.input)), 'action': args.action})
    return run_poset(config)


def run_construct_command(args, config):
    config.update({'what': args.what, 'arg': args.arg or ''})
    return run_construct(config)


def run_metric_command(args, config):
    config.update({'metric': parse_metric(_source(args.input)), 'action': args.action})
    if args.action == 'median':
        if not args.triple:
            raise ParseError("metric median needs --triple x,y,z")
        triple = _ints(args.triple)
        if len(triple) != 3:
            raise ParseError("--triple needs exactly three points")
        config['triple'] = triple
    return run_metric(config)


# -- Parser ----------------------------------------------------------------

def _graph_input(parser):
    parser.add_argument("input", nargs='?', help="graph edge-list file ('-' for stdin)")
    parser.add_argument("--generate", metavar="SPEC",
                        help="use a generated graph instead, e.g. cycle:5")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="helly_lab_launcher.py",
        description="Injective hulls, Helly graphs and their constructions.")
    parser.add_argument("--format", choices=FORMATS, default='text')
    parser.add_argument("--bound", action='append', metavar="NAME=VALUE",
                        help="override an enumeration bound (lowering only)")
    parser.add_argument("--unsafe-raise", action='store_true',
                        help="allow --bound to raise a default")
    parser.add_argument("--config", help="JSON config file (default: helly_lab.json)")
    parser.add_argument("--output", help="write the result here instead of stdout")
    parser.add_argument("--progress", action='store_true', help="show tqdm progress bars")
    parser.add_argument("--verbose", action='store_true', help="debug logging to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tightspan", help="tight span of a metric CSV")
    p.add_argument("action", choices=('vertices', 'cells', 'dim', 'project'))
    p.add_argument("input", help="metric CSV ('-' for stdin)")
    p.add_argument("--k", type=int, help="also run the dim <= k point criterion")
    p.add_argument("--function", help="comma-separated values to project")
    p.set_defaults(func=run_tightspan_command)

    p = sub.add_parser("helly", help="Helly hulls and recognition")
    p.add_argument("action", choices=('check', 'hull', 'round-cliques', 'circumclique',
                                      'gap', 'stability', 'clique'))
    _graph_input(p)
    p.add_argument("--method", choices=('hull_equality', 'berge_triples', 'brute_force'))
    p.add_argument("--vertices", help="vertex set for circumclique, e.g. 0,2")
    p.set_defaults(func=run_helly_command)

    p = sub.add_parser("subdivide", help="Helly subdivision of a Helly graph")
    _graph_input(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--construction", choices=('hull', 'round-cliques'), default='hull')
    p.set_defaults(func=run_subdivide_command)

    p = sub.add_parser("aut", help="classify automorphisms")
    p.add_argument("action", choices=('classify', 'length'))
    _graph_input(p)
    p.add_argument("--perm", help="cycle notation, e.g. '(0 1)(2 3)'")
    p.add_argument("--oracle", help="king:N or tree:d")
    p.add_argument("--map", help="shift-bump, translate:v1,..., word:c1,..., identity")
    p.add_argument("--horizon", type=int)
    p.add_argument("--n", type=int, help="period bound parameter (default: oracle rank)")
    p.set_defaults(func=run_aut_command)

    p = sub.add_parser("poset", help="poset diagnostics")
    p.add_argument("action", choices=('check', 'chains'))
    p.add_argument("input", help="poset file with 'a < b' lines")
    p.set_defaults(func=run_poset_command)

    p = sub.add_parser("construct", help="build fixtures and constructions")
    p.add_argument("what", choices=('cycle', 'path', 'star', 'complete', 'wheel', 'king',
                                    'grid', 'tree', 'sun', 'random', 'cube', 'lattice',
                                    'braid-lattice', 'garside-ball'))
    p.add_argument("arg", nargs='?', help="size or spec, e.g. 3,3 or corner or 2")
    p.set_defaults(func=run_construct_command)

    p = sub.add_parser("metric", help="metric diagnostics")
    p.add_argument("action", choices=('delta', 'median'))
    p.add_argument("input", help="metric CSV ('-' for stdin)")
    p.add_argument("--triple", help="three point indices for median")
    p.set_defaults(func=run_metric_command)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        file_config = load_config(args.config)
        overrides = {**file_config.get('bounds', {}), **_parse_bound_flags(args.bound)}
        config = {'bounds': resolve_bounds(overrides, unsafe_raise=args.unsafe_raise),
                  'progress': args.progress}
        result = args.func(args, config)
        write_output(emit(result, args.format), args.output)
    except HellyLabError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if result.get('verdict') is False:
        return EXIT_FALSE_VERDICT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
