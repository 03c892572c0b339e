"""
Input parsing and output writing for helly-lab.

    graph file   first line "n m", then m lines "u v" (vertices 0..n-1)
    metric CSV   square table of integers or p/q rationals, optional label row
    poset file   lines "a < b" (chains "a < b < c" allowed, bare "a" declares)
    cells file   one vertex set per line, whitespace or comma separated

Blank lines and text after '#' are ignored in graph, poset and cells files.
"""
import io
import os
import sys
import warnings
from fractions import Fraction

import pandas as pd

from hull_tools.constructions.cells import cell_complex
from hull_tools.metric_core import simple_graph, validate_metric
from hull_tools.posets import from_hasse
from shared.errors import DuplicateEdgeWarning, LoopEdge, MetricError, ParseError


def resolve_path(path):
    """Strip quotes a shell copy may leave around a path."""
    return os.path.expanduser(path.strip().strip('"').strip("'"))


def read_text(source):
    """Return (text, name) from a path or a readable stream."""
    if hasattr(source, 'read'):
        return source.read(), getattr(source, 'name', '<stream>')
    path = resolve_path(source)
    try:
        with open(path, encoding='utf-8') as f:
            return f.read(), path
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", source=path) from e


def _content_lines(text):
    """(line number, stripped content) for every non-blank, non-comment line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if line:
            yield number, line


def _int_tokens(line, number, name):
    values = []
    for column, token in enumerate(line.split(), start=1):
        try:
            values.append(int(token))
        except ValueError:
            raise ParseError(f"expected an integer, got {token!r}", line=number,
                             column=column, source=name) from None
    return values


# ---------------------------------------------------------------------------
# Graphs

def parse_graph_text(text, name='<string>'):
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty graph file; expected header 'n m'", source=name)
    number, header = lines[0]
    head = _int_tokens(header, number, name)
    if len(head) != 2 or head[0] < 0 or head[1] < 0:
        raise ParseError("header must be 'n m' with n, m >= 0", line=number, source=name)
    n, m = head
    body = lines[1:]
    if len(body) != m:
        where = body[-1][0] if body else number
        raise ParseError(f"header announces {m} edges, found {len(body)}", line=where,
                         source=name)

    edges = []
    seen = set()
    for number, line in body:
        pair = _int_tokens(line, number, name)
        if len(pair) != 2:
            raise ParseError("edge line must be 'u v'", line=number, source=name)
        u, v = pair
        if u == v:
            raise LoopEdge(u, line=number, source=name)
        for column, x in enumerate(pair, start=1):
            if not 0 <= x < n:
                raise ParseError(f"vertex {x} outside 0..{n - 1}", line=number,
                                 column=column, source=name)
        key = (min(u, v), max(u, v))
        if key in seen:
            warnings.warn(f"{name} line {number}: duplicate edge {key} ignored",
                          DuplicateEdgeWarning, stacklevel=2)
            continue
        seen.add(key)
        edges.append(key)
    return simple_graph(n, edges)


def parse_graph(source):
    """SimpleGraph from an edge-list file or stream; vertex order is 0..n-1."""
    text, name = read_text(source)
    return parse_graph_text(text, name)


def graph_to_edge_list(g):
    lines = [f"{g.n} {len(g.edges())}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Metrics

def _fraction(cell, row, column, name):
    try:
        return Fraction(cell.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {cell!r}", line=row, column=column,
                         source=name) from None


def parse_metric_text(text, name='<string>'):
    try:
        frame = pd.read_csv(io.StringIO(text), header=None, dtype=str,
                            skip_blank_lines=True, comment='#')
    except pd.errors.EmptyDataError:
        raise ParseError("empty metric file", source=name) from None
    except pd.errors.ParserError as e:
        raise ParseError(f"ragged CSV: {e}", source=name) from None

    rows = [[c for c in row if isinstance(c, str)] for row in frame.itertuples(index=False)]
    labels = None
    if rows:
        try:
            [Fraction(c.strip()) for c in rows[0]]
        except (ValueError, ZeroDivisionError):
            labels = [c.strip() for c in rows[0]]
            rows = rows[1:]
    offset = 1 if labels else 0
    table = [[_fraction(c, r + 1 + offset, j + 1, name) for j, c in enumerate(row)]
             for r, row in enumerate(rows)]
    if labels is not None and len(labels) != len(table):
        raise ParseError(f"{len(labels)} labels for {len(table)} rows", line=1, source=name)
    try:
        return validate_metric(table, labels=labels)
    except MetricError as e:
        raise e.at_source(name, row_offset=offset)


def parse_metric(source):
    """FiniteMetric from a CSV file or stream; errors name their cells as RrCc."""
    text, name = read_text(source)
    return parse_metric_text(text, name)


# ---------------------------------------------------------------------------
# Posets and cells

def parse_poset_text(text, name='<string>'):
    elements = []
    covers = []
    for number, line in _content_lines(text):
        chain = [part.strip() for part in line.split('<')]
        if any(not part or ' ' in part for part in chain):
            raise ParseError("expected 'a < b'", line=number, source=name)
        for part in chain:
            if part not in elements:
                elements.append(part)
        covers += list(zip(chain, chain[1:]))
    return from_hasse(elements, covers)


def parse_poset(source):
    text, name = read_text(source)
    return parse_poset_text(text, name)


def parse_cells_text(graph, text, name='<string>'):
    cells = []
    for number, line in _content_lines(text):
        cells.append(frozenset(_int_tokens(line.replace(',', ' '), number, name)))
    return cell_complex(graph, cells, name=name)


def parse_cells(graph, source):
    """CellComplexSpec from a parsed graph plus a cells file."""
    text, name = read_text(source)
    return parse_cells_text(graph, text, name)


# ---------------------------------------------------------------------------
# Output

def write_output(data, path=None):
    """Write bytes to `path`, or to stdout when no path is given."""
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    path = resolve_path(path)
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, 'wb') as f:
        f.write(data)
