"""
Serialization of module results: text, canonical JSON, DOT and edge lists.

Every `run(config)` returns a dict with a `kind` key; `emit(result, fmt)` turns
it into bytes. Output is deterministic: JSON keys are sorted, vertices keep
their canonical order and Fractions are written as "p/q" strings.
"""
import json
from fractions import Fraction

import pandas as pd

from hull_tools.metric_core import SimpleGraph
from shared.errors import UnsupportedFormat

SCHEMA = "helly-lab/1"
FORMATS = ('text', 'json', 'dot', 'edges')

# result fields holding the graph a DOT or edge-list rendering draws
GRAPH_FIELDS = ('hull', 'graph')


# ---------------------------------------------------------------------------
# JSON

def jsonable(value):
    """Plain JSON data for results: Fractions -> str, sets sorted, tuples -> lists."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, SimpleGraph):
        return {'n': value.n, 'edges': [list(e) for e in value.edges()],
                'labels': [value.label(v) for v in range(value.n)]}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if hasattr(value, '_asdict'):
        return {k: jsonable(v) for k, v in value._asdict().items()}
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, 'value'):
        return jsonable(value.value)
    return str(value)


def _payload(result):
    payload = {'schema': SCHEMA}
    for key, value in result.items():
        if key in GRAPH_FIELDS and isinstance(value, SimpleGraph):
            payload['edges'] = [list(e) for e in value.edges()]
            payload['labels'] = [value.label(v) for v in range(value.n)]
        else:
            payload[key] = jsonable(value)
    return payload


def emit_json(result):
    text = json.dumps(_payload(result), sort_keys=True, separators=(",", ":"))
    return text + "\n"


# ---------------------------------------------------------------------------
# Graph formats

def _graph_of(result):
    for key in GRAPH_FIELDS:
        if isinstance(result.get(key), SimpleGraph):
            return result[key]
    return None


def emit_dot(result):
    """DOT; original vertices (the first `original`) are boxes, added ones ellipses."""
    g = _graph_of(result)
    original = result.get('original', g.n)
    lines = ["graph G {"]
    for v in range(g.n):
        shape = 'box' if v < original else 'ellipse'
        lines.append(f'  {v} [label="{g.label(v)}", shape={shape}];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_edges(result):
    g = _graph_of(result)
    lines = [f"{g.n} {len(g.edges())}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Text

def _fmt(value):
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    if isinstance(value, (set, frozenset)):
        return "{" + ", ".join(_fmt(v) for v in sorted(value)) + "}"
    return str(value)


def _table(rows, columns):
    if not rows:
        return "(none)\n"
    frame = pd.DataFrame(rows, columns=columns)
    return frame.to_string(index=False) + "\n"


def _text_translation_length(r):
    if r['certified']:
        return f"L = {r['length']} (certified, a={r['period']})\n"
    return f"L ~ {r['length']} (uncertified after {len(r['distances'])} steps)\n"


def _text_vertices(r):
    rows = [[_fmt(v) for v in f] for f in r['vertices']]
    out = f"{len(rows)} vertices\n" + _table(rows, r['labels'])
    if 'cells' in r:
        cell_rows = [[c.dim, _fmt(c.vertex_ids), _fmt(c.tight_pairs)] for c in r['cells']]
        out += f"{len(cell_rows)} cells\n" + _table(cell_rows, ['dim', 'vertices', 'tight pairs'])
    return out


def _text_graph(r):
    g = _graph_of(r)
    out = f"{g.n} vertices, {len(g.edges())} edges\n"
    rows = [[g.label(v), " ".join(g.label(w) for w in g.adj[v])] for v in range(g.n)]
    return out + _table(rows, ['vertex', 'neighbors'])


def _text_round_cliques(r):
    labels = r['labels']
    rows = [[i, "{" + ",".join(labels[v] for v in sorted(c)) + "}"]
            for i, c in enumerate(r['cliques'])]
    out = f"{len(rows)} round cliques\n" + _table(rows, ['id', 'clique'])
    for w in r['warnings']:
        out += f"warning: {w}\n"
    return out


def _text_generic(r):
    lines = []
    for key in sorted(r):
        if key == 'kind':
            continue
        value = r[key]
        if isinstance(value, SimpleGraph):
            value = f"graph with {value.n} vertices, {len(value.edges())} edges"
        lines.append(f"{key}: {_fmt(jsonable(value))}")
    return f"[{r['kind']}]\n" + "\n".join(lines) + "\n"


TEXT_RENDERERS = {
    'translation_length': _text_translation_length,
    'tight_span_vertices': _text_vertices,
    'tight_span_cells': _text_vertices,
    'round_cliques': _text_round_cliques,
    'helly_hull': _text_graph,
    'subdivision': _text_graph,
    'graph': _text_graph,
}


# ---------------------------------------------------------------------------
# Entry point

def emit(result, fmt='text'):
    """Render a result dict (or a bare SimpleGraph) as bytes in `fmt`."""
    if isinstance(result, SimpleGraph):
        result = {'kind': 'graph', 'graph': result}
    kind = result.get('kind', 'unknown')
    if fmt not in FORMATS:
        raise UnsupportedFormat(fmt, kind)
    if fmt == 'json':
        text = emit_json(result)
    elif fmt in ('dot', 'edges'):
        if _graph_of(result) is None:
            raise UnsupportedFormat(fmt, kind)
        text = emit_dot(result) if fmt == 'dot' else emit_edges(result)
    else:
        text = TEXT_RENDERERS.get(kind, _text_generic)(result)
    return text.encode('utf-8')
