"""
Enumeration bounds and the optional JSON config file.

Hull, tight-span and subdivision enumeration are exponential, so every such
operation refuses instances above a hard default. Overrides may lower the
defaults freely; raising one needs an explicit unsafe flag.
"""
import json
import os

from shared.errors import BoundRaiseRefused, ParseError


# -- Defaults ------------------------------------------------------------

DEFAULT_BOUNDS = {
    'tight_span_points': 10,        # points for tight-span vertex/cell enumeration
    'dim_criterion_points': 10,     # points for the 2(n+1)-point criterion
    'hull_vertices': 12,            # graph vertices for Helly hull enumeration
    'brute_force_vertices': 8,      # graph vertices for brute-force Helly search
    'clique_cross_check_vertices': 8,
    'subdivision_size': 24,         # (2 * N!) * |V| for the Nth subdivision
    'garside_radius': 3,            # Cayley ball radius in B3
    'window_radius': 12,            # oracle window radius for translation lengths
    'projection_max_iter': 64,      # q-step iterations before reporting a gap
}

CONFIG_FILENAME = 'helly_lab.json'


def bound(name, override=None):
    """Return `override` if given, else the default for `name`."""
    if override is not None:
        return override
    return DEFAULT_BOUNDS[name]


def load_config(path=None):
    """Load the JSON config file.

    Args:
        path: Explicit file path. When None, looks for helly_lab.json next to the
            launcher and returns an empty config if it is absent.

    Returns:
        dict with an optional 'bounds' mapping.
    """
    if path is None:
        root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        path = os.path.join(root, CONFIG_FILENAME)
        if not os.path.exists(path):
            return {}
    try:
        with open(path, encoding='utf-8') as f:
            config = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno,
                         source=path) from e
    except OSError as e:
        raise ParseError(f"cannot read config: {e.strerror}", source=path) from e
    if not isinstance(config, dict):
        raise ParseError("config must be a JSON object", source=path)
    return config


def resolve_bounds(overrides=None, unsafe_raise=False):
    """Merge bound overrides into the defaults.

    Unknown names are rejected. Raising a bound above its default without
    `unsafe_raise` raises BoundRaiseRefused.
    """
    bounds = dict(DEFAULT_BOUNDS)
    for name, value in (overrides or {}).items():
        if name not in DEFAULT_BOUNDS:
            raise ParseError(f"unknown bound {name!r}", source="bounds")
        value = int(value)
        if value > DEFAULT_BOUNDS[name] and not unsafe_raise:
            raise BoundRaiseRefused(name, value, DEFAULT_BOUNDS[name])
        bounds[name] = value
    return bounds
