"""
Exception hierarchy and exit codes for helly-lab.

Every error carries its witness as attributes plus a `location` string, so the
launcher can print one line and exit with the right code while tests inspect
the structured payload.
"""

# ---------------------------------------------------------------------------
# Exit codes

EXIT_OK = 0
EXIT_FALSE_VERDICT = 1
EXIT_INPUT_ERROR = 2
EXIT_BOUND_EXCEEDED = 3


class HellyLabError(Exception):
    """Base class. Subclasses set `exit_code` and fill `location`."""
    exit_code = EXIT_INPUT_ERROR

    def __init__(self, message, location=""):
        self.detail = message
        self.location = location
        if location:
            message = f"{message} (at {location})"
        super().__init__(message)


# -- Input errors --------------------------------------------------------

class ParseError(HellyLabError):
    def __init__(self, message, line=None, column=None, source=""):
        self.line = line
        self.column = column
        where = source or "input"
        if line is not None:
            where += f" line {line}"
        if column is not None:
            where += f" column {column}"
        super().__init__(message, where)


class LoopEdge(ParseError):
    def __init__(self, vertex, line=None, source=""):
        self.vertex = vertex
        super().__init__(f"self-loop on vertex {vertex}", line=line, source=source)


class BadSpec(HellyLabError):
    def __init__(self, spec, reason=""):
        self.spec = spec
        msg = f"bad construction spec {spec!r}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class UnsupportedFormat(HellyLabError):
    def __init__(self, fmt, kind):
        self.fmt = fmt
        self.kind = kind
        super().__init__(f"format {fmt!r} not supported for {kind} results")


class BoundRaiseRefused(HellyLabError):
    def __init__(self, name, requested, default):
        self.name = name
        self.requested = requested
        self.default = default
        super().__init__(
            f"bound {name}={requested} exceeds default {default}; pass --unsafe-raise"
        )


class DisconnectedGraph(HellyLabError):
    def __init__(self, u, v):
        self.pair = (u, v)
        super().__init__("graph is disconnected", f"vertices {u} and {v}")


class NotAutomorphism(HellyLabError):
    def __init__(self, reason, edge=None):
        self.edge = edge
        super().__init__(f"not an automorphism: {reason}",
                         f"edge {edge}" if edge is not None else "")


class NotHelly(HellyLabError):
    exit_code = EXIT_FALSE_VERDICT

    def __init__(self, witness=None):
        self.witness = witness
        super().__init__("graph is not Helly",
                         f"ball family {witness}" if witness else "")


class WindowTooSmall(HellyLabError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__("window does not contain the full neighborhood",
                         f"vertex {vertex}")


class RadiusTooLarge(HellyLabError):
    def __init__(self, radius, bound):
        self.radius = radius
        self.bound = bound
        super().__init__(f"radius {radius} exceeds bound {bound}")


class MethodDisagreement(HellyLabError):
    """Definitional and fast-path verdicts split; both witnesses attached."""

    def __init__(self, verdicts):
        self.verdicts = verdicts
        summary = ", ".join(f"{name}={getattr(v, 'value', v)}"
                            for name, v in verdicts.items())
        super().__init__(f"Helly methods disagree: {summary}")


class FunctionOutsideDelta(HellyLabError):
    """A function violates f(x) + f(y) >= d(x, y) at `pair`."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__("function is not in Delta(X)", f"pair {pair}")


# -- Metric validation ----------------------------------------------------

class MetricError(HellyLabError):
    """Violation of the metric axioms. `cells` lists offending (row, col) pairs."""
    cells = ()

    def at_source(self, source, row_offset=0):
        """Re-render the location in file coordinates (1-based lines and columns)."""
        refs = ", ".join(f"R{r + 1 + row_offset}C{c + 1}" for r, c in self.cells)
        self.location = f"{source} cells {refs}"
        self.args = (f"{self.detail} (at {self.location})",)
        return self


class NotSquare(MetricError):
    def __init__(self, row, length, n):
        self.cells = ((row, 0),)
        super().__init__(f"row {row} has {length} entries, expected {n}", f"row {row}")


class NegativeEntry(MetricError):
    def __init__(self, i, j, value):
        self.i, self.j, self.value = i, j, value
        self.cells = ((i, j),)
        super().__init__(f"negative distance {value}", f"({i},{j})")


class NonzeroDiagonal(MetricError):
    def __init__(self, i, value):
        self.i, self.value = i, value
        self.cells = ((i, i),)
        super().__init__(f"diagonal entry {value} is not 0", f"({i},{i})")


class ZeroDistance(MetricError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        self.cells = ((i, j),)
        super().__init__("distinct points at distance 0", f"({i},{j})")


class AsymmetryError(MetricError):
    def __init__(self, i, j, dij, dji):
        self.i, self.j = i, j
        self.values = (dij, dji)
        self.cells = ((i, j), (j, i))
        super().__init__(f"d({i},{j})={dij} but d({j},{i})={dji}", f"pair ({i},{j})")


class TriangleError(MetricError):
    """d(i,j) > d(i,k) + d(k,j). `values` is (d_ij, d_ik, d_kj)."""

    def __init__(self, i, j, k, values):
        self.i, self.j, self.k = i, j, k
        self.values = tuple(values)
        self.cells = ((i, j), (i, k), (k, j))
        dij, dik, dkj = self.values
        super().__init__(
            f"d({i},{j})={dij} > d({i},{k})+d({k},{j})={dik}+{dkj}",
            f"triple ({i},{j},{k})",
        )


# -- Bound errors ----------------------------------------------------------

class InstanceTooLarge(HellyLabError):
    exit_code = EXIT_BOUND_EXCEEDED

    def __init__(self, what, size, bound):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what} size {size} exceeds enumeration bound {bound}")


class WindowExhausted(HellyLabError):
    """The orbit left the explored ball. `estimate` is the last uncertified ratio."""
    exit_code = EXIT_BOUND_EXCEEDED

    def __init__(self, k, radius, estimate=None):
        self.k = k
        self.radius = radius
        self.estimate = estimate
        super().__init__(f"orbit escaped window of radius {radius}", f"step k={k}")


# -- Warnings --------------------------------------------------------------

class DuplicateEdgeWarning(UserWarning):
    pass


class NonHellyWarning(UserWarning):
    pass
