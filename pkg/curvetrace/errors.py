"""Exception hierarchy for curvetrace.

Every error carries the process exit code the CLI reports for it:
2 for bad input or a request outside an operation's domain, 1 for a
verified property that failed.
"""


class CurvetraceError(Exception):
    """Base class for all curvetrace errors."""

    exit_code = 2


class InputError(CurvetraceError):
    """Malformed or missing input."""


class MissingInputFile(InputError):
    """A file named on the command line does not exist."""

    def __init__(self, path):
        super().__init__(f"file not found: {path}")
        self.path = path


class GraphFormatError(InputError):
    """A graph file does not parse into a PantsGraph."""


class DehnFormatError(InputError):
    """A Dehn parameter file does not parse."""


class InvalidGraph(InputError):
    """A PantsGraph violates its invariants."""

    def __init__(self, violations):
        super().__init__("invalid graph: " + "; ".join(violations))
        self.violations = list(violations)


class InvalidDehnParameter(InputError):
    """A Dehn parameter is not admissible on its graph."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        super().__init__("invalid Dehn parameter: " + "; ".join(violations))
        self.violations = list(violations)


class InvalidAngle(InputError):
    """An angle lies outside [0, pi] or is not finite."""


class ModelError(CurvetraceError):
    """The request lies outside the domain of the operation."""


class OutsideDelta(ModelError):
    """Angles outside the moment polytope admit no representation."""


class CentralHolonomy(ModelError):
    """The circle action is undefined on an edge with holonomy +-I."""

    def __init__(self, edges):
        edges = sorted(edges)
        super().__init__(f"central holonomy on edge(s) {', '.join(edges)}")
        self.edges = edges


class EmptyInterior(ModelError):
    """Rejection sampling found no point at the requested margin."""


class NotInterior(ModelError):
    """The base point lies on the boundary of the moment polytope."""


class TwistError(ModelError):
    """A fractional twist was requested on an edge without crossings."""


class UnknownArcType(ModelError):
    """An arc label does not name an arc of a trinion."""


class UnassignedGenerator(ModelError):
    """A word uses a letter with no matrix assigned."""


class GridTooSmall(ModelError):
    """A Fourier grid cannot resolve the coefficients asked for."""


class ColumnCapExceeded(ModelError):
    """Too many evaluation matrix columns without an explicit override."""


class ContractViolation(CurvetraceError):
    """A verified property failed."""

    exit_code = 1
