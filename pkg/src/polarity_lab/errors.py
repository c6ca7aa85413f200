"""Exception types raised across the package."""


class GeometryError(ValueError):
    """Base class for invalid or degenerate geometric input."""


class InvalidPoint(GeometryError):
    pass


class DegenerateSpan(GeometryError):
    pass


class NotCollinear(GeometryError):
    pass


class DegenerateQuadruple(GeometryError):
    pass


class DegenerateTriple(GeometryError):
    pass


class AtInfinity(GeometryError):
    pass


class NotAFrame(GeometryError):
    pass


class NotGeneric(GeometryError):
    pass


class BadAuxiliary(GeometryError):
    pass


class ArityMismatch(GeometryError):
    pass


class InvalidVector(GeometryError):
    pass


class KernelObstruction(GeometryError):
    pass


class NotInvertibleHere(GeometryError):
    pass


class UndefinedAtVertex(GeometryError):
    pass


class DegenerateBody(GeometryError):
    pass


class NotInterior(GeometryError):
    pass


class NotDisjoint(GeometryError):
    pass


class UnsupportedDimension(GeometryError):
    pass


class ConcurrencyFailure(RuntimeError):
    """Lines that must be concurrent were not: an internal bug, never bad input."""


class NoConvergence(RuntimeError):
    def __init__(self, message, iterates=()):
        super().__init__(message)
        self.iterates = list(iterates)


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
