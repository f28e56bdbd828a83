"""Exception hierarchy shared by all decalock modules."""


class DecalockError(Exception):
    """Base class for every error raised by this package."""


class GeometryError(DecalockError):
    pass


class DegenerateFacet(GeometryError):
    pass


class NotCoplanar(GeometryError):
    pass


class StepTooCoarse(GeometryError):
    pass


class BuildError(DecalockError):
    pass


class WingOverflow(BuildError):
    pass


class ClearanceTooLarge(BuildError):
    pass


class EmptySection(BuildError):
    pass


class NotABeltFace(BuildError):
    pass


class BuildOverlap(BuildError):
    """Raised when two tiles cross at build time.

    ``overlaps`` holds ``(tile_a, tile_b, penetration)`` triples sorted by tile id.
    """

    def __init__(self, overlaps, message=None):
        self.overlaps = list(overlaps)
        if message is None:
            message = f"{len(self.overlaps)} crossing tile pair(s)"
        super().__init__(message)


class SolverFailure(DecalockError):
    pass


class ParseError(DecalockError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class SchemaVersionMismatch(ParseError):
    pass
