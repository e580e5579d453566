"""Exception types shared across the package."""


class MapperStitchError(Exception):
    """Base class for all mapper-stitch errors."""


class DataError(MapperStitchError):
    """Bad input data: missing file, missing column, non-finite cell, ..."""


class SpecError(MapperStitchError):
    """Invalid matrix specification (bad overlap, unknown measure, ...)."""


class CompositionError(MapperStitchError):
    """A structural invariant of the composition algorithm was violated."""


class VerificationError(MapperStitchError):
    """Composed and directly-built bivariate mappers disagree."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
