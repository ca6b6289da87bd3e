"""Exception types raised across the package."""


class ChowTreesError(Exception):
    """Base class; the CLI reports ``type(err).__name__`` and exits 1."""


class DimensionMismatch(ChowTreesError):
    pass


class NotFullDimensional(ChowTreesError):
    pass


class ValuationTooLow(ChowTreesError):
    pass


class UnknownVertex(ChowTreesError, KeyError):
    pass


class NotAncestor(ChowTreesError):
    pass


class InvalidShape(ChowTreesError):
    pass


class InvalidTree(ChowTreesError):
    pass


class ContractionDegenerate(ChowTreesError, AssertionError):
    """A collapse point coincided with the projection center; impossible for valid trees."""


class GenericityFailure(ChowTreesError):
    pass


class ShapeMismatch(ChowTreesError):
    pass


class NotGenericallyDistinct(ChowTreesError):
    pass


class BadLabels(ChowTreesError):
    pass


class ClassMismatch(ChowTreesError):
    pass


class MalformedInput(ChowTreesError, ValueError):
    """Bad input file; ``where`` names the offending field or line."""

    def __init__(self, message, where=None):
        self.where = where
        if where:
            message = f"{where}: {message}"
        super().__init__(message)
