"""Exception types shared across the package."""


class WedmatchError(Exception):
    pass


class ParseError(WedmatchError, ValueError):
    pass


class NormalizationError(WedmatchError, ValueError):
    pass


class PreconditionError(WedmatchError, ValueError):
    pass


class EmptyInput(PreconditionError):
    pass


class ShapeError(WedmatchError, ValueError):
    pass


class RangeError(WedmatchError, ValueError):
    pass


class DimensionError(WedmatchError, ValueError):
    pass


class SizeError(WedmatchError, ValueError):
    pass


class FitError(WedmatchError, ValueError):
    pass


class TorsionError(WedmatchError, ValueError):
    pass


class InfiniteEntryError(WedmatchError, ValueError):
    pass
