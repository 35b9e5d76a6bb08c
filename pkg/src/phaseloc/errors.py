"""Exception types shared across the package."""


class PhaselocError(Exception):
    """Base class for domain errors."""


class NotNormalized(PhaselocError, ValueError):
    pass


class InvalidExponent(PhaselocError, ValueError):
    pass


class NotInClass(PhaselocError, ValueError):
    """A comb cannot be written as finitely many equally spaced delta series."""


class RangeError(PhaselocError, ValueError):
    """Grid too small or too coarse for the requested state."""


class EmptyStart(PhaselocError, ValueError):
    pass


class NotEigenvector(PhaselocError, ValueError):
    pass
