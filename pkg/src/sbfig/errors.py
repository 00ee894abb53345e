"""Exception types shared across the package."""


class SbfigError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SbfigError):
    """Malformed or incompatible input: bad files, mismatched point kinds,
    unknown labels, out-of-range parameters."""


class DomainError(SbfigError):
    """A value outside an operation's mathematical domain, such as the
    excluded focus of an Apollonius figure or a nonpositive argument to
    one of the comparison functions."""


class SymmetryError(SbfigError):
    """A construction required symmetry that the sample does not satisfy."""

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = list(witnesses)


class UndefinedMinimalB(SbfigError):
    """No quadruple with a positive denominator exists, so the minimal
    relaxation constant is undefined on this sample."""
