"""Exception types shared across the package."""


class SwitchOscError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SwitchOscError, ValueError):
    """A parameter or argument violates a documented validity constraint."""


class RangeError(SwitchOscError, ValueError):
    """An argument lies outside the interval an operation is defined on."""


class ToleranceNotMet(SwitchOscError, ArithmeticError):
    """A numerical routine could not reach the requested accuracy."""


class NoSignChange(SwitchOscError, ValueError):
    """A bracketing root search was given endpoints of equal sign."""


class NotNormalized(SwitchOscError, ValueError):
    """A phase-space grid does not integrate to one within tolerance."""
