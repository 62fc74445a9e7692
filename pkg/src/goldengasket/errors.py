"""Shared exception types."""


class DomainError(ValueError):
    """An argument lies outside the range a routine is defined for."""


class NoRootError(ValueError):
    """The given interval brackets no root of the polynomial."""


class MultipleRootsError(ValueError):
    """The given interval contains more than one root, or a non-simple root."""


class PrecisionExhausted(RuntimeError):
    """Interval refinement hit its round cap without deciding a sign.

    Reaching this almost always means a combination was compared against a
    value it is exactly equal to but whose equality the symbolic reduction
    cannot see (for example two defining polynomials sharing a root).  It
    signals a defect in the calling code, not a tolerance to widen.
    """


class ResourceLimit(RuntimeError):
    """An enumeration or search exceeded its configured budget."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
