"""Exception hierarchy.

Every error raised by the library derives from :class:`ContextuaError`, which is
itself a ``ValueError`` so callers that only care about bad input can catch that.
"""


class ContextuaError(ValueError):
    pass


class EmptyPovm(ContextuaError):
    pass


class MalformedLabels(ContextuaError):
    pass


class InvalidSharpness(ContextuaError):
    pass


class NotPositive(ContextuaError):
    """A constructed effect has a negative eigenvalue beyond tolerance."""

    def __init__(self, message, label=None, deficit=None):
        super().__init__(message)
        self.label = label
        self.deficit = deficit


class NotJointlyMeasurable(ContextuaError):
    pass


class NotTriplewiseMeasurable(ContextuaError):
    pass


class StateNotOrthogonal(ContextuaError):
    pass


class NotCoplanar(ContextuaError):
    pass


class NotOrthogonal(ContextuaError):
    pass


class InvalidContextValue(ContextuaError):
    pass


class Incompatible(ContextuaError):
    pass


class DomainError(ContextuaError):
    pass
