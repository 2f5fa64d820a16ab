"""Exception hierarchy shared by all modules."""


class SzegoLabError(Exception):
    pass


class InvalidInputError(SzegoLabError, ValueError):
    """Malformed or unsupported input (empty arrays, wrong point dimension, ...)."""


class PreconditionError(SzegoLabError, ValueError):
    """A documented precondition failed, e.g. a grid too small to avoid aliasing."""


class DomainError(SzegoLabError, ValueError):
    """A point lies outside the admissible set or too close to a pole locus."""


class ConfigurationError(SzegoLabError, ValueError):
    """Invalid configuration: bad conformal-map branch, unknown experiment field, ..."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
