"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function (e.g. ``u < 0``)."""


class ParameterError(ValueError):
    """A configuration parameter violates an operation's precondition."""


class CapacityError(RuntimeError):
    """The requested computation does not fit the configured memory budget."""
