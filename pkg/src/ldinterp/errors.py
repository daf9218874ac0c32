"""Exception types raised by ldinterp."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ValidationError(ValueError):
    """User-supplied parameters or data violate a precondition."""


class NodeConstructionError(RuntimeError):
    """Internal consistency failure while building a node set."""
