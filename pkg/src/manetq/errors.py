"""Exception hierarchy shared by all modules."""


class ManetqError(Exception):
    """Base class for errors raised by this package."""


class InvalidParameterError(ManetqError, ValueError):
    """A parameter is malformed, non-positive, or otherwise unusable."""


class DomainError(ManetqError, ValueError):
    """Parameters are valid but outside the range where a formula is derived."""


class RegimeError(ManetqError, ValueError):
    """A metric was paired with an asymptotic regime it has no limit in."""


class InfeasibleTargetError(ManetqError, ValueError):
    """A quality target cannot be met; ``max_value`` is the best attainable value."""

    def __init__(self, message, max_value=None):
        super().__init__(message)
        self.max_value = max_value
