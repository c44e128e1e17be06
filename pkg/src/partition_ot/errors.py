"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class UnsupportedDimensionError(DomainError):
    pass


class FormatError(DomainError):
    """A text or JSON literal could not be parsed into a valid object."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


class NoTransportMapError(DomainError):
    pass


class NotMetricLikeError(DomainError):
    pass


class SearchLimitError(DomainError):
    """Refusal to run an exhaustive search above its configured bound."""
