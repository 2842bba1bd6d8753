class RankEnvError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(RankEnvError, ValueError):
    """An input violated a documented precondition."""


class DegenerateDataError(RankEnvError):
    """The data carry no usable spread (e.g. all curves identical)."""
