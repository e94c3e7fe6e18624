"""Exception types raised across the package."""


class PolytorsError(Exception):
    """Base class for every error raised by polytors."""


class InvalidBaseError(PolytorsError, ValueError):
    """The base is not a prime in the supported range."""


class DomainError(PolytorsError, ValueError):
    """An argument lies outside the domain of an operation."""


class BracketError(DomainError):
    """k lies below the first row of the low-degree table."""


class ConsistencyError(PolytorsError):
    """Two sources of homology data disagree in the same degree.

    Both values are kept on the exception so callers can report them.
    """

    def __init__(self, degree, left, right, message=None):
        self.degree = degree
        self.left = left
        self.right = right
        if message is None:
            message = f"inconsistent data in degree {degree}: {left} vs {right}"
        super().__init__(message)
