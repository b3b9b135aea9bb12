"""Exception hierarchy shared by the library and the command line front end."""

from __future__ import annotations


class ToricresError(Exception):
    """Base class for all library errors."""


class InputError(ToricresError, ValueError):
    """Malformed input: dimension mismatch, empty support, bad document."""


class PreconditionError(ToricresError):
    """A mathematical precondition of an algorithm does not hold.

    ``certificate`` carries a JSON-friendly description of why (for
    example a covector witnessing that a collection is not developed).
    """

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotDevelopedError(PreconditionError):
    pass


class DegenerateInstanceError(PreconditionError):
    """Vertex coefficients vanish, so the instance leaves the regular locus."""


class AmbiguousFacetError(PreconditionError):
    """Two vertex faces of one facet would both contribute a nonzero power."""
