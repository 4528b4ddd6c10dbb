"""Exception hierarchy shared by every llab module."""

from __future__ import annotations


class LlabError(Exception):
    """Base class; the CLI maps subclasses to exit statuses."""


class InputError(LlabError, ValueError):
    """Malformed input document or argument (CLI exit status 2)."""


class DimensionError(InputError):
    pass


class InterpolationError(LlabError):
    """Grid values are not those of a polynomial of the requested degree."""


class InvalidSpecError(InputError):
    pass


class WrongCaseError(InputError):
    pass


class NoPredecessorError(InputError):
    pass


class ResourceError(LlabError):
    """A brute-force oracle would exceed its size guard (CLI exit status 3)."""


class GenerationError(LlabError):
    pass


class ExactnessRequiredError(LlabError):
    pass


class DegenerateSeriesError(LlabError):
    pass


class EmptyStratumError(LlabError):
    pass


class ScopeError(InputError):
    pass


class GenericityError(LlabError):
    pass
