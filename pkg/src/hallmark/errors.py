"""Exception hierarchy shared by the library and the command line."""


class HallmarkError(Exception):
    """Base class for every error raised by hallmark."""


class DomainError(HallmarkError, ValueError):
    """An argument lies outside the domain of an arithmetic operation."""


class FormatError(HallmarkError, ValueError):
    """Malformed permutation, group file or factor token."""


class ResourceLimitError(HallmarkError):
    """An enumeration cap or subgroup-count guard was exceeded."""


class ScopeError(HallmarkError):
    """The request is outside the range where an answer can be certified."""
