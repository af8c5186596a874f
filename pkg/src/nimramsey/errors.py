"""Exception types shared across the package."""


class NimError(Exception):
    """Base class for all errors raised by nimramsey."""


class ParameterError(NimError, ValueError):
    """Invalid argument: bad family parameters, out-of-range colour, mismatched sizes."""


class ParseError(ParameterError):
    """Malformed graph, colouring or template file."""


class BudgetExceeded(NimError):
    """A search or exhaustive routine would exceed its size or node budget."""


class ConstructionError(NimError):
    """A deterministic construction could not be completed (e.g. n too small)."""
