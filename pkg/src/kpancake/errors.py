"""Exception hierarchy shared by every module."""


class KPancakeError(Exception):
    """Base class for all errors raised by kpancake."""


class CapacityError(KPancakeError):
    """The requested instance is too large (rank overflow or memory budget)."""


class RangeError(KPancakeError, ValueError):
    """An index, flip length or rank lies outside its valid range."""


class ParseError(KPancakeError, ValueError):
    """Malformed coloured-permutation text."""


class StateError(KPancakeError, RuntimeError):
    """An iterator was used after it terminated."""
