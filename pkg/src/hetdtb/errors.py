"""Exception types raised across the package."""


class HetDtbError(Exception):
    """Base class for all package errors."""


class InvalidShift(HetDtbError, ValueError):
    pass


class DimensionError(HetDtbError, ValueError):
    pass


class NoUniqueSolution(HetDtbError):
    """The linear system is singular or inconsistent over GF(2)."""


class InvalidChannel(HetDtbError, ValueError):
    pass


class InvalidCacheFraction(HetDtbError, ValueError):
    pass


class IndivisibleCache(HetDtbError, ValueError):
    """mu * L is not an integer, so the cache cannot hold whole bits."""


class RegimeMismatch(HetDtbError, ValueError):
    pass


class InterpolationRange(HetDtbError, ValueError):
    pass


class NotCovered(HetDtbError):
    """No explicit construction is available for this (mu, channel) pair."""


class CausalityError(HetDtbError):
    """A relay encoder references data it cannot know at that channel use."""


class NotApplicable(HetDtbError):
    pass


class SearchBudgetExceeded(HetDtbError, ValueError):
    pass
