"""Exception hierarchy.

Every condition that makes a toric computation inapplicable to its input is a
:class:`ToricError`; the CLI maps these to exit status 1.
"""


class ToricError(Exception):
    """Base class for domain errors."""


class NotPrime(ToricError):
    pass


class NoOrigin(ToricError):
    pass


class KerBTrivial(ToricError):
    pass


class NotPointed(ToricError):
    pass


class SearchBudgetExceeded(ToricError):
    pass


class UnboundedFiber(ToricError):
    pass


class MissingDiagonalRow(ToricError):
    pass


class ColumnNotInKernel(ToricError):
    pass


class EmptyFiber(ToricError):
    pass


class NotPrincipal(ToricError):
    """The divisor (f) = sum v_g Z_g has nonzero Chern class, so no map has it."""
