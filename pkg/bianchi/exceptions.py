"""
Exceptions raised by the Clifford-Bianchi toolkit.

Outcomes that the algorithms treat as data (a Euclidean failure, an LP that is
infeasible or inconclusive, a coset table that hit its cap) are returned as
result objects instead.
"""


class BianchiError(Exception):
    """Base class for every error raised by the toolkit."""


class AlgebraMismatchError(BianchiError):
    """Operands live in different Clifford algebras."""


class RankCapError(BianchiError):
    """An arity or rank cap from the settings was exceeded."""


class ZeroNormError(BianchiError):
    """The element cannot be inverted through its reduced norm."""


class NotParavectorError(BianchiError):
    """A ratio that must be a paravector is not one."""


class NotAnOrderError(BianchiError):
    """A module is not an order. ``witness`` holds the offending element."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotMemberError(BianchiError):
    """A matrix failed the SL2 membership test."""

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic


class NotTidyError(BianchiError):
    """The cusp does not satisfy the tidy congruence."""


class LiftNotFoundError(BianchiError):
    """No SL2 matrix with the requested bottom row was found."""


class CatalogueError(BianchiError):
    """Covering radius requested outside exact rank for an unrecognized lattice."""


class ParseError(BianchiError):
    """Malformed element text, form text or JSON payload."""


class ReductionError(BianchiError):
    """A point could not be brought into the fundamental cell."""
