"""Exception hierarchy.

Every error carries an ``exit_code`` used by the CLI:
    1 -- an internal invariant was violated (theory contradicted, i.e. a bug),
    2 -- invalid user parameters,
    3 -- enumeration budget exceeded.
"""


class SkewlabError(Exception):
    exit_code = 2


class InternalInvariantError(SkewlabError):
    """Something theory guarantees failed to hold; signals an implementation bug."""

    exit_code = 1


# --- field / polynomial layer -------------------------------------------------

class LevelMismatch(SkewlabError):
    pass


class DivisionByZero(SkewlabError, ZeroDivisionError):
    pass


class NotASubfield(SkewlabError):
    pass


# --- skew polynomial layer ----------------------------------------------------

class BothZero(SkewlabError):
    pass


class ZeroInput(SkewlabError):
    pass


# --- quotient ring layer ------------------------------------------------------

class RingMismatch(SkewlabError):
    pass


class ZeroDivisor(SkewlabError):
    """Raised when inverting a nonzero non-unit of the quotient ring."""


# --- matrix representation layer ----------------------------------------------

class NoDivisorFound(InternalInvariantError):
    pass


class ScaleTooLarge(SkewlabError):
    pass


class NoInvertibleSolution(InternalInvariantError):
    pass


class NoUnitSolution(InternalInvariantError):
    pass


# --- code layer -----------------------------------------------------------------

class TooLarge(SkewlabError):
    exit_code = 3


class NotInvertible(SkewlabError):
    pass


class NoInvertibleCodeword(SkewlabError):
    pass


# --- family layer ---------------------------------------------------------------

class InvalidEta(SkewlabError):
    pass


class InvalidGamma(SkewlabError):
    pass


class EvenQ(SkewlabError):
    pass


class OddN(SkewlabError):
    pass


class OutOfTheoremRange(SkewlabError):
    """Requested a theoretical prediction outside the proven parameter range."""


class MismatchFound(InternalInvariantError):
    """A proposition-level verification failed; would falsify proved theory."""
