"""Exception taxonomy.

Mathematical failure modes get their own classes so callers (and the CLI exit
codes) can distinguish "your input is singular/degenerate" from plain usage
errors. Everything derives from SemilaurentError.
"""


class SemilaurentError(Exception):
    """Base class for all library errors."""


class FieldMismatch(SemilaurentError):
    """Operands live over different coefficient fields."""


class DimMismatch(SemilaurentError):
    """Matrix/vector dimensions are incompatible."""


class DivisionByZero(SemilaurentError):
    """Exact division by zero."""


class OrderNotAvailable(SemilaurentError):
    """The field contains no primitive root of unity of the requested order."""


class IndistinguishableFromZero(SemilaurentError):
    """A series has no nonzero coefficient inside its precision window, so
    valuation/inversion queries are meaningless."""


class SingularWithinPrecision(SemilaurentError):
    """A matrix has no invertible reduction within the known precision."""


class NotIntegral(SemilaurentError):
    """An operand required to lie in k[[t]] has a negative-exponent term."""


class SingularAtZero(SemilaurentError):
    """The constant term f(0) is not invertible."""


class ContractionViolated(SemilaurentError):
    """A fixed-point iteration failed its guaranteed congruence; indicates an
    internal bug or a precision shortfall."""


class NotACocycle(SemilaurentError):
    """Input data violates the cocycle compatibility relation."""


class CyclicSearchFailed(SemilaurentError):
    """No cyclic vector found within the trial budget; raise the precision or
    the number of trials."""


class DivisibilityViolated(SemilaurentError):
    """Companion rescaling produced non-integral exponents (the divisibility
    precondition on the generator pair is broken)."""


class NotExtendable(SemilaurentError):
    """Column peeling could not straighten the cocycle; input is not a valid
    compatible cocycle or the precision is insufficient."""


class MissingCoprimePair(SemilaurentError):
    """The semigroup has no pair of coprime generators >= 2."""


class FieldExtensionRequired(SemilaurentError):
    """An eigenvalue computation needs a larger coefficient field; the message
    names the characteristic polynomial that refused to split."""

    def __init__(self, message, charpoly=None):
        super().__init__(message)
        self.charpoly = charpoly


class PreconditionViolated(SemilaurentError):
    """The semigroup lacks the generators a pipeline step requires."""


class SubstitutionPole(SemilaurentError):
    """Substitution target has a zero denominator."""


class DegenerateMap(SemilaurentError):
    """A map that must be dominant has vanishing Jacobian determinant."""
