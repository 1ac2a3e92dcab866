"""Exception hierarchy.

Every error carries a short ``code`` string; the CLI puts it in structured
refusals and warning rows.
"""


class PadicError(Exception):
    code = "Error"


class InvalidPrime(PadicError, ValueError):
    code = "InvalidPrime"


class ContextError(PadicError, ValueError):
    """Operands live over different primes."""
    code = "ContextError"


class DomainError(PadicError, ValueError):
    code = "DomainError"


class ZeroCoefficient(PadicError):
    """A ratio was requested across a vanishing coefficient."""
    code = "ZeroCoefficient"

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"coefficient {index} is zero (valuation inf)")


class ZeroFunction(PadicError):
    code = "ZeroFunction"


class InsufficientPrefix(PadicError):
    """The known prefix of a series cannot decide the requested quantity."""
    code = "InsufficientPrefix"


class OrderTooLow(PadicError):
    code = "OrderTooLow"


class UncertainComposition(PadicError):
    code = "UncertainComposition"


class NotTranscendental(PadicError):
    code = "NotTranscendental"


class NonRationalRootOfUnity(PadicError):
    code = "NonRationalRootOfUnity"


class HypothesisViolation(PadicError):
    code = "HypothesisViolation"
