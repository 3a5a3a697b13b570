class DeltaAlgError(Exception):
    """Base error for everything raised by deltaalg."""


class DivisionByZero(DeltaAlgError, ZeroDivisionError):
    """Error for when a scalar is divided by zero."""


class NonRationalCoefficients(DeltaAlgError):
    """Error for when a rational-root search receives a Gaussian coefficient."""


class DegenerateInput(DeltaAlgError):
    """Error for when a pencil is identically zero."""


class NotCommuting(DeltaAlgError):
    """Error for when operators expected to commute do not."""


class NotDiagonalizable(DeltaAlgError):
    """Error for when the candidate eigenvalues do not exhaust the space."""


class DimensionMismatch(DeltaAlgError):
    """Error for when an element does not belong to the algebra it is used with."""


class TooLarge(DeltaAlgError):
    """Error for when a construction parameter exceeds the supported size."""


class GradedInput(DeltaAlgError):
    """Error for when an ordinary algebra is expected but odd elements exist."""


class GradingError(DeltaAlgError):
    """Error for when a structure constant violates the Z2-grading."""


class ZeroVector(DeltaAlgError):
    """Error for when a nonzero vector is required."""


class NotIdempotent(DeltaAlgError):
    """Error for when an element expected to be idempotent is not."""


class NotPeirce(DeltaAlgError):
    """Error for when eigenvalues outside of {0, 1/2, 1} show up."""


class NotClosed(DeltaAlgError):
    """Error for when a subspace is not closed under multiplication."""


class NotUnital(DeltaAlgError):
    """Error for when a unit is missing or does not act as one."""


class NotFlexible(DeltaAlgError):
    """Error for when the flexibility identity fails."""


class OutOfRange(DeltaAlgError):
    """Error for when a construction parameter is outside of its supported range."""


class EqualBlocks(OutOfRange):
    """Error for when sl(n, n) is requested."""


class BadParameter(DeltaAlgError):
    """Error for when a construction parameter is invalid."""


class K10DataCorrupt(DeltaAlgError):
    """Error for when the packaged K10 table fails validation."""


class ParityMismatch(DeltaAlgError):
    """Error for when a map or element does not have the required parity."""


class VerificationFailed(DeltaAlgError):
    """Error for when a computed solution fails exact re-verification."""


class UnknownAlgebra(DeltaAlgError):
    """Error for when a construction name is not known."""


class SchemaError(DeltaAlgError):
    """Error for when an algebra file does not match the JSON schema."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"
