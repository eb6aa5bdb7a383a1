"""Exception hierarchy shared by all quasitwist modules."""


class QuasitwistError(Exception):
    """Base class for all library errors."""


class DomainError(QuasitwistError):
    """An argument is outside the mathematical domain of the operation."""


class FieldMismatch(QuasitwistError):
    """Operands belong to incompatible fields."""


class ShapeError(QuasitwistError):
    """A vector, word, or matrix has the wrong dimensions."""


class UnsupportedParameters(QuasitwistError):
    """Parameters violate a standing assumption (e.g. gcd(m, p) != 1)."""


class InvalidBasis(QuasitwistError):
    """A generator matrix violates one of the four reduced-basis properties.

    ``violated_property`` is the 1-based index of the broken property.
    """

    def __init__(self, violated_property: int, message: str):
        super().__init__(f"property {violated_property}: {message}")
        self.violated_property = violated_property


class NotAnEigenvalue(QuasitwistError):
    """The requested index is not an eigenvalue index of the code."""


class InvalidBoundParams(QuasitwistError):
    """Bound parameters violate the gcd/range hypotheses."""


class BoundNotApplicable(QuasitwistError):
    """The distance bound's hypotheses fail for this code and index set."""


class InadmissibleEigenvector(DomainError):
    """Eigenvector components are linearly dependent over the base field."""


class EvaluationInconsistent(QuasitwistError):
    """Error values cannot be decomposed over the base field."""


class SingularMatrix(QuasitwistError):
    """A matrix that must be invertible is singular."""


class SingularLeadBlock(SingularMatrix):
    """The leading block of a generator is singular; caller should resample."""


class WeightTooLarge(QuasitwistError):
    """Message weight exceeds the published capacity t."""


class DecryptionFailure(QuasitwistError):
    """Ciphertext could not be decrypted (malformed or excess weight)."""


class KeygenRetryExhausted(QuasitwistError):
    """No usable decoder configuration found within the sampling budget."""


class BudgetExceeded(QuasitwistError):
    """A brute-force enumeration would exceed the configured budget."""
