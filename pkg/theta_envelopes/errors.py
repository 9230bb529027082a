class ThetaEnvelopeError(Exception):
    """
    Base class for every error raised by the theta_envelopes package.
    """


class DomainError(ThetaEnvelopeError, ValueError):
    """
    Raised when an input violates a precondition. The message names the failed relation.
    """


class SingularCurveError(DomainError):
    """
    Raised when an operation needs a nonsingular curve and the discriminant vanishes.
    """


class PoleError(DomainError):
    """
    Raised when a birational map is evaluated on its excluded locus.
    """


class CertificationError(DomainError):
    """
    Raised when a point on the ratio curve cannot certify any n (torsion input, or no
    sign choice makes the certifying expression positive).
    """


class ConstructionError(ThetaEnvelopeError):
    """
    Raised when a constructor cannot place the triangle sides so that b and d are positive.
    """


class ConsistencyError(ThetaEnvelopeError):
    """
    Raised when an internally computed point or envelope fails its own defining equations.
    """


class RecordParseError(ThetaEnvelopeError):
    """
    Raised when an envelope record cannot be parsed.
    """

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class DataFileError(ThetaEnvelopeError):
    """
    Raised when a bundled table is missing or malformed.
    """
