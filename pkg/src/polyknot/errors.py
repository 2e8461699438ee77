"""Exception hierarchy shared across the package."""


class PolyknotError(Exception):
    """Base class for all errors raised by this package."""


class EmptyTable(PolyknotError):
    """A coefficient table with no nonzero entry was supplied."""


class IndexOutOfDimension(PolyknotError):
    """A coefficient index has component beyond the declared dimension."""


class NotCertified(PolyknotError):
    """An operation required a certified knot but got another verdict."""


class ZeroLinearPart(PolyknotError):
    """All degree-1 coefficients vanish; the linear projection is not in the
    nonzero-sequence space."""


class SupportExceedsDim(PolyknotError):
    """A sequence has nonzero entries beyond the requested truncation length."""


class ZeroVector(PolyknotError):
    """The zero vector is excluded from the nonzero-sequence space."""


class ZeroPolynomial(PolyknotError):
    """Root isolation of the identically-zero polynomial is undefined."""


class SpaceMismatch(PolyknotError):
    """Ball membership was queried for a point of the wrong space."""


class NegativeInput(PolyknotError):
    """A nonnegative scalar was required."""


class NotMember(PolyknotError):
    """A witness construction requires the given point to lie in the region."""


class BadExponents(PolyknotError):
    """Exponent pair violates the required ordering (needs r >= s >= 1)."""


class ParameterBoundViolated(PolyknotError):
    """Strictness-family parameters do not satisfy the required bound."""


class OutOfRange(PolyknotError):
    """A homotopy parameter lies outside [0, 1]."""


class CertificationFailed(PolyknotError):
    """A homotopy sample failed to certify.  This signals an implementation
    bug: the linearization homotopy provably preserves knots."""

    def __init__(self, parameter, verdict):
        self.parameter = parameter
        self.verdict = verdict
        super().__init__(f"sample at parameter {parameter} not certified: {verdict}")


class PrecisionExhausted(PolyknotError):
    """A strict comparison stayed undecidable at the precision cap."""


class ParseError(PolyknotError):
    """A text document could not be parsed; carries a location diagnostic."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(message if where is None else f"{where}: {message}")
