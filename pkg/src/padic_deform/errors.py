"""Exception taxonomy shared by all modules.

Precision-related errors form a hierarchy rooted at InsufficientPrecision so
that the adaptive driver can catch "raise e and retry" conditions uniformly,
while hard input errors (ParentMismatch, SingularEquation, ...) propagate.
"""


class PadicDeformError(Exception):
    """Base class for all package errors."""


class ParentMismatch(PadicDeformError):
    """Operands belong to different fields or rings."""


class DivisionByZero(PadicDeformError):
    """Inversion of an exact zero."""


class OddCharRequired(PadicDeformError):
    """Operation defined only for odd residue characteristic."""


class EvenCharRequired(PadicDeformError):
    """Operation defined only for residue characteristic 2."""


class FieldTooLarge(PadicDeformError):
    """Residue field exceeds the supported enumeration scale."""


class InsufficientPrecision(PadicDeformError):
    """A decision depends on digits beyond the tracked precision.

    Catching this is the caller's signal to rebuild at a higher precision
    level; it never indicates invalid input.
    """


class PrecisionLoss(InsufficientPrecision):
    """A result is indistinguishable from zero at the available precision."""


class PrecisionExceedsIso(InsufficientPrecision):
    """A truncated-ring operation was requested beyond the isomorphism level."""


class SingularEquation(PadicDeformError):
    """Weierstrass equation with exactly vanishing discriminant."""


class ReducibleASPolynomial(PadicDeformError):
    """The Artin-Schreier polynomial splits; it does not cut out a field."""


class NonIntegralTwist(PadicDeformError):
    """A twisted Weierstrass model failed its integrality precondition."""


class DeformMismatch(InsufficientPrecision):
    """A quantity the deformation must preserve differs between the sides.

    Subclasses name the failing comparison.  These inherit from
    InsufficientPrecision because the standard cause is a precision level
    below the (non-effective) threshold, and the standard cure is a retry.
    """


class DeltaValuationMismatch(DeformMismatch):
    """v(discriminant) changed under coefficient transport."""


class DiscMismatch(DeformMismatch):
    """Discriminant valuation of the quadratic extension changed."""


class ClassMismatch(DeformMismatch):
    """Unit-class transport of the discriminant failed."""


class PrecisionCapExceeded(PadicDeformError):
    """The adaptive precision loop hit its cap without converging."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InternalInvariantViolation(PadicDeformError):
    """An invariant the implementation guarantees was observed to fail."""
