"""Exception types shared across the package."""


class EdsLabError(Exception):
    """Base class for all package errors."""


class PreconditionError(EdsLabError):
    """An operation was called outside its contract (exit code 2 territory)."""


class VerificationError(EdsLabError):
    """An internal consistency check failed (exit code 3 territory)."""


class SingularCurveError(PreconditionError):
    """A singular cubic was used where a nonsingular curve is required."""


class SingularPointError(PreconditionError):
    """A group operation touched the singular point of a singular cubic."""


class SingularReduction(PreconditionError):
    """The base point reduces to the singular point modulo p."""


class TorsionPointError(PreconditionError):
    """The base point is torsion, so the sequence is not defined."""


class NonSquareDenominator(VerificationError):
    """x([n]P) denominator is not a perfect square; signals an arithmetic bug."""


class FactorizationFailure(PreconditionError):
    """Input exceeds the deterministic trial-division scale."""


class ZeroArgument(PreconditionError):
    """p-adic valuation of zero requested."""


class TermCapExceeded(PreconditionError):
    """Exact term index above the growth guard; set an override to proceed."""


class UnclassifiableArrow(VerificationError):
    """An arrow fits none of the classification branches."""


class NotFound(EdsLabError):
    """Exhaustive search over the finite-field curve space found no match."""
