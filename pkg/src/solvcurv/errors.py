"""Exception types shared across the package."""


class SolvcurvError(Exception):
    """Base class for all package errors."""


class DimensionError(SolvcurvError):
    """Matrix operands have incompatible shapes."""


class ParamError(SolvcurvError):
    """Family parameters outside the supported range."""


class NotClosedError(SolvcurvError):
    """A bracket escapes the span of the given basis.

    Carries the offending index pair and the residual norm of the
    least-squares expansion.
    """

    def __init__(self, pair, residual, message=None):
        self.pair = pair
        self.residual = residual
        super().__init__(
            message
            or f"bracket of basis pair {pair} leaves the span "
            f"(relative residual {residual:.3e})"
        )


class DegenerateRootSystemError(SolvcurvError):
    """Simple roots fail to be linearly independent."""


class InternalError(SolvcurvError):
    """An invariant that should hold by construction was violated."""


class ClosureViolation(SolvcurvError):
    """A retained pair brackets into a dropped basis vector."""

    def __init__(self, pair, value, message=None):
        self.pair = pair
        self.value = value
        super().__init__(
            message
            or f"retained pair {pair} maps onto a dropped vector "
            f"(coefficient {value:.3e})"
        )


class ParityError(SolvcurvError):
    """A sign-flag assignment is not closed under the bracket."""

    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(
            message or f"sign flags violate closure on structure entry {triple}"
        )


class DegeneratePlaneError(SolvcurvError):
    """Two vectors supposed to span a 2-plane are linearly dependent."""


class NotIwasawaError(SolvcurvError):
    """An operation requiring the standard solvable form got unsuitable input."""
