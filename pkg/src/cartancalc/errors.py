"""Exception hierarchy for the whole package."""


class CartanError(Exception):
    """Base class for all errors raised by this package."""


class PresentationError(CartanError):
    """Invalid algebra presentation (bad generators, d^2 != 0, ...)."""


class PresentationMismatchError(CartanError):
    """Two values tied to different algebra presentations were combined."""


class DegreeError(CartanError):
    """An operation required homogeneous input of a specific degree."""


class CodomainError(CartanError):
    """A derivation into a proper module was used where an algebra
    endomorphism is required (bracket, differential)."""


class NotACocycleError(CartanError):
    """A cohomology-level operation received a non-closed element."""


class NotAComplexError(CartanError):
    """Composite of two consecutive slices is nonzero; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class HomogeneityError(CartanError):
    """A map given on basis elements is not degree-homogeneous."""


class SimplyConnectedError(CartanError):
    """The construction requires every generator to have degree >= 2."""


class PoincareDualityError(CartanError):
    """Cohomology-level Poincare duality could not be established."""


class FundamentalClassError(CartanError):
    """No contraction witness hitting the fundamental class exists; this
    contradicts the duality theorem under its hypotheses."""


class ParseError(CartanError):
    """Syntax or validation error in a .cdga source, with position info."""

    def __init__(self, message, line=None, col=None, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(sorted(expected))
        loc = f" at line {line}, col {col}" if line is not None else ""
        exp = f" (expected one of: {', '.join(self.expected)})" if expected else ""
        super().__init__(f"{message}{loc}{exp}")


class FixtureError(CartanError):
    """Unknown fixture name."""
