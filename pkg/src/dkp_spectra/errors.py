"""Exception types shared across the package."""


class SpectraError(Exception):
    """Base class for every package-specific error."""


class DomainError(SpectraError):
    """Argument outside the mathematical domain of an operation."""


class PoleInDenominator(SpectraError):
    """A lower series parameter hits a non-positive integer before termination."""


class InvalidConstants(SpectraError):
    """Parametric constants would need the square root of a negative number."""


class ConstraintViolation(SpectraError):
    """Eigenfunction validity constraints are violated in strict mode."""


class NoRoot(SpectraError):
    """No sign change of the quantization residual inside the bracket."""


class NoBoundState(SpectraError):
    """The requested level does not exist for these parameters."""


class SupercriticalCoupling(SpectraError):
    """Coupling exceeds J + 1/2; the effective angular index is imaginary."""


class DivergentNorm(SpectraError):
    """The wave function does not decay; its square is not integrable."""
