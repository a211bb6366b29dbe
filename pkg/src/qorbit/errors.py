"""Error types shared across the package.

Every domain error raised by the library derives from QOrbitError, so the
CLI (and library users) can distinguish bad inputs from genuine bugs.
"""


class QOrbitError(Exception):
    """Base class for all domain errors raised by this package."""


class CompositeModulus(QOrbitError):
    """The requested modulus is not prime."""


class EvenModulus(QOrbitError):
    """The requested modulus is 2; only odd primes are supported."""


class OutOfRange(QOrbitError):
    """The requested modulus is outside the supported range [3, 2^62)."""


class DivisionByZero(QOrbitError):
    """Multiplicative inverse of zero requested."""


class InvalidQuadratic(QOrbitError):
    """Quadratic coefficients violate a != 0 mod p."""


class IterateCapExceeded(QOrbitError):
    """Symbolic iterate request exceeds the configured degree cap."""


class ConstantPolynomial(QOrbitError):
    """Irreducibility is undefined for polynomials of degree < 1."""


class WindowTooLarge(QOrbitError):
    """Character-sum window K or subset degree is out of the supported range."""


class DomainTooLarge(QOrbitError):
    """Triple-space scan requested for a modulus too large to enumerate."""


class NotStableInput(QOrbitError):
    """Operation requires a polynomial with a Stable verdict."""


class BudgetExceeded(QOrbitError):
    """Census size exceeds the configured triple budget."""
