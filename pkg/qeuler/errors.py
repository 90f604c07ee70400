from __future__ import annotations


class QEulerError(Exception):
    """Base class for every error raised by qeuler."""


class DomainError(QEulerError, ValueError):
    """Parameters outside the domain where an object is defined."""


class PoleError(DomainError):
    """A denominator such as 1 + w q^h vanishes (or is within pole_tol of zero)."""


class QDivisionError(DomainError, ZeroDivisionError):
    """Division by 1 - q (or 1 + q) on a path that needs q != 1 (q != -1)."""


class NonUnitError(DomainError):
    """p-adic division by an element that is not a unit."""


class EmbeddingError(DomainError):
    """A root of unity cannot be represented in the requested scalar field."""


class UnsupportedCharacterError(EmbeddingError):
    """Character values outside {0, 1, -1} requested in p-adic mode."""


class PrecisionError(DomainError):
    """Working p-adic precision cannot deliver the requested valuation."""


class InexactPowerError(DomainError):
    """A non-integer power was requested from an exact carrier."""


class CapReachedError(QEulerError, RuntimeError):
    """An internal iteration cap was reached before the result stabilized."""


class TruncationError(CapReachedError):
    """A series did not meet its tolerance within max_terms terms."""


class NonConvergenceError(CapReachedError):
    """p-adic level sums did not stabilize within the level or summand cap."""


class VerificationError(QEulerError):
    """Two independent evaluation paths disagree."""


EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_DOMAIN = 2
EXIT_CAP = 3


def exit_code_for(exc: QEulerError) -> int:
    if isinstance(exc, VerificationError):
        return EXIT_VERIFICATION
    if isinstance(exc, CapReachedError):
        return EXIT_CAP
    return EXIT_DOMAIN
