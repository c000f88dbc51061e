# errors.py

"""
Exceptions raised by the ramification library.

Every error derives from RamificationError so the CLI can report it with a
single handler; the builtin base classes keep ``except ValueError`` style
callers working.
"""


class RamificationError(Exception):
    """Base class for all library errors."""


class UnsupportedError(RamificationError, ValueError):
    """Input outside the supported primes, lengths or variables."""


class DivisionByZeroError(RamificationError, ZeroDivisionError):
    """Rational function with a zero denominator."""

    def __init__(self, message="division by zero"):
        super().__init__(message)


class NotPthPowerError(RamificationError, ValueError):
    """pth_root called on an element that is not a p-th power."""

    def __init__(self, message="not a p-th power"):
        super().__init__(message)


class PreconditionError(RamificationError, ValueError):
    """An operation was called outside its domain."""


class ExactnessViolation(RamificationError, AssertionError):
    """
    A reduction step contradicted the graded exact sequences.

    Never expected on valid input; seeing one means a bug in the reduction.
    """

    def __init__(self, message):
        super().__init__(f"exactness violation: {message}")


class NotRegularError(RamificationError):
    """The Artin-Schreier right-hand side has a pole along the exceptional fiber."""

    def __init__(self, valuation):
        self.valuation = valuation
        super().__init__(f"not regular: ord_t(R) = {valuation} < 0")


class NonReducibleMonomialError(RamificationError):
    """A nonlinear term survived Artin-Schreier canonicalization."""

    def __init__(self, monomial):
        self.monomial = monomial
        super().__init__(f"non-reducible monomial: {monomial}")


class SpecSyntaxError(RamificationError, ValueError):
    """Syntax error in an expression or a spec file."""

    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class SpecValidationError(RamificationError, ValueError):
    """Well-formed spec file with invalid content."""
