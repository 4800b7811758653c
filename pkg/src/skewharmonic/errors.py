"""Exception hierarchy shared by the numeric modules and the CLI."""


class SkewHarmonicError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(SkewHarmonicError, ValueError):
    """Bad argument: unknown symbol, identity, route or out-of-range option."""


class DomainError(SkewHarmonicError, ValueError):
    """Argument outside the mathematical domain of a function."""


class ConvergenceError(SkewHarmonicError, ArithmeticError):
    """A series did not reach its target within the term budget."""


class QuadratureError(SkewHarmonicError, ArithmeticError):
    """Non-finite integrand sample or exhausted panel/evaluation budget."""
