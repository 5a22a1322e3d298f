"""Exception hierarchy shared by the library and the command-line front end."""


class SdsSteerError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(SdsSteerError, ValueError):
    """An argument is malformed, non-finite, or outside its type's domain."""


class DomainError(SdsSteerError, ValueError):
    """Parameters lie outside the admissible Schwarzschild-de Sitter region."""


class DegenerateStateError(SdsSteerError, ArithmeticError):
    """A covariance matrix has a non-positive determinant."""


class NumericError(SdsSteerError, ArithmeticError):
    """A linear-algebra routine failed to converge."""


class SqueezingOverflowError(SdsSteerError, OverflowError):
    """Squeezing diverges in the near-infinite-temperature regime."""


class BracketError(SdsSteerError, ValueError):
    """A root-finding bracket does not straddle a sign change."""

    def __init__(self, message, lo=None, hi=None, f_lo=None, f_hi=None):
        super().__init__(message)
        self.lo = lo
        self.hi = hi
        self.f_lo = f_lo
        self.f_hi = f_hi


class SweepSpecError(InvalidArgumentError):
    """A sweep description failed validation."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid sweep spec: " + "; ".join(self.problems))
