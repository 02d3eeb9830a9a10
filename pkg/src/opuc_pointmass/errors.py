"""Exception hierarchy shared by every module in the package."""


class OPUCError(Exception):
    """Base class for all errors raised by ``opuc_pointmass``."""


class ParameterError(OPUCError, ValueError):
    """An argument lies outside its admissible range."""


class InvalidCoefficientError(ParameterError):
    """A Verblunsky coefficient has modulus >= 1 or is not finite."""


class InsufficientDataError(OPUCError, ValueError):
    """Not enough coefficients (or moments) for the requested degree."""


class OracleDegeneracyError(OPUCError, ArithmeticError):
    """A determinant oracle refused an ill-conditioned matrix."""


class ResolutionError(OPUCError, ValueError):
    """Quadrature grid too coarse for the requested number of moments."""


class ParseError(OPUCError, ValueError):
    """An input file could not be parsed."""
