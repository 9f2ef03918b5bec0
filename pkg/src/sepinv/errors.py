"""Exception types raised across the package."""


class SepinvError(Exception):
    """Base class for all errors raised by sepinv."""


class ZeroDenominator(SepinvError, ZeroDivisionError):
    pass


class NotASquare(SepinvError, ValueError):
    """The square root does not exist in Q(i)."""


class SizeMismatch(SepinvError, ValueError):
    pass


class SingularMatrix(SepinvError, ValueError):
    pass


class EmptyWord(SepinvError, ValueError):
    pass


class IndexOutOfRange(SepinvError, IndexError):
    pass


class NotTraceZero(SepinvError, ValueError):
    pass


class NotInSL2(SepinvError, ValueError):
    pass


class NTooSmall(SepinvError, ValueError):
    pass


class InconsistentData(SepinvError, ValueError):
    pass


class FieldExtensionRequired(SepinvError, ArithmeticError):
    """A needed eigenvalue lies outside Q(i)."""


class NotTriangularizable(SepinvError, ValueError):
    pass


class NotUpperTriangular(SepinvError, ValueError):
    pass


class NotInCFamily(SepinvError, ValueError):
    pass


class BudgetExceeded(SepinvError, RuntimeError):
    pass


class ParseError(SepinvError, ValueError):
    pass


class LengthMismatch(ParseError):
    pass
