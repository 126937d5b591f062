"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`CuspidalError`,
so callers (the CLI in particular) can separate input problems from bugs.
"""


class CuspidalError(Exception):
    pass


# jets
class NonvanishingConstantTerm(CuspidalError, ValueError):
    pass


class ZeroConstantTerm(CuspidalError, ZeroDivisionError):
    pass


class NegativeConstantTerm(CuspidalError, ValueError):
    pass


class NotDivisible(CuspidalError, ArithmeticError):
    pass


# germs
class InvariantViolation(CuspidalError, ValueError):
    pass


class NotReducedC1(CuspidalError, ValueError):
    pass


class DegenerateD2(CuspidalError, ValueError):
    pass


class UnknownName(CuspidalError, KeyError):
    pass


class WrongTwoJet(CuspidalError, ValueError):
    pass


class OrderTooLow(CuspidalError, ValueError):
    pass


class NormalizationObstructed(CuspidalError, ValueError):
    """A monomial forbidden by the normal form survived elimination."""


class ParseError(CuspidalError, ValueError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


# frontal / classify
class NotFrontal(CuspidalError, ValueError):
    pass


class NoConvergence(CuspidalError, RuntimeError):
    pass


# geometry
class BranchSingular(CuspidalError, ValueError):
    pass


class FlatCurve(CuspidalError, ValueError):
    pass


class DegenerateBranch(CuspidalError, ValueError):
    pass


class NoRealBranch(CuspidalError, ValueError):
    pass


class NotInS2(CuspidalError, ValueError):
    pass


class DegenerateFrame(CuspidalError, ValueError):
    pass


class DegenerateCurvature(CuspidalError, ValueError):
    pass


class ZeroCurvature(CuspidalError, ZeroDivisionError):
    pass
