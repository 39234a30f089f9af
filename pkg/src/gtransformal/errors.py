"""Exception hierarchy shared by every module in the package."""


class GTransformalError(Exception):
    """Base class for all package errors."""


class NotAGroup(GTransformalError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OrderTooLarge(GTransformalError):
    pass


class NotSurjective(GTransformalError):
    pass


class NotAHomomorphism(GTransformalError):
    pass


class TruncationTooSmall(GTransformalError):
    pass


class Unsupported(GTransformalError):
    pass


class NotPrime(GTransformalError):
    pass


class TooLarge(GTransformalError):
    pass


class DegreeMismatch(GTransformalError):
    pass


class ZeroPolynomial(GTransformalError):
    pass


class ArityMismatch(GTransformalError):
    pass


class LayoutMismatch(GTransformalError):
    pass


class BudgetExceeded(GTransformalError):
    pass


class NotZeroDimensional(GTransformalError):
    pass


class InfiniteField(GTransformalError):
    pass


class InfiniteCarrier(InfiniteField):
    pass


class NotABasis(GTransformalError):
    pass


class NotStrict(GTransformalError):
    pass


class InvalidTensors(GTransformalError):
    pass


class HypothesesFail(GTransformalError):
    def __init__(self, message, failed=()):
        super().__init__(message)
        self.failed = tuple(failed)


class CoefficientsNotConstant(GTransformalError):
    pass


class WrongGroupOrder(GTransformalError):
    pass


class ConductorMismatch(GTransformalError):
    pass


class CapExceeded(GTransformalError):
    pass


class ParseError(GTransformalError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SessionError(GTransformalError):
    pass
