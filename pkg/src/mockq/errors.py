"""Exception hierarchy for the q-series engine."""


class QSeriesError(Exception):
    """Base class for every error raised by :mod:`mockq`."""


class NotInvertible(QSeriesError):
    pass


class OrderBeyondTruncation(QSeriesError):
    pass


class FractionalSignSubstitution(QSeriesError):
    pass


class DivergentProduct(QSeriesError):
    pass


class DivergentSum(QSeriesError):
    pass


class NonGenericParameters(QSeriesError):
    """A denominator of an Appell-Lerch sum or theta quotient vanishes."""


class FormalPole(QSeriesError):
    """A denominator 1 - mu has a formal-symbol part at q-valuation zero."""


class UndeclaredSymbol(QSeriesError):
    pass


class UnknownPair(QSeriesError):
    pass


class UnknownEntry(QSeriesError):
    pass


class UnknownFunction(QSeriesError):
    pass


class ParseError(QSeriesError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
