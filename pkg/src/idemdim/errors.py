"""Exception hierarchy shared by all modules."""


class IdemdimError(Exception):
    """Base class for every error raised by this package."""


class TagMismatch(IdemdimError):
    pass


class RingMismatch(IdemdimError):
    pass


class MalformedTable(IdemdimError):
    pass


class InvalidSemiring(IdemdimError):
    """Raised by the strict loaders when a table fails the axiom check."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class CarrierCap(IdemdimError):
    pass


class UnsupportedQuery(IdemdimError):
    pass


class UnsupportedBase(IdemdimError):
    pass


class UnsupportedFamily(IdemdimError):
    pass


class NotADomainTop(IdemdimError):
    pass


class NotCancellative(IdemdimError):
    pass


class NontrivialKernel(IdemdimError):
    pass


class NegativeExponentAtZero(IdemdimError):
    pass


class ModeError(IdemdimError):
    pass


class BaseError(IdemdimError):
    pass


class ExpressionSyntaxError(IdemdimError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")
