"""Exception hierarchy shared by every latkit module."""


class LatkitError(Exception):
    """Base class; the CLI maps any of these to exit code 2."""


class NotAPartialOrder(LatkitError):
    pass


class NotALattice(LatkitError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapacityExceeded(LatkitError):
    pass


class UnknownFixture(LatkitError):
    pass


class NotAPrimeOneFilter(LatkitError):
    pass


class NoSplittingPair(LatkitError):
    pass


class NotNormal(LatkitError):
    pass


class TrivialLattice(LatkitError):
    pass


class RLValidationError(LatkitError):
    """A multiplication table failed one of the residuated-lattice checks.

    ``witness`` holds the offending element tuple.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAssociative(RLValidationError):
    pass


class UnitFails(RLValidationError):
    pass


class NotMonotone(RLValidationError):
    pass


class NotResiduated(RLValidationError):
    pass


class SentenceSyntaxError(LatkitError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class SignatureError(LatkitError):
    pass


class NotPositiveUniversal(LatkitError):
    pass


class UnboundVariable(LatkitError):
    pass


class UnsupportedOperation(LatkitError):
    pass


class ParseError(LatkitError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(LatkitError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
