"""Exception hierarchy shared by every layer of the package."""


class TwistFRTError(Exception):
    """Base class for all errors raised by twistfrt."""


# scalar layer
class ParamSetMismatch(TwistFRTError):
    pass


class DivisionByZero(TwistFRTError, ZeroDivisionError):
    pass


class PoleAtSubstitution(TwistFRTError):
    pass


# free algebra
class AlphabetMismatch(TwistFRTError):
    pass


class MissingGeneratorImage(TwistFRTError, KeyError):
    pass


class CounitUndefinedForLetter(TwistFRTError):
    pass


# rewriting
class InvalidRule(TwistFRTError):
    pass


class ConfluenceNotEstablished(TwistFRTError):
    """Raised when a zero test is requested beyond the certified degree.

    Callers that build reports turn this into a ``warning`` status.
    """


class ConfluenceFailure(TwistFRTError):
    def __init__(self, message, pairs=()):
        super().__init__(message)
        self.pairs = list(pairs)


# tensors and quadratic data
class DimMismatch(TwistFRTError):
    pass


class NotDiagonalizableQuadratic(TwistFRTError):
    pass


class NotInvolutive(TwistFRTError):
    pass


# hopf layer
class CommutationFailure(TwistFRTError):
    def __init__(self, message, letter=None, residual=None):
        super().__init__(message)
        self.letter = letter
        self.residual = residual


class AxiomFailure(TwistFRTError):
    pass


# solver
class InconsistentSystem(TwistFRTError):
    pass


# text front end
class ParseError(TwistFRTError):
    """Syntax error with a 1-based line/column position and expected tokens."""

    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        loc = f"line {line}, column {column}"
        exp = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{loc}: {message}{exp}")


class SemanticError(TwistFRTError):
    pass
