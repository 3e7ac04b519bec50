"""Exception types raised by the synthesis library."""


class DescoError(Exception):
    """Base class for all library errors."""


class AlphabetMismatch(DescoError):
    """Two generators were combined over different event tables."""


class UnknownEvent(DescoError):
    pass


class PreconditionViolated(DescoError):
    """An operation's input contract does not hold.

    ``witness`` carries a string (tuple of events) demonstrating the failed
    inclusion when one is available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Blocking(DescoError):
    """A nonblocking generator was required."""


class ParseError(DescoError):
    """Base class for generator-file diagnostics (line/column addressed)."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class GenSyntaxError(ParseError):
    pass


class DuplicateTransition(ParseError):
    pass


class UnknownReference(ParseError):
    pass


class NoInitialState(ParseError):
    pass
