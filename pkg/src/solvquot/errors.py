"""Exception types shared across the package; the CLI maps them to exit codes."""


class SolvquotError(Exception):
    exit_code = 1


class ParseError(SolvquotError, ValueError):
    exit_code = 2

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


class ValidationError(SolvquotError, ValueError):
    exit_code = 3


class TrivialActionError(SolvquotError):
    exit_code = 4


class IterationCapError(SolvquotError, RuntimeError):
    exit_code = 5


class VerificationError(SolvquotError):
    exit_code = 6


DEFAULT_MAX_ITER = 10_000
