# -*- coding: utf-8 -*-


class SporcalcError(Exception):
    """Base class for every error raised by sporcalc."""

    exit_code = 1


class PresentationSyntaxError(SporcalcError, ValueError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"(Line {line}, column {column}) {message}"
        super().__init__(message)


class UnknownGeneratorError(SporcalcError, ValueError):
    exit_code = 2


class UnsupportedInputError(SporcalcError, ValueError):
    exit_code = 3


class CapExceededError(SporcalcError, RuntimeError):
    exit_code = 4


class PreconditionError(SporcalcError, ValueError):
    pass


class CertificateError(SporcalcError, AssertionError):
    """An internal consistency check failed. This is always a bug."""


class QuotientError(SporcalcError, ValueError):
    pass


class ConfigError(SporcalcError, ValueError):
    pass
