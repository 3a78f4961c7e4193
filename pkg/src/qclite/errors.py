"""Error types shared by every stage of the interpreter."""

from __future__ import annotations


class QclError(Exception):
    """Base class for all interpreter errors, optionally carrying a source position."""

    kind = "error"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        if self.line is None:
            return f"{self.kind}: {self.message}"
        return f"{self.kind} at {self.line}:{self.column}: {self.message}"


class LexError(QclError):
    kind = "lexical error"


class ParseError(QclError):
    kind = "parse error"


class StaticError(QclError):
    kind = "static error"


class StaticErrorList(QclError):
    """A batch of static diagnostics collected for one program or input line."""

    kind = "static error"

    def __init__(self, errors: list[StaticError]):
        super().__init__(errors[0].message if errors else "static check failed")
        self.errors = errors

    def __str__(self) -> str:
        return "\n".join(str(e) for e in self.errors)


class QclRuntimeError(QclError):
    kind = "runtime error"


class AllocationError(QclRuntimeError):
    kind = "allocation error"


class RegisterError(QclRuntimeError):
    kind = "register error"


class ExitSession(Exception):
    """Raised by the exit statement to unwind the running session."""


class ReturnSignal(Exception):
    """Internal control flow for return statements inside functions."""

    def __init__(self, value):
        super().__init__("return")
        self.value = value
