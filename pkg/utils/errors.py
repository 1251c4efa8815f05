"""Exception hierarchy shared by every package; each class knows its CLI exit code."""


class FDQError(Exception):
    """Base class for expected failures of the workbench"""

    exit_code = 1

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class ParseError(FDQError):
    """Malformed expression text, annotated with the offending position"""

    exit_code = 2

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)

    def caret(self):
        """Two-line rendering of the input with a caret under the error position"""
        if self.text is None or self.position is None:
            return self.message
        return f"{self.text}\n{' ' * self.position}^"


class ValidationError(FDQError, ValueError):
    """Arguments violate a documented precondition"""

    exit_code = 3


class ConfigurationError(ValidationError):
    """Invalid lattice configuration or environment setting"""


class NumericFailure(FDQError, ArithmeticError):
    """A numerical integration or eigensolve went wrong"""

    exit_code = 4

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})

    def __str__(self):
        if not self.diagnostics:
            return self.message
        details = ", ".join(f"{key}={value}" for key, value in sorted(self.diagnostics.items()))
        return f"{self.message} ({details})"
