"""Exception types shared across the package."""


class FinitaryError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ParseError(FinitaryError):
    """Syntax error in one of the text grammars (CLI exit code 2)."""

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.column}")


class GuardednessError(FinitaryError):
    """A recursion variable occurs outside set-forming braces."""

    def __init__(self, variable, equation, message=None):
        self.variable = variable
        self.equation = equation
        super().__init__(message or f"unguarded occurrence of {variable!r} in equation for {equation!r}")


class DefinitionError(FinitaryError):
    """Duplicate or missing definitions in an equation system."""


class NonWellFoundedError(FinitaryError):
    """A cyclic (non-well-founded) set was used where an HF set is required."""


class NotTotalError(FinitaryError):
    """A partial set containing bottom was used where a total one is required."""


class CapExceededError(FinitaryError):
    """A level-space enumeration would exceed the configured cap."""


class PreconditionError(FinitaryError):
    """An operation's documented precondition does not hold."""
