"""Exception types shared across the package."""


class VirtbraidError(Exception):
    """Base class for all errors raised by virtbraid."""


class PresentationSyntaxError(VirtbraidError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownGeneratorError(VirtbraidError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown generator `{self.name}`"


class DegreeError(VirtbraidError, ValueError):
    """Degree mismatch, or a degree outside the supported range."""


class RelatorViolation(VirtbraidError, ValueError):
    """Images that do not satisfy a relator of the source presentation."""


class UnsupportedFamily(VirtbraidError, ValueError):
    pass


class NoSolution(VirtbraidError, ValueError):
    """The affine assignment problem only has the degenerate solution."""


class NotDescending(VirtbraidError, ValueError):
    """A map does not induce a well-defined endomorphism of a finite quotient."""


class NotAHomomorphism(VirtbraidError, ValueError):
    """A map on a finite group table does not respect multiplication."""
