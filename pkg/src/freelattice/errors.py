"""Shared exception types.

Domain failures raise ``FreeLatticeError`` subclasses; the CLI maps them to
exit code 1, while usage problems (bad flags, unknown subcommands) exit 2.
"""


class FreeLatticeError(Exception):
    """Base class for all domain errors raised by this package."""


class ExprSyntaxError(FreeLatticeError):
    """Raised by the expression parser; carries the 0-based offset of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DimensionMismatch(FreeLatticeError):
    """An operand has the wrong number of coordinates or generators."""


class CapExceeded(FreeLatticeError):
    """A configurable size guard (form count, hyperplane count, net size) fired."""


class DisjointnessError(FreeLatticeError):
    """Inputs that must be pairwise disjoint are not."""


class AlgorithmDefect(FreeLatticeError):
    """An internal invariant failed.  Indicates a bug, never bad input."""
