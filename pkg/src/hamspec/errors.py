"""Exception hierarchy shared by every module."""
from __future__ import annotations


class HamspecError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(HamspecError, ValueError):
    """Parameters fall outside the range a constructor or audit accepts."""


class Graph6Error(HamspecError, ValueError):
    """Malformed graph6 input; ``offset`` is the index of the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.message = message
        self.offset = offset


class CapacityError(HamspecError):
    """The request exceeds a configured size cap or work budget."""


class ConvergenceError(HamspecError):
    """An iterative solver hit its iteration cap.

    ``estimate`` holds the best value seen and ``residual`` its eigen-residual.
    """

    def __init__(self, message: str, estimate: float, residual: float, iterations: int):
        super().__init__(f"{message}: best estimate {estimate!r}, residual {residual:.3e} after {iterations} iterations")
        self.estimate = estimate
        self.residual = residual
        self.iterations = iterations
