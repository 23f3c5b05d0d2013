"""Exception types raised across the package."""

from __future__ import annotations


class PicsweepError(Exception):
    """Base class for all package errors."""


class RangeError(PicsweepError, ValueError):
    """A frequency lies outside the span a model or matrix can represent."""


class ParamError(PicsweepError, ValueError):
    """A compact-model parameter violates its allowed range."""


class GridMismatch(PicsweepError, ValueError):
    """Two S-matrices are sampled on different frequency grids."""


class SingularConnection(PicsweepError, ArithmeticError):
    """A port connection produces a vanishing growth denominator.

    Attributes:
        frequency: the first offending frequency in Hz.
        connection: optional human-readable description of the connection.
    """

    def __init__(self, message: str, frequency: float | None = None, connection: str | None = None):
        super().__init__(message)
        self.frequency = frequency
        self.connection = connection


class SingularSystem(PicsweepError, ArithmeticError):
    """The direct-solve linear system is singular at some frequency."""

    def __init__(self, message: str, frequency: float | None = None):
        super().__init__(message)
        self.frequency = frequency


class CircuitError(PicsweepError, ValueError):
    """Base class for netlist construction errors."""


class DuplicateName(CircuitError):
    pass


class UnknownInstance(CircuitError, LookupError):
    pass


class UnknownPin(CircuitError, LookupError):
    pass


class DuplicatePin(CircuitError):
    pass


class ArityMismatch(CircuitError):
    pass


class UnknownEndpoint(CircuitError, LookupError):
    pass


class AlreadyConnected(CircuitError):
    pass


class SelfPin(CircuitError):
    pass


class CycleError(CircuitError):
    pass


class ParseError(PicsweepError, ValueError):
    """Malformed netlist or S-parameter file.

    Attributes:
        line: 1-based line number of the offending statement, if known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)
