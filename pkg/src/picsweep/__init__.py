"""Frequency-domain simulation of linear photonic circuits by sub-network growth."""

from .cascade import compose, connect, innerconnect, internal_amplitudes, reduce_circuit
from .circuit import Connection, ComponentInstance, Subcircuit, flatten
from .errors import (
    AlreadyConnected,
    ArityMismatch,
    CycleError,
    DuplicateName,
    DuplicatePin,
    GridMismatch,
    ParamError,
    ParseError,
    RangeError,
    SelfPin,
    SingularConnection,
    SingularSystem,
    UnknownEndpoint,
    UnknownPin,
)
from .models import (
    CompactModel,
    crossover,
    directional_coupler,
    grating_coupler,
    half_ring,
    load_sparam_file,
    terminator,
    waveguide,
    write_sparam_file,
    y_branch,
)
from .parser import emit, parse, parse_file
from .simulate import FieldVector, SweepResult, SweepSimulation, SweepSpec, direct_solve, run_sweep
from .smatrix import SPEED_OF_LIGHT, FrequencyGrid, SMatrix, interpolate, is_reciprocal, max_singular_value

__version__ = "0.1.0"

__all__ = [
    "AlreadyConnected",
    "ArityMismatch",
    "CompactModel",
    "ComponentInstance",
    "compose",
    "connect",
    "Connection",
    "crossover",
    "CycleError",
    "direct_solve",
    "directional_coupler",
    "DuplicateName",
    "DuplicatePin",
    "emit",
    "FieldVector",
    "flatten",
    "FrequencyGrid",
    "grating_coupler",
    "GridMismatch",
    "half_ring",
    "innerconnect",
    "internal_amplitudes",
    "interpolate",
    "is_reciprocal",
    "load_sparam_file",
    "max_singular_value",
    "ParamError",
    "parse",
    "parse_file",
    "ParseError",
    "RangeError",
    "reduce_circuit",
    "run_sweep",
    "SelfPin",
    "SingularConnection",
    "SingularSystem",
    "SMatrix",
    "SPEED_OF_LIGHT",
    "Subcircuit",
    "SweepResult",
    "SweepSimulation",
    "SweepSpec",
    "terminator",
    "UnknownEndpoint",
    "UnknownPin",
    "waveguide",
    "write_sparam_file",
    "y_branch",
]
