"""Frequency sweeps, result access and the direct-solve oracle."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cascade import evaluate_instances, reduce_circuit
from .circuit import Subcircuit, flatten
from .errors import SingularConnection, SingularSystem, UnknownPin
from .smatrix import SPEED_OF_LIGHT, FrequencyGrid, SMatrix

DEFAULT_POINTS = 2000
DIRECT_SOLVE_MAX_PORTS = 2000
SINGULAR_COND = 1e12


@dataclass(frozen=True)
class SweepSpec:
    """Sweep range; in wavelength mode ``start``/``stop`` are metres, else Hz."""

    start: float
    stop: float
    n_points: int = DEFAULT_POINTS
    mode: str = "wavelength"

    def __post_init__(self):
        if self.mode not in ("wavelength", "frequency"):
            raise ValueError(f"mode must be 'wavelength' or 'frequency', got {self.mode!r}")
        if not (0 < self.start < self.stop):
            raise ValueError(f"need 0 < start < stop, got start={self.start}, stop={self.stop}")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError(f"n_points must be an integer >= 2, got {self.n_points}")

    def grid(self) -> FrequencyGrid:
        """Points uniform in frequency spanning the requested range."""
        if self.mode == "wavelength":
            lo, hi = SPEED_OF_LIGHT / self.stop, SPEED_OF_LIGHT / self.start
        else:
            lo, hi = self.start, self.stop
        return FrequencyGrid.uniform(lo, hi, int(self.n_points))


def _wrap(phi: np.ndarray) -> np.ndarray:
    """Wrap to (-pi, pi]."""
    w = np.angle(np.exp(1j * np.asarray(phi, dtype=float)))
    return np.where(w <= -np.pi, w + 2 * np.pi, w)


@dataclass(frozen=True, eq=False)
class SweepResult:
    grid: FrequencyGrid
    s: SMatrix
    pin_map: dict[str, int] = field(repr=False)

    @property
    def frequencies(self) -> np.ndarray:
        return self.grid.points

    @property
    def wavelengths(self) -> np.ndarray:
        return self.grid.wavelengths

    @property
    def pins(self) -> tuple[str, ...]:
        return self.s.ports

    def resolve(self, pin: str) -> int:
        """Index of an external pin by full name, or by bare pin name if unambiguous."""
        if pin in self.pin_map:
            return self.pin_map[pin]
        hits = [name for name in self.pin_map if name.rsplit(".", 1)[-1] == pin]
        if len(hits) == 1:
            return self.pin_map[hits[0]]
        if hits:
            raise UnknownPin(f"pin {pin!r} is ambiguous: {', '.join(hits)}")
        raise UnknownPin(f"no external pin {pin!r}; available: {', '.join(self.pin_map)}")

    def transmission(self, in_pin: str, out_pin: str) -> np.ndarray:
        return self.s.data[:, self.resolve(out_pin), self.resolve(in_pin)]

    def data(self, in_pin: str, out_pin: str) -> tuple[np.ndarray, np.ndarray]:
        """``(frequencies, S[out, in])``; equal pins give the reflection."""
        return self.frequencies, self.transmission(in_pin, out_pin)

    def power(self, in_pin: str, out_pin: str) -> tuple[np.ndarray, np.ndarray]:
        return self.frequencies, np.abs(self.transmission(in_pin, out_pin)) ** 2

    def phase(self, in_pin: str, out_pin: str, relative_to: str | tuple[str, str] | None = None) -> np.ndarray:
        """Phase of ``S[out, in]`` in (-pi, pi].

        ``relative_to`` is either another output pin (same input) or an
        ``(in_pin, out_pin)`` pair naming any element of the result.
        """
        s = self.transmission(in_pin, out_pin)
        if relative_to is None:
            return _wrap(np.angle(s))
        if isinstance(relative_to, str):
            ref = self.transmission(in_pin, relative_to)
        else:
            ref = self.transmission(*relative_to)
        return _wrap(np.angle(s) - np.angle(ref))


def _reduce_chunked(flat: Subcircuit, grid: FrequencyGrid, workers: int) -> tuple[SMatrix, dict[str, int]]:
    if workers <= 1 or len(grid) < 2 * workers:
        return reduce_circuit(flat, grid)
    chunks = [c for c in np.array_split(grid.points, workers) if c.size]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda pts: reduce_circuit(flat, FrequencyGrid(pts)), chunks))
    data = np.concatenate([p[0].data for p in parts], axis=0)
    return SMatrix(grid, parts[0][0].ports, data), parts[0][1]


def run_sweep(circuit: Subcircuit, spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Flatten ``circuit`` and reduce it over the sweep grid.

    ``workers > 1`` splits the grid across threads; each frequency is
    computed independently, so the result does not depend on ``workers``.
    """
    flat = flatten(circuit)
    grid = spec.grid()
    try:
        s, pin_map = _reduce_chunked(flat, grid, workers)
    except SingularConnection as exc:
        raise SingularConnection(
            f"circuit {circuit.name!r}: {exc}", frequency=exc.frequency, connection=exc.connection
        ) from None
    return SweepResult(grid, s, pin_map)


@dataclass(frozen=True, eq=False)
class FieldVector:
    """Complex amplitudes per port; ``amplitudes`` has shape (n_freq, n_ports)."""

    ports: tuple[str, ...]
    amplitudes: np.ndarray

    def __getitem__(self, port: str) -> np.ndarray:
        return self.amplitudes[:, self.ports.index(port)]


def _assemble(flat: Subcircuit, grid: FrequencyGrid):
    """Build the all-ports linear system ``M a = r`` for incident amplitudes."""
    smats = evaluate_instances(flat, grid)
    offsets = {}
    total = 0
    for name, inst in flat.elements.items():
        offsets[name] = total
        total += len(inst.pin_names)
    if total > DIRECT_SOLVE_MAX_PORTS:
        raise ValueError(f"direct solve limited to {DIRECT_SOLVE_MAX_PORTS} ports, circuit has {total}")

    s_all = np.zeros((len(grid), total, total), dtype=np.complex128)
    for name, s in smats.items():
        o = offsets[name]
        n = s.n_ports
        s_all[:, o : o + n, o : o + n] = s.data

    def gid(ep):
        return offsets[ep[0]] + ep[1]

    # incident at one end of a link equals outgoing at the other
    m = np.broadcast_to(np.eye(total, dtype=np.complex128), s_all.shape).copy()
    for conn in flat.connections:
        p, q = (gid(ep) for ep in conn.endpoints)
        m[:, p, :] -= s_all[:, q, :]
        m[:, q, :] -= s_all[:, p, :]
    ext = np.array([gid(ep) for ep in flat.external_endpoints], dtype=int)
    return s_all, m, ext


def _solve(m: np.ndarray, rhs: np.ndarray, freqs: np.ndarray) -> np.ndarray:
    if m.shape[-1] == 0:
        return np.zeros(rhs.shape, dtype=np.complex128)
    cond = np.linalg.cond(m)
    bad = ~np.isfinite(cond) | (cond > SINGULAR_COND)
    if np.any(bad):
        f = float(freqs[np.argmax(bad)])
        raise SingularSystem(f"direct-solve system is singular at {f:.9g} Hz", frequency=f)
    return np.linalg.solve(m, rhs)


def direct_solve(flat: Subcircuit, grid: FrequencyGrid, in_pin: str) -> FieldVector:
    """Outgoing external amplitudes for unit excitation at ``in_pin``.

    Independent of the growth kernel: every component relation and link
    constraint is stacked into one dense system per frequency.
    """
    if not flat.is_flat:
        flat = flatten(flat)
    names = flat.external_pins
    if in_pin not in names:
        raise UnknownPin(f"no external pin {in_pin!r}; available: {', '.join(names)}")
    s_all, m, ext = _assemble(flat, grid)
    rhs = np.zeros((len(grid), m.shape[-1], 1), dtype=np.complex128)
    rhs[:, ext[names.index(in_pin)], 0] = 1.0
    a = _solve(m, rhs, grid.points)
    b = s_all[:, ext, :] @ a
    return FieldVector(names, b[:, :, 0])


def direct_solve_matrix(flat: Subcircuit, grid: FrequencyGrid) -> SMatrix:
    """Full external S-matrix by direct solve, one column per excited pin."""
    if not flat.is_flat:
        flat = flatten(flat)
    names = flat.external_pins
    s_all, m, ext = _assemble(flat, grid)
    rhs = np.zeros((len(grid), m.shape[-1], ext.size), dtype=np.complex128)
    rhs[:, ext, np.arange(ext.size)] = 1.0
    a = _solve(m, rhs, grid.points)
    return SMatrix(grid, names, s_all[:, ext, :] @ a)


def sweep_grid(start_m: float, stop_m: float, n_points: int = DEFAULT_POINTS) -> FrequencyGrid:
    return SweepSpec(start_m, stop_m, n_points).grid()


class SweepSimulation:
    """Script-style wrapper: ``SweepSimulation(circuit, 1500e-9, 1600e-9).simulate()``."""

    def __init__(self, circuit: Subcircuit, start: float, stop: float, num: int = DEFAULT_POINTS, workers: int = 1):
        self.circuit = circuit
        self.spec = SweepSpec(start, stop, num)
        self.workers = workers

    def simulate(self) -> SweepResult:
        return run_sweep(self.circuit, self.spec, workers=self.workers)


__all__: Sequence[str] = [
    "DEFAULT_POINTS",
    "FieldVector",
    "SweepResult",
    "SweepSimulation",
    "SweepSpec",
    "direct_solve",
    "direct_solve_matrix",
    "run_sweep",
    "sweep_grid",
]
