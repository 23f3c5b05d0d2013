"""Frequency-dependent scattering matrices.

An :class:`SMatrix` stores an ``(n_freq, n_ports, n_ports)`` complex array in
which ``data[f, i, j]`` is the field amplitude leaving port ``i`` for a unit
amplitude entering port ``j`` at frequency ``grid[f]``. Frequency in Hz is the
canonical axis; wavelengths only appear at the API edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import GridMismatch, RangeError

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact


def wavelength_to_frequency(wavelength):
    return SPEED_OF_LIGHT / np.asarray(wavelength, dtype=float)


def frequency_to_wavelength(frequency):
    return SPEED_OF_LIGHT / np.asarray(frequency, dtype=float)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Strictly increasing, positive frequency points in Hz."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1)
        if pts.size < 1:
            raise ValueError("a frequency grid needs at least one point")
        if not np.all(np.isfinite(pts)) or np.any(pts <= 0):
            raise ValueError("frequencies must be finite and positive")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("frequencies must be strictly increasing")
        object.__setattr__(self, "points", _frozen(pts))

    @classmethod
    def from_wavelengths(cls, wavelengths: Sequence[float]) -> "FrequencyGrid":
        """Build a grid from wavelengths in metres (any order)."""
        return cls(np.sort(wavelength_to_frequency(wavelengths)))

    @classmethod
    def uniform(cls, f_start: float, f_stop: float, n_points: int) -> "FrequencyGrid":
        return cls(np.linspace(f_start, f_stop, n_points))

    @property
    def wavelengths(self) -> np.ndarray:
        return frequency_to_wavelength(self.points)

    def __len__(self) -> int:
        return self.points.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrequencyGrid):
            return NotImplemented
        return self.points.shape == other.points.shape and bool(np.all(self.points == other.points))

    def __hash__(self) -> int:
        return hash(self.points.tobytes())


@dataclass(frozen=True, eq=False)
class SMatrix:
    """Scattering data on a frequency grid with ordered port labels."""

    grid: FrequencyGrid
    ports: tuple[str, ...]
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        ports = tuple(str(p) for p in self.ports)
        if any(not p for p in ports):
            raise ValueError("port labels must be nonempty")
        if len(set(ports)) != len(ports):
            raise ValueError(f"duplicate port labels in {ports}")
        data = np.array(self.data, dtype=np.complex128)
        n = len(ports)
        expected = (len(self.grid), n, n)
        if data.shape != expected:
            raise ValueError(f"data shape {data.shape} does not match {expected}")
        object.__setattr__(self, "ports", ports)
        object.__setattr__(self, "data", _frozen(data))

    @property
    def n_ports(self) -> int:
        return len(self.ports)

    @property
    def frequencies(self) -> np.ndarray:
        return self.grid.points

    def index(self, port: str) -> int:
        try:
            return self.ports.index(port)
        except ValueError:
            raise KeyError(port) from None

    def entry(self, out_port: str, in_port: str) -> np.ndarray:
        """``S[out, in]`` over the grid."""
        return self.data[:, self.index(out_port), self.index(in_port)]

    def permute(self, order: Sequence[int]) -> "SMatrix":
        """Return a copy whose port ``m`` is this matrix's port ``order[m]``."""
        order = list(order)
        if sorted(order) != list(range(self.n_ports)):
            raise ValueError(f"{order} is not a permutation of {self.n_ports} ports")
        idx = np.asarray(order, dtype=int)
        data = self.data[:, idx][:, :, idx]
        return SMatrix(self.grid, tuple(self.ports[m] for m in order), data)

    def relabel(self, ports: Sequence[str]) -> "SMatrix":
        return SMatrix(self.grid, tuple(ports), self.data)


def interpolate(s: SMatrix, target: FrequencyGrid) -> SMatrix:
    """Linearly interpolate real and imaginary parts onto ``target``.

    Raises:
        RangeError: if a target frequency lies outside the source span.
    """
    src = s.grid.points
    t = target.points
    if t[0] < src[0] or t[-1] > src[-1]:
        raise RangeError(
            f"target span [{t[0]:.6g}, {t[-1]:.6g}] Hz exceeds source span "
            f"[{src[0]:.6g}, {src[-1]:.6g}] Hz"
        )
    if target == s.grid:
        return SMatrix(target, s.ports, s.data)
    if src.size == 1:
        return SMatrix(target, s.ports, np.repeat(s.data, t.size, axis=0))

    hi = np.clip(np.searchsorted(src, t, side="right"), 1, src.size - 1)
    lo = hi - 1
    w = (t - src[lo]) / (src[hi] - src[lo])
    w3 = w[:, None, None]
    out = s.data[lo] * (1.0 - w3) + s.data[hi] * w3
    # coincident points are copied, not recomputed
    at_lo = w == 0.0
    at_hi = w == 1.0
    out[at_lo] = s.data[lo[at_lo]]
    out[at_hi] = s.data[hi[at_hi]]
    return SMatrix(target, s.ports, out)


def is_reciprocal(s: SMatrix, tol: float) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    diff = np.abs(s.data - np.swapaxes(s.data, 1, 2))
    return bool(np.all(diff <= tol))


def max_singular_value(s: SMatrix) -> np.ndarray:
    """Largest singular value of each frequency slice."""
    if s.n_ports < 1:
        raise ValueError("max_singular_value needs at least one port")
    return np.linalg.svd(s.data, compute_uv=False)[:, 0]


def require_same_grid(a: SMatrix, b: SMatrix) -> None:
    if a.grid != b.grid:
        raise GridMismatch(
            f"grids differ ({len(a.grid)} vs {len(b.grid)} points); interpolate first"
        )
