"""Analytic compact models and the file-backed ``.sparam`` model.

Every model is a :class:`CompactModel`: an immutable record of a model kind,
its validated parameters and its default port names. ``evaluate(grid)``
produces an :class:`~picsweep.smatrix.SMatrix` with exactly those ports.

Units are SI throughout: lengths in metres, losses in dB (per metre for
waveguides), wavelengths in metres.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

from .errors import ParamError, ParseError
from .smatrix import FrequencyGrid, SMatrix, interpolate

# 500 x 220 nm silicon strip waveguide near 1550 nm; n_g = n0 - lambda0 * dn_dlambda = 4.2015
WAVEGUIDE_DEFAULTS = {
    "n0": 2.45,
    "dn_dlambda": -1.13e6,
    "d2n_dlambda2": 0.0,
    "loss": 300.0,
    "lambda0": 1.55e-6,
}

MIN_RADIUS = 1e-6
MAX_RADIUS = 1e-3
MAX_LENGTH = 1.0

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?\Z")


def parse_float(token: str) -> float:
    """Parse a plain decimal or scientific literal; rejects nan/inf/underscores."""
    if not _NUMBER.match(token):
        raise ValueError(f"not a number: {token!r}")
    return float(token)


@dataclass(frozen=True, eq=False)
class CompactModel:
    """A parameterized generator of S-matrices.

    Use the factory functions (:func:`waveguide`, :func:`y_branch`, ...) or
    :func:`make_model` rather than constructing this directly.
    """

    kind: str
    params: Mapping[str, float]
    ports: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))
        object.__setattr__(self, "ports", tuple(self.ports))

    @property
    def n_ports(self) -> int:
        return len(self.ports)

    def evaluate(self, grid: FrequencyGrid) -> SMatrix:
        data = _KINDS[self.kind].evaluate(self.params, grid.wavelengths)
        return SMatrix(grid, self.ports, data)

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.kind}({args})"


@dataclass(frozen=True, eq=False)
class FileModel(CompactModel):
    """Model backed by tabulated data; evaluation interpolates without extrapolating."""

    source: SMatrix = field(default=None, repr=False)
    path: str | None = None

    def evaluate(self, grid: FrequencyGrid) -> SMatrix:
        return interpolate(self.source, grid)

    def __repr__(self) -> str:
        return f"sparam_file(path={self.path!r})"


# -- evaluators -------------------------------------------------------------


def effective_index(params: Mapping[str, float], wl: np.ndarray) -> np.ndarray:
    d = wl - params["lambda0"]
    return params["n0"] + params["dn_dlambda"] * d + 0.5 * params["d2n_dlambda2"] * d**2


def group_index(params: Mapping[str, float], wl) -> np.ndarray:
    """n_g = n_eff - wl * dn_eff/dwl."""
    wl = np.asarray(wl, dtype=float)
    slope = params["dn_dlambda"] + params["d2n_dlambda2"] * (wl - params["lambda0"])
    return effective_index(params, wl) - wl * slope


def propagation(params: Mapping[str, float], length: float, wl: np.ndarray) -> np.ndarray:
    """Complex field transmission of a straight section of ``length``."""
    if length == 0:
        return np.ones_like(wl, dtype=complex)
    phase = 2 * np.pi * effective_index(params, wl) * length / wl
    return np.exp(1j * phase) * 10 ** (-params["loss"] * length / 20)


def _eval_waveguide(p, wl):
    s = np.zeros((wl.size, 2, 2), dtype=complex)
    t = propagation(p, p["length"], wl)
    s[:, 0, 1] = t
    s[:, 1, 0] = t
    return s


def _eval_y_branch(p, wl):
    s = np.zeros((wl.size, 3, 3), dtype=complex)
    a = 1 / math.sqrt(2)
    s[:, 0, 1] = s[:, 1, 0] = a
    s[:, 0, 2] = s[:, 2, 0] = a
    return s


def _coupler_matrix(through: complex, cross: complex) -> np.ndarray:
    # ports n1, n2 on the left; n3, n4 on the right; n1-n3 and n2-n4 are through
    m = np.zeros((4, 4), dtype=complex)
    for a, b in ((0, 2), (1, 3)):
        m[a, b] = m[b, a] = through
    for a, b in ((0, 3), (1, 2)):
        m[a, b] = m[b, a] = cross
    return m


def _eval_directional_coupler(p, wl):
    k2 = p["coupling"]
    m = _coupler_matrix(math.sqrt(1 - k2), 1j * math.sqrt(k2))
    return np.broadcast_to(m, (wl.size, 4, 4)).copy()


def _eval_crossover(p, wl):
    x = p["crosstalk"]
    # the crossing path is the "cross" slot of the coupler layout
    m = _coupler_matrix(1j * math.sqrt(x), math.sqrt(1 - x))
    return np.broadcast_to(m, (wl.size, 4, 4)).copy()


def _eval_grating_coupler(p, wl):
    il = p["peak_loss"] + ((wl - p["center_wavelength"]) / (p["bandwidth_1db"] / 2)) ** 2
    t = 10 ** (-il / 20)
    s = np.zeros((wl.size, 2, 2), dtype=complex)
    s[:, 0, 1] = t
    s[:, 1, 0] = t
    return s


def _eval_half_ring(p, wl):
    # Point coupler at the n3 end of the arc: bus n1 -> n2 through, arc runs
    # from the coupler's ring-side output to n4 over half the circumference.
    t = math.sqrt(1 - p["coupling"])
    ik = 1j * math.sqrt(p["coupling"])
    arc = propagation(p, math.pi * p["radius"], wl)
    s = np.zeros((wl.size, 4, 4), dtype=complex)
    s[:, 0, 1] = s[:, 1, 0] = t
    s[:, 3, 0] = s[:, 0, 3] = ik * arc
    s[:, 2, 1] = s[:, 1, 2] = ik
    s[:, 3, 2] = s[:, 2, 3] = t * arc
    return s


def _eval_terminator(p, wl):
    return np.zeros((wl.size, 1, 1), dtype=complex)


# -- validation -------------------------------------------------------------


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise ParamError(message)


def _finite(p):
    for k, v in p.items():
        _check(isinstance(v, (int, float)) and math.isfinite(v), f"{k} must be a finite number, got {v!r}")


def _check_waveguide_common(p):
    _check(p["loss"] >= 0, f"loss must be >= 0 dB/m, got {p['loss']}")
    _check(p["lambda0"] > 0, f"lambda0 must be > 0, got {p['lambda0']}")
    _check(p["n0"] > 0, f"n0 must be > 0, got {p['n0']}")


def _check_waveguide(p):
    _check(0 <= p["length"] <= MAX_LENGTH, f"length must lie in [0, {MAX_LENGTH}] m, got {p['length']}")
    _check_waveguide_common(p)


def _check_coupling(p):
    _check(0 <= p["coupling"] <= 1, f"coupling must lie in [0, 1], got {p['coupling']}")


def _check_crossover(p):
    _check(0 <= p["crosstalk"] <= 1, f"crosstalk must lie in [0, 1], got {p['crosstalk']}")


def _check_grating(p):
    _check(p["center_wavelength"] > 0, "center_wavelength must be > 0")
    _check(p["peak_loss"] >= 0, f"peak_loss must be >= 0 dB, got {p['peak_loss']}")
    _check(p["bandwidth_1db"] > 0, "bandwidth_1db must be > 0")


def _check_half_ring(p):
    _check(MIN_RADIUS <= p["radius"] <= MAX_RADIUS, f"radius must lie in [{MIN_RADIUS}, {MAX_RADIUS}] m, got {p['radius']}")
    _check_coupling(p)
    _check_waveguide_common(p)


@dataclass(frozen=True)
class _Kind:
    ports: tuple[str, ...]
    defaults: Mapping[str, float]
    validate: Callable[[Mapping[str, float]], None]
    evaluate: Callable[[Mapping[str, float], np.ndarray], np.ndarray]


_KINDS: dict[str, _Kind] = {
    "waveguide": _Kind(("n1", "n2"), {"length": 0.0, **WAVEGUIDE_DEFAULTS}, _check_waveguide, _eval_waveguide),
    "y_branch": _Kind(("n1", "n2", "n3"), {}, lambda p: None, _eval_y_branch),
    "directional_coupler": _Kind(("n1", "n2", "n3", "n4"), {"coupling": 0.5}, _check_coupling, _eval_directional_coupler),
    "grating_coupler": _Kind(
        ("n1", "n2"),
        {"center_wavelength": 1.55e-6, "peak_loss": 3.0, "bandwidth_1db": 35e-9},
        _check_grating,
        _eval_grating_coupler,
    ),
    "half_ring": _Kind(
        ("n1", "n2", "n3", "n4"),
        {"radius": 10e-6, "coupling": 0.1, **WAVEGUIDE_DEFAULTS},
        _check_half_ring,
        _eval_half_ring,
    ),
    "crossover": _Kind(("n1", "n2", "n3", "n4"), {"crosstalk": 0.0}, _check_crossover, _eval_crossover),
    "terminator": _Kind(("n1",), {}, lambda p: None, _eval_terminator),
}

MODEL_KINDS = tuple(_KINDS)


def make_model(kind: str, **params: float) -> CompactModel:
    """Build an analytic model of ``kind``, filling in defaults and validating.

    Raises:
        ParamError: unknown kind, unknown parameter name, or out-of-range value.
    """
    try:
        spec = _KINDS[kind]
    except KeyError:
        raise ParamError(f"unknown model kind {kind!r}; expected one of {', '.join(_KINDS)}") from None
    unknown = set(params) - set(spec.defaults)
    if unknown:
        raise ParamError(f"{kind} does not take parameter(s) {', '.join(sorted(unknown))}")
    full = {**spec.defaults, **params}
    _finite(full)
    full = {k: float(v) for k, v in full.items()}
    spec.validate(full)
    return CompactModel(kind, full, spec.ports)


def default_params(kind: str) -> dict[str, float]:
    return dict(_KINDS[kind].defaults)


def waveguide(length: float, **params: float) -> CompactModel:
    """Straight waveguide; ``params`` override n0, dn_dlambda, d2n_dlambda2, loss, lambda0."""
    return make_model("waveguide", length=length, **params)


def y_branch() -> CompactModel:
    return make_model("y_branch")


def directional_coupler(coupling: float = 0.5) -> CompactModel:
    return make_model("directional_coupler", coupling=coupling)


def grating_coupler(
    center_wavelength: float = 1.55e-6, peak_loss: float = 3.0, bandwidth_1db: float = 35e-9
) -> CompactModel:
    return make_model(
        "grating_coupler", center_wavelength=center_wavelength, peak_loss=peak_loss, bandwidth_1db=bandwidth_1db
    )


def half_ring(radius: float = 10e-6, coupling: float = 0.1, **params: float) -> CompactModel:
    return make_model("half_ring", radius=radius, coupling=coupling, **params)


def crossover(crosstalk: float = 0.0) -> CompactModel:
    return make_model("crossover", crosstalk=crosstalk)


def terminator() -> CompactModel:
    return make_model("terminator")


# -- .sparam files ----------------------------------------------------------

_HEADER = re.compile(r"sparam\s+v1\s+ports=(\d+)\s+names=(\S*)\s*\Z")


def format_sparam(s: SMatrix) -> str:
    lines = [f"sparam v1 ports={s.n_ports} names={','.join(s.ports)}"]
    flat = s.data.reshape(len(s.grid), -1)
    for f, row in zip(s.frequencies, flat):
        fields = [f"{f:.17g}"]
        for z in row:
            fields.append(f"{z.real:.17g}")
            fields.append(f"{z.imag:.17g}")
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


def write_sparam_file(path, s: SMatrix) -> None:
    Path(path).write_text(format_sparam(s), encoding="utf-8", newline="\n")


def parse_sparam(text: str) -> SMatrix:
    """Parse ``.sparam`` text into an SMatrix.

    Raises:
        ParseError: bad header, wrong field count, bad number, or
            non-increasing frequencies.
    """
    header = None
    freqs: list[float] = []
    rows: list[list[float]] = []
    n = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError("expected header 'sparam v1 ports=<N> names=<p1,...>'", lineno)
            n = int(m.group(1))
            names = [x for x in m.group(2).split(",") if x] if m.group(2) else []
            if len(names) != n:
                raise ParseError(f"header declares {n} ports but names {len(names)}", lineno)
            if len(set(names)) != n:
                raise ParseError("duplicate port names in header", lineno)
            header = names
            continue
        tokens = line.split()
        if len(tokens) != 1 + 2 * n * n:
            raise ParseError(f"expected {1 + 2 * n * n} fields, found {len(tokens)}", lineno)
        try:
            values = [parse_float(t) for t in tokens]
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if values[0] <= 0:
            raise ParseError("frequency must be positive", lineno)
        if freqs and values[0] <= freqs[-1]:
            raise ParseError("frequencies must be strictly increasing", lineno)
        freqs.append(values[0])
        rows.append(values[1:])
    if header is None:
        raise ParseError("missing header")
    if not freqs:
        raise ParseError("no data rows")
    pairs = np.array(rows, dtype=float).reshape(len(freqs), n * n, 2)
    data = (pairs[..., 0] + 1j * pairs[..., 1]).reshape(len(freqs), n, n)
    return SMatrix(FrequencyGrid(np.array(freqs)), tuple(header), data)


def read_sparam_file(path) -> SMatrix:
    return parse_sparam(Path(path).read_text(encoding="utf-8"))


def load_sparam_file(path) -> FileModel:
    """Load a ``.sparam`` file as a model that interpolates over its grid."""
    s = read_sparam_file(path)
    return FileModel("sparam_file", {}, s.ports, source=s, path=str(path))


def model_from_smatrix(s: SMatrix) -> FileModel:
    return FileModel("sparam_file", {}, s.ports, source=s, path=None)


__all__ = [
    "CompactModel",
    "FileModel",
    "MODEL_KINDS",
    "WAVEGUIDE_DEFAULTS",
    "crossover",
    "default_params",
    "directional_coupler",
    "effective_index",
    "format_sparam",
    "grating_coupler",
    "group_index",
    "half_ring",
    "load_sparam_file",
    "make_model",
    "model_from_smatrix",
    "parse_float",
    "parse_sparam",
    "propagation",
    "read_sparam_file",
    "terminator",
    "waveguide",
    "write_sparam_file",
    "y_branch",
]
