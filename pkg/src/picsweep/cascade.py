"""Sub-network growth: merging ports of scattering matrices.

Two primitives do all the work:

* :func:`innerconnect` joins ports ``k`` and ``l`` of one network, giving an
  ``N - 2`` port network.
* :func:`compose` places two networks side by side (block diagonal) so that a
  port of each can then be innerconnected.

:func:`reduce_circuit` folds a whole flat circuit with these two operations,
following the connection list in order. All arithmetic is per frequency
slice; the frequency axis is never mixed.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .circuit import Subcircuit
from .errors import SingularConnection
from .smatrix import FrequencyGrid, SMatrix, require_same_grid

SINGULAR_EPS = 1e-12


def _denominator(data: np.ndarray, k: int, l: int) -> np.ndarray:
    s_kk = data[:, k, k]
    s_ll = data[:, l, l]
    s_kl = data[:, k, l]
    s_lk = data[:, l, k]
    return (1 - s_kl) * (1 - s_lk) - s_kk * s_ll


def _check_denominator(d: np.ndarray, freqs: np.ndarray | None, what: str) -> None:
    bad = np.abs(d) <= SINGULAR_EPS
    if np.any(bad):
        f = None if freqs is None else float(freqs[np.argmax(bad)])
        where = "" if f is None else f" at {f:.9g} Hz"
        raise SingularConnection(f"singular connection {what}{where}: |D| <= {SINGULAR_EPS:g}", frequency=f)


def innerconnect_data(data: np.ndarray, k: int, l: int, freqs: np.ndarray | None = None, what: str = "") -> np.ndarray:
    """Array-level :func:`innerconnect` on an ``(F, N, N)`` array."""
    n = data.shape[-1]
    if not (0 <= k < n and 0 <= l < n):
        raise IndexError(f"port indices ({k}, {l}) out of range for {n} ports")
    if k == l:
        raise ValueError("cannot connect a port to itself")
    d = _denominator(data, k, l)
    _check_denominator(d, freqs, what or f"between ports {k} and {l}")

    keep = np.array([i for i in range(n) if i != k and i != l], dtype=int)
    s_kk = data[:, k, k, None]
    s_ll = data[:, l, l, None]
    s_kl = data[:, k, l, None]
    s_lk = data[:, l, k, None]
    col_k = data[:, keep, k]  # S_ik
    col_l = data[:, keep, l]  # S_il
    row_k = data[:, k, keep]  # S_kj
    row_l = data[:, l, keep]  # S_lj
    # numerator = S_il [S_kj (1 - S_lk) + S_kk S_lj] + S_ik [S_lj (1 - S_kl) + S_ll S_kj]
    via_l = row_k * (1 - s_lk) + s_kk * row_l
    via_k = row_l * (1 - s_kl) + s_ll * row_k
    num = col_l[:, :, None] * via_l[:, None, :] + col_k[:, :, None] * via_k[:, None, :]
    return data[:, keep[:, None], keep[None, :]] + num / d[:, None, None]


def innerconnect(s: SMatrix, k: int, l: int) -> SMatrix:
    """Connect ports ``k`` and ``l`` of ``s`` to each other.

    Surviving ports keep their relative order and labels.

    Raises:
        SingularConnection: if the growth denominator vanishes at any frequency.
        IndexError: if ``k`` or ``l`` is not a valid port index.
    """
    if not (0 <= k < s.n_ports and 0 <= l < s.n_ports):
        raise IndexError(f"port indices ({k}, {l}) out of range for {s.n_ports} ports")
    out = innerconnect_data(s.data, k, l, s.frequencies, f"between ports {s.ports[k]!r} and {s.ports[l]!r}")
    ports = tuple(p for i, p in enumerate(s.ports) if i not in (k, l))
    return SMatrix(s.grid, ports, out)


def internal_amplitudes(s: SMatrix, k: int, l: int, a_ext: Sequence[complex], f_index: int) -> tuple[complex, complex]:
    """Incident amplitudes entering ports ``k`` and ``l`` after they are joined.

    ``a_ext`` holds the excitation of the surviving ports, in surviving order.
    Returns ``(A_k_plus, A_l_plus)``.
    """
    m = s.data[f_index]
    n = s.n_ports
    keep = [i for i in range(n) if i not in (k, l)]
    a = np.asarray(a_ext, dtype=complex)
    if a.shape != (len(keep),):
        raise ValueError(f"expected {len(keep)} external amplitudes, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("excitation must be finite")
    d = _denominator(m[None], k, l)
    _check_denominator(d, s.frequencies[f_index : f_index + 1], f"between ports {k} and {l}")
    d = d[0]
    b_k = m[k, keep] @ a
    b_l = m[l, keep] @ a
    a_l = ((1 - m[l, k]) * b_k + m[k, k] * b_l) / d
    a_k = ((1 - m[k, l]) * b_l + m[l, l] * b_k) / d
    return complex(a_k), complex(a_l)


def compose_data(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    f, na, nb = a.shape[0], a.shape[-1], b.shape[-1]
    out = np.zeros((f, na + nb, na + nb), dtype=np.complex128)
    out[:, :na, :na] = a
    out[:, na:, na:] = b
    return out


def compose(a: SMatrix, b: SMatrix) -> SMatrix:
    """Block-diagonal union of ``a`` and ``b``: ports of ``a``, then ports of ``b``.

    Labels shared by both inputs are prefixed ``a.`` / ``b.`` to stay unique.

    Raises:
        GridMismatch: if the grids differ.
    """
    require_same_grid(a, b)
    clash = set(a.ports) & set(b.ports)
    pa = tuple(f"a.{p}" if p in clash else p for p in a.ports)
    pb = tuple(f"b.{p}" if p in clash else p for p in b.ports)
    return SMatrix(a.grid, pa + pb, compose_data(a.data, b.data))


def connect(a: SMatrix, pa: int, b: SMatrix, pb: int) -> SMatrix:
    """Join port ``pa`` of ``a`` to port ``pb`` of ``b``."""
    if not 0 <= pb < b.n_ports:
        raise IndexError(f"port index {pb} out of range for {b.n_ports} ports")
    if not 0 <= pa < a.n_ports:
        raise IndexError(f"port index {pa} out of range for {a.n_ports} ports")
    return innerconnect(compose(a, b), pa, a.n_ports + pb)


class _Network:
    __slots__ = ("data", "pins")

    def __init__(self, data: np.ndarray, pins: list[int]):
        self.data = data
        self.pins = pins  # global pin ids, one per port


def evaluate_instances(flat: Subcircuit, grid: FrequencyGrid) -> dict[str, SMatrix]:
    """Evaluate every instance's model once per distinct model object."""
    cache: dict[int, SMatrix] = {}
    out = {}
    for name, inst in flat.elements.items():
        if isinstance(inst.model, Subcircuit):
            raise ValueError(f"instance {name!r} is a subcircuit; flatten the circuit first")
        key = id(inst.model)
        if key not in cache:
            s = inst.model.evaluate(grid)
            if s.n_ports != len(inst.pin_names):
                raise ValueError(f"model of {name!r} returned {s.n_ports} ports, expected {len(inst.pin_names)}")
            cache[key] = s
        out[name] = cache[key]
    return out


def reduce_circuit(flat: Subcircuit, grid: FrequencyGrid) -> tuple[SMatrix, dict[str, int]]:
    """Reduce a flat circuit to one S-matrix over its external pins.

    Connections are folded in listed order. Networks that are never joined
    are composed at the end. The result's ports follow
    ``flat.external_pins`` order.

    Raises:
        SingularConnection: naming the offending connection.
        RangeError: if a file-backed model cannot cover ``grid``.
    """
    smats = evaluate_instances(flat, grid)
    freqs = grid.points

    # global pin ids, assigned in instance then pin order
    pin_id: dict[tuple[str, int], int] = {}
    networks: dict[int, _Network] = {}
    owner: dict[int, int] = {}  # pin id -> network id
    position: dict[int, int] = {}  # pin id -> port index inside its network
    for net_id, (name, inst) in enumerate(flat.elements.items()):
        ids = []
        for i in range(len(inst.pin_names)):
            pid = len(pin_id)
            pin_id[(name, i)] = pid
            owner[pid] = net_id
            position[pid] = i
            ids.append(pid)
        networks[net_id] = _Network(smats[name].data, ids)

    for conn in flat.connections:
        ea, eb = conn.endpoints
        pa, pb = pin_id[ea], pin_id[eb]
        na, nb = owner[pa], owner[pb]
        label = f"{flat.pin_label(ea)} -- {flat.pin_label(eb)}"
        if na == nb:
            net = networks[na]
            k, l = position[pa], position[pb]
        else:
            left, right = networks[na], networks.pop(nb)
            offset = len(left.pins)
            net = _Network(compose_data(left.data, right.data), left.pins + right.pins)
            networks[na] = net
            for pid in right.pins:
                owner[pid] = na
                position[pid] += offset
            k, l = position[pa], position[pb]
        try:
            net.data = innerconnect_data(net.data, k, l, freqs, label)
        except SingularConnection as exc:
            raise SingularConnection(str(exc), frequency=exc.frequency, connection=label) from None
        survivors = [p for i, p in enumerate(net.pins) if i != k and i != l]
        net.pins = survivors
        for i, pid in enumerate(survivors):
            position[pid] = i

    # join whatever is left, in instance order
    data = np.zeros((len(grid), 0, 0), dtype=np.complex128)
    pins: list[int] = []
    for net_id in sorted(networks):
        net = networks[net_id]
        if net.pins:
            data = compose_data(data, net.data)
            pins.extend(net.pins)

    ext = flat.external_endpoints
    names = flat.external_pins
    index_of = {pid: i for i, pid in enumerate(pins)}
    order = np.array([index_of[pin_id[ep]] for ep in ext], dtype=int)
    if order.size:
        data = data[:, order[:, None], order[None, :]]
    result = SMatrix(grid, names, data)
    return result, {name: i for i, name in enumerate(names)}


__all__ = [
    "SINGULAR_EPS",
    "compose",
    "connect",
    "evaluate_instances",
    "innerconnect",
    "innerconnect_data",
    "internal_amplitudes",
    "reduce_circuit",
]
