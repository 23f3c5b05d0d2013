"""Circuits built from named component instances and point-to-point connections.

A :class:`Subcircuit` owns component instances, each backed by a
:class:`~picsweep.models.CompactModel` or by another :class:`Subcircuit`.
Connections bind pins by identity (instance name plus pin position), so pins
may be renamed before or after they are connected. Every pin that is not
connected is an external pin of the circuit; its name is ``instance.pin``
unless it has been given an alias with :meth:`Subcircuit.expose`.

Example::

    circuit = Subcircuit("MZI")
    circuit.add([(grating, "input"), (grating, "output"), (y, "splitter"), ...])
    circuit.elements["splitter"].pins = ("in1", "out1", "out2")
    circuit.connect_many([("input", "n1", "splitter", "in1"), ...])
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    AlreadyConnected,
    ArityMismatch,
    CircuitError,
    CycleError,
    DuplicateName,
    DuplicatePin,
    SelfPin,
    UnknownEndpoint,
    UnknownInstance,
    UnknownPin,
)
from .models import CompactModel

_SEGMENT = r"[A-Za-z_][A-Za-z0-9_]*"
NAME_RE = re.compile(rf"{_SEGMENT}(?:\.{_SEGMENT})*\Z")

Model = Union[CompactModel, "Subcircuit"]
Endpoint = tuple[str, int]


def check_name(name: str, what: str = "name") -> str:
    if not isinstance(name, str) or not NAME_RE.match(name):
        raise CircuitError(f"invalid {what} {name!r}")
    return name


@dataclass(frozen=True)
class Connection:
    """A pin-to-pin link, stored by pin position so renames do not affect it."""

    instance_a: str
    pin_a: int
    instance_b: str
    pin_b: int

    @property
    def endpoints(self) -> tuple[Endpoint, Endpoint]:
        return (self.instance_a, self.pin_a), (self.instance_b, self.pin_b)


class Pins:
    """Mapping-like view of an instance's pin names.

    ``pins["n2"] = "output"`` renames a single pin.
    """

    def __init__(self, instance: "ComponentInstance"):
        self._instance = instance

    def __getitem__(self, key: str | int) -> str:
        if isinstance(key, int):
            return self._instance._pins[key]
        self._instance.pin_index(key)
        return key

    def __setitem__(self, old: str, new: str) -> None:
        self._instance.rename_pin(old, new)

    def __iter__(self) -> Iterator[str]:
        return iter(self._instance._pins)

    def __len__(self) -> int:
        return len(self._instance._pins)

    def __contains__(self, name: object) -> bool:
        return name in self._instance._pins

    def __eq__(self, other: object) -> bool:
        return tuple(self) == tuple(other) if isinstance(other, (tuple, list, Pins)) else NotImplemented

    def __repr__(self) -> str:
        return f"Pins{tuple(self._instance._pins)!r}"


class ComponentInstance:
    """One occurrence of a model inside a circuit."""

    def __init__(self, name: str, model: Model, pins: Sequence[str]):
        self.name = name
        self.model = model
        self._pins = list(pins)

    @property
    def pins(self) -> Pins:
        return Pins(self)

    @pins.setter
    def pins(self, names: Sequence[str]) -> None:
        self.rename_all(names)

    @property
    def pin_names(self) -> tuple[str, ...]:
        return tuple(self._pins)

    def pin_index(self, pin: str) -> int:
        try:
            return self._pins.index(pin)
        except ValueError:
            raise UnknownPin(f"instance {self.name!r} has no pin {pin!r} (pins: {', '.join(self._pins)})") from None

    def rename_pin(self, old: str, new: str) -> None:
        idx = self.pin_index(old)
        check_name(new, "pin name")
        if new != old and new in self._pins:
            raise DuplicatePin(f"instance {self.name!r} already has a pin named {new!r}")
        self._pins[idx] = new

    def rename_all(self, names: Sequence[str]) -> None:
        names = list(names)
        if len(names) != len(self._pins):
            raise ArityMismatch(f"instance {self.name!r} has {len(self._pins)} pins, got {len(names)} names")
        for n in names:
            check_name(n, "pin name")
        if len(set(names)) != len(names):
            raise DuplicatePin(f"duplicate pin names {names}")
        self._pins = names

    def __repr__(self) -> str:
        return f"ComponentInstance({self.name!r}, {self.model!r}, pins={tuple(self._pins)})"


def model_ports(model: Model) -> tuple[str, ...]:
    if isinstance(model, Subcircuit):
        return model.external_pins
    return tuple(model.ports)


class Subcircuit:
    """A mutable netlist that can be simulated or embedded as a model."""

    def __init__(self, name: str = "circuit"):
        self.name = name
        self.elements: dict[str, ComponentInstance] = {}
        self.connections: list[Connection] = []
        self._connected: dict[Endpoint, Connection] = {}
        self._aliases: dict[Endpoint, str] = {}

    # -- construction ------------------------------------------------------

    def add(self, entries: Iterable[tuple[Model, str]]) -> list[ComponentInstance]:
        """Add ``(model, name)`` pairs; the same model may back many instances."""
        entries = list(entries)
        names = [name for _, name in entries]
        for name in names:
            check_name(name, "instance name")
        seen = set(self.elements)
        for name in names:
            if name in seen:
                raise DuplicateName(f"instance name {name!r} is already used")
            seen.add(name)
        added = []
        for model, name in entries:
            if not isinstance(model, (CompactModel, Subcircuit)):
                raise CircuitError(f"{name!r}: {model!r} is not a model or subcircuit")
            inst = ComponentInstance(name, model, model_ports(model))
            self.elements[name] = inst
            added.append(inst)
        return added

    def instance(self, name: str) -> ComponentInstance:
        try:
            return self.elements[name]
        except KeyError:
            raise UnknownInstance(f"no instance named {name!r} in {self.name!r}") from None

    def rename_pin(self, instance_name: str, old_pin: str, new_pin: str) -> None:
        self.instance(instance_name).rename_pin(old_pin, new_pin)

    def rename_all(self, instance_name: str, *names: str) -> None:
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        self.instance(instance_name).rename_all(names)

    def _endpoint(self, instance_name: str, pin: str) -> Endpoint:
        inst = self.elements.get(instance_name)
        if inst is None:
            raise UnknownEndpoint(f"no instance named {instance_name!r}")
        if pin not in inst._pins:
            raise UnknownEndpoint(f"instance {instance_name!r} has no pin {pin!r}")
        return instance_name, inst._pins.index(pin)

    def connect(self, instance_a: str, pin_a: str, instance_b: str, pin_b: str) -> Connection:
        a = self._endpoint(instance_a, pin_a)
        b = self._endpoint(instance_b, pin_b)
        if a == b:
            raise SelfPin(f"cannot connect {instance_a}.{pin_a} to itself")
        for ep, label in ((a, f"{instance_a}.{pin_a}"), (b, f"{instance_b}.{pin_b}")):
            if ep in self._connected:
                raise AlreadyConnected(f"{label} is already connected")
            if ep in self._aliases:
                raise AlreadyConnected(f"{label} is exposed as port {self._aliases[ep]!r}")
        return self._link(a, b)

    def _link(self, a: Endpoint, b: Endpoint) -> Connection:
        conn = Connection(a[0], a[1], b[0], b[1])
        self.connections.append(conn)
        self._connected[a] = conn
        self._connected[b] = conn
        return conn

    def connect_many(self, connections: Iterable[tuple[str, str, str, str]]) -> None:
        """Connect ``(instance_a, pin_a, instance_b, pin_b)`` tuples in order."""
        for a, pa, b, pb in connections:
            self.connect(a, pa, b, pb)

    def expose(self, instance_name: str, pin: str, alias: str) -> None:
        """Give the external pin ``instance.pin`` the public name ``alias``."""
        ep = self._endpoint(instance_name, pin)
        check_name(alias, "port alias")
        if ep in self._connected:
            raise AlreadyConnected(f"{instance_name}.{pin} is connected and cannot be a port")
        if alias in self.external_pins and self._external_name(ep) != alias:
            raise DuplicateName(f"external pin name {alias!r} is already used")
        self._aliases[ep] = alias

    # -- queries -----------------------------------------------------------

    def _external_name(self, ep: Endpoint) -> str:
        alias = self._aliases.get(ep)
        if alias is not None:
            return alias
        return f"{ep[0]}.{self.elements[ep[0]]._pins[ep[1]]}"

    @property
    def external_endpoints(self) -> tuple[Endpoint, ...]:
        return tuple(
            (name, i)
            for name, inst in self.elements.items()
            for i in range(len(inst._pins))
            if (name, i) not in self._connected
        )

    @property
    def external_pins(self) -> tuple[str, ...]:
        """Names of unconnected pins, in instance then pin order."""
        return tuple(self._external_name(ep) for ep in self.external_endpoints)

    def external_map(self) -> dict[str, Endpoint]:
        return {self._external_name(ep): ep for ep in self.external_endpoints}

    def alias_of(self, instance_name: str, pin_index: int) -> str | None:
        return self._aliases.get((instance_name, pin_index))

    def is_connected(self, instance_name: str, pin_index: int) -> bool:
        return (instance_name, pin_index) in self._connected

    @property
    def is_flat(self) -> bool:
        return all(isinstance(inst.model, CompactModel) for inst in self.elements.values())

    def pin_label(self, ep: Endpoint) -> str:
        return f"{ep[0]}.{self.elements[ep[0]]._pins[ep[1]]}"

    def __repr__(self) -> str:
        return (
            f"Subcircuit({self.name!r}, {len(self.elements)} instances, "
            f"{len(self.connections)} connections, ports={self.external_pins})"
        )


def flatten(circuit: Subcircuit) -> Subcircuit:
    """Inline nested subcircuits, naming inner instances ``outer.inner``.

    External pin names are preserved: where the flat default name would
    differ, the flat circuit carries an alias.

    Raises:
        CycleError: if a subcircuit (transitively) contains itself.
    """
    flat = Subcircuit(circuit.name)
    top_map = _inline(circuit, "", flat, [])
    for name, ep in circuit.external_map().items():
        target = top_map[ep]
        if flat._external_name(target) != name:
            flat._aliases[target] = name
    return flat


def _inline(circuit: Subcircuit, prefix: str, flat: Subcircuit, stack: list[int]) -> dict[Endpoint, Endpoint]:
    """Copy ``circuit`` into ``flat``; return its endpoint -> flat endpoint map."""
    if id(circuit) in stack:
        raise CycleError(f"subcircuit {circuit.name!r} contains itself")
    stack.append(id(circuit))
    mapping: dict[Endpoint, Endpoint] = {}
    for name, inst in circuit.elements.items():
        full = prefix + name
        if isinstance(inst.model, Subcircuit):
            sub = inst.model
            inner = _inline(sub, full + ".", flat, stack)
            sub_ext = sub.external_endpoints
            if len(sub_ext) != len(inst._pins):
                raise ArityMismatch(
                    f"instance {full!r} has {len(inst._pins)} pins but subcircuit {sub.name!r} "
                    f"now exposes {len(sub_ext)}"
                )
            for i, ep in enumerate(sub_ext):
                mapping[(name, i)] = inner[ep]
        else:
            flat.elements[full] = ComponentInstance(full, inst.model, inst._pins)
            for i in range(len(inst._pins)):
                mapping[(name, i)] = (full, i)
    for conn in circuit.connections:
        a, b = conn.endpoints
        flat._link(mapping[a], mapping[b])
    stack.pop()
    return mapping
