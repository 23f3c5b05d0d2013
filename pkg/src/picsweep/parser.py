"""Reader and writer for the line-oriented ``.phc`` netlist format.

Grammar, one statement per line, ``#`` starts a comment::

    model <name> <kind> [key=value ...]
    comp <instance> <model>
    connect <instance>.<pin> <instance>.<pin>
    port <instance>.<pin> as <alias>
    sweep <start_m> <stop_m> <n_points>

``kind`` is one of the analytic model kinds or ``sparam_file path=<file>``.
Instances are created with their model's default pin names. Instance names
may contain dots (flattened hierarchy); the pin is the part after the last
dot.
"""

from __future__ import annotations

from pathlib import Path

from . import models
from .circuit import NAME_RE, Subcircuit, flatten
from .errors import CircuitError, ParamError, ParseError
from .simulate import SweepSpec

HEADER = "# picsweep netlist"


def _split_ref(token: str, lineno: int) -> tuple[str, str]:
    inst, dot, pin = token.rpartition(".")
    if not dot or not inst or not pin:
        raise ParseError(f"expected <instance>.<pin>, got {token!r}", lineno)
    return inst, pin


def _model_statement(args: list[str], lineno: int, base_dir: Path | None):
    if len(args) < 2:
        raise ParseError("usage: model <name> <kind> [key=value ...]", lineno)
    name, kind, *kv = args
    if not NAME_RE.match(name):
        raise ParseError(f"invalid model name {name!r}", lineno)
    params: dict[str, str] = {}
    for item in kv:
        key, eq, value = item.partition("=")
        if not eq or not key or not value:
            raise ParseError(f"expected key=value, got {item!r}", lineno)
        if key in params:
            raise ParseError(f"parameter {key!r} given twice", lineno)
        params[key] = value

    if kind == "sparam_file":
        if set(params) != {"path"}:
            raise ParseError("sparam_file takes exactly one parameter, path=<file>", lineno)
        path = Path(params["path"])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        try:
            model = models.load_sparam_file(path)
        except ParseError as exc:
            raise ParseError(f"in {path}: {exc}", lineno) from None
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}", lineno) from None
        # keep the path as written so emit() reproduces it
        return name, models.FileModel("sparam_file", {}, model.ports, source=model.source, path=params["path"])

    if kind not in models.MODEL_KINDS:
        raise ParseError(f"unknown model kind {kind!r}", lineno)
    values = {}
    for key, value in params.items():
        try:
            values[key] = models.parse_float(value)
        except ValueError:
            raise ParseError(f"bad value for {key}: {value!r}", lineno) from None
    try:
        return name, models.make_model(kind, **values)
    except ParamError as exc:
        raise ParseError(str(exc), lineno) from None


def parse(text: str, name: str = "netlist", base_dir=None) -> tuple[Subcircuit, SweepSpec | None]:
    """Build a circuit (and optional sweep) from netlist text.

    ``base_dir`` resolves relative ``sparam_file`` paths.

    Raises:
        ParseError: with the 1-based line number of the offending statement.
    """
    base = Path(base_dir) if base_dir is not None else None
    circuit = Subcircuit(name)
    model_table: dict[str, models.CompactModel] = {}
    sweep: SweepSpec | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, *args = line.split()
        try:
            if directive == "model":
                mname, model = _model_statement(args, lineno, base)
                if mname in model_table:
                    raise ParseError(f"model {mname!r} already declared", lineno)
                model_table[mname] = model
            elif directive == "comp":
                if len(args) != 2:
                    raise ParseError("usage: comp <instance> <model>", lineno)
                inst, mname = args
                if mname not in model_table:
                    raise ParseError(f"unknown model {mname!r}", lineno)
                circuit.add([(model_table[mname], inst)])
            elif directive == "connect":
                if len(args) != 2:
                    raise ParseError("usage: connect <inst>.<pin> <inst>.<pin>", lineno)
                a, pa = _split_ref(args[0], lineno)
                b, pb = _split_ref(args[1], lineno)
                circuit.connect(a, pa, b, pb)
            elif directive == "port":
                if len(args) != 3 or args[1] != "as":
                    raise ParseError("usage: port <inst>.<pin> as <alias>", lineno)
                inst, pin = _split_ref(args[0], lineno)
                circuit.expose(inst, pin, args[2])
            elif directive == "sweep":
                if len(args) != 3:
                    raise ParseError("usage: sweep <start_m> <stop_m> <n_points>", lineno)
                if sweep is not None:
                    raise ParseError("sweep given twice", lineno)
                try:
                    start, stop = models.parse_float(args[0]), models.parse_float(args[1])
                    n = int(args[2])
                except ValueError:
                    raise ParseError("sweep needs two numbers and an integer point count", lineno) from None
                try:
                    sweep = SweepSpec(start, stop, n)
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
            else:
                raise ParseError(f"unknown directive {directive!r}", lineno)
        except CircuitError as exc:
            raise ParseError(f"{type(exc).__name__}: {exc}", lineno) from None
    return circuit, sweep


def parse_file(path) -> tuple[Subcircuit, SweepSpec | None]:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), name=path.stem, base_dir=path.parent)


def _fmt(x: float) -> str:
    return repr(float(x))


def emit(circuit: Subcircuit, sweep: SweepSpec | None = None) -> str:
    """Write ``circuit`` as netlist text; hierarchy is flattened.

    Numbers are written with ``repr`` so they parse back bit-exactly.
    Renamed pins are written by their default names; external pins whose
    names would change get a ``port ... as`` line.

    Raises:
        ValueError: for file-backed models that were never read from a file.
    """
    flat = flatten(circuit)
    lines = [HEADER]
    model_names: dict[int, str] = {}
    used: set[str] = set()
    body: list[str] = []

    for inst in flat.elements.values():
        model = inst.model
        if id(model) in model_names:
            continue
        base = model.kind
        k = 0
        while f"{base}_{k}" in used:
            k += 1
        mname = f"{base}_{k}"
        used.add(mname)
        model_names[id(model)] = mname
        if isinstance(model, models.FileModel):
            if model.path is None:
                raise ValueError("in-memory S-parameter models have no file path to emit")
            lines.append(f"model {mname} sparam_file path={model.path}")
        else:
            kv = " ".join(f"{key}={_fmt(v)}" for key, v in model.params.items())
            lines.append(f"model {mname} {model.kind}" + (f" {kv}" if kv else ""))

    for name, inst in flat.elements.items():
        body.append(f"comp {name} {model_names[id(inst.model)]}")

    def ref(ep):
        inst = flat.elements[ep[0]]
        return f"{ep[0]}.{inst.model.ports[ep[1]]}"

    for conn in flat.connections:
        a, b = conn.endpoints
        body.append(f"connect {ref(a)} {ref(b)}")
    for ep in flat.external_endpoints:
        name = flat._external_name(ep)
        if name != ref(ep):
            body.append(f"port {ref(ep)} as {name}")
    if sweep is not None:
        if sweep.mode != "wavelength":
            raise ValueError("netlist sweeps are in wavelength")
        body.append(f"sweep {_fmt(sweep.start)} {_fmt(sweep.stop)} {int(sweep.n_points)}")
    return "\n".join(lines + body) + "\n"
