"""Builders for the standard demonstration circuits.

These are used by the CLI benchmark, the scripts in ``scripts/`` and the test
suite. All lengths are metres.
"""

from __future__ import annotations

from . import models
from .circuit import Subcircuit


def mzi(
    long_length: float = 150e-6,
    short_length: float = 50e-6,
    grating: models.CompactModel | None = None,
    waveguide_params: dict | None = None,
) -> Subcircuit:
    """Grating-coupled MZI with two y-branches; external pins ``input.input``, ``output.output``."""
    wp = waveguide_params or {}
    grating = grating or models.grating_coupler()
    y = models.y_branch()
    wg_long = models.waveguide(long_length, **wp)
    wg_short = models.waveguide(short_length, **wp)

    circuit = Subcircuit("MZI")
    circuit.add(
        [
            (grating, "input"),
            (grating, "output"),
            (y, "splitter"),
            (y, "recombiner"),
            (wg_long, "wg_long"),
            (wg_short, "wg_short"),
        ]
    )
    circuit.elements["input"].pins["n2"] = "input"
    circuit.elements["output"].pins["n2"] = "output"
    circuit.elements["splitter"].pins = ("in1", "out1", "out2")
    circuit.elements["recombiner"].pins = ("out1", "in2", "in1")
    circuit.connect_many(
        [
            ("input", "n1", "splitter", "in1"),
            ("splitter", "out1", "wg_long", "n1"),
            ("splitter", "out2", "wg_short", "n1"),
            ("recombiner", "in1", "wg_long", "n2"),
            ("recombiner", "in2", "wg_short", "n2"),
            ("output", "n1", "recombiner", "out1"),
        ]
    )
    return circuit


def mzi_chain(count: int, link_length: float = 10e-6) -> Subcircuit:
    """``count`` MZIs in series, each joined to the next by a waveguide.

    With ``count == 1`` this is exactly :func:`mzi`.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    grating = models.grating_coupler()
    y = models.y_branch()
    wg_long = models.waveguide(150e-6)
    wg_short = models.waveguide(50e-6)
    link = models.waveguide(link_length)

    c = Subcircuit(f"MZI_chain_{count}")
    c.add([(grating, "input"), (grating, "output")])
    c.elements["input"].pins["n2"] = "input"
    c.elements["output"].pins["n2"] = "output"
    if count == 1:
        # keep instance and connection order identical to mzi()
        c.add([(y, "splitter"), (y, "recombiner"), (wg_long, "wg_long"), (wg_short, "wg_short")])
        c.elements["splitter"].pins = ("in1", "out1", "out2")
        c.elements["recombiner"].pins = ("out1", "in2", "in1")
        c.connect_many(
            [
                ("input", "n1", "splitter", "in1"),
                ("splitter", "out1", "wg_long", "n1"),
                ("splitter", "out2", "wg_short", "n1"),
                ("recombiner", "in1", "wg_long", "n2"),
                ("recombiner", "in2", "wg_short", "n2"),
                ("output", "n1", "recombiner", "out1"),
            ]
        )
        return c

    prev = ("input", "n1")
    for i in range(count):
        sp, rc, wl, ws = f"splitter{i}", f"recombiner{i}", f"wg_long{i}", f"wg_short{i}"
        c.add([(y, sp), (y, rc), (wg_long, wl), (wg_short, ws)])
        c.connect_many(
            [
                (prev[0], prev[1], sp, "n1"),
                (sp, "n2", wl, "n1"),
                (sp, "n3", ws, "n1"),
                (rc, "n3", wl, "n2"),
                (rc, "n2", ws, "n2"),
            ]
        )
        if i < count - 1:
            c.add([(link, f"link{i}")])
            c.connect(rc, "n1", f"link{i}", "n1")
            prev = (f"link{i}", "n2")
        else:
            c.connect("output", "n1", rc, "n1")
    return c


def green_machine(
    crosstalk: float = 0.0,
    coupling: float = 0.5,
    interconnect: float = 20e-6,
    bypass_excess: float = 0.0,
    grating: models.CompactModel | None = None,
) -> Subcircuit:
    """Four-input Green Machine: two coupler stages with a crossover between.

    Gratings ``gc0``..``gc3`` are inputs and ``gc4``..``gc7`` outputs; the
    external pins are ``gc<k>.n1``. Every route passes two gratings, two
    couplers and the same number of ``interconnect`` waveguides. The two
    routes that bypass the crossover get ``bypass_excess`` extra length.
    """
    grating = grating or models.grating_coupler()
    dc = models.directional_coupler(coupling)
    xo = models.crossover(crosstalk)
    wg = models.waveguide(interconnect)
    wg_bypass = models.waveguide(interconnect + bypass_excess)

    c = Subcircuit("GreenMachine")
    c.add([(grating, f"gc{k}") for k in range(8)])
    c.add([(dc, "dc_a"), (dc, "dc_b"), (xo, "cross"), (dc, "dc_c"), (dc, "dc_d")])
    c.add([(wg, f"wg_in{k}") for k in range(4)])
    c.add([(wg_bypass, "wg_a0"), (wg, "wg_a1"), (wg, "wg_b0"), (wg_bypass, "wg_b1")])
    c.add([(wg, f"wg_out{k}") for k in range(4)])

    links = []
    # inputs 0,1 -> dc_a left; 2,3 -> dc_b left
    for k, (dc_name, pin) in enumerate([("dc_a", "n1"), ("dc_a", "n2"), ("dc_b", "n1"), ("dc_b", "n2")]):
        links += [(f"gc{k}", "n2", f"wg_in{k}", "n1"), (f"wg_in{k}", "n2", dc_name, pin)]
    # stage-1 outputs, lines top to bottom: a0, a1, b0, b1
    links += [
        ("dc_a", "n3", "wg_a0", "n1"),
        ("dc_a", "n4", "wg_a1", "n1"),
        ("dc_b", "n3", "wg_b0", "n1"),
        ("dc_b", "n4", "wg_b1", "n1"),
        # middle lines swap through the crossover
        ("wg_a1", "n2", "cross", "n1"),
        ("wg_b0", "n2", "cross", "n2"),
        ("wg_a0", "n2", "dc_c", "n1"),
        ("cross", "n4", "dc_d", "n1"),
        ("cross", "n3", "dc_c", "n2"),
        ("wg_b1", "n2", "dc_d", "n2"),
    ]
    for k, (dc_name, pin) in enumerate([("dc_c", "n3"), ("dc_c", "n4"), ("dc_d", "n3"), ("dc_d", "n4")]):
        links += [(dc_name, pin, f"wg_out{k}", "n1"), (f"wg_out{k}", "n2", f"gc{k + 4}", "n2")]
    c.connect_many(links)
    for k in range(8):
        c.expose(f"gc{k}", "n1", f"port{k}")
    return c


def ring(radius: float, coupling: float = 0.1, drop_coupling: float | None = None, **waveguide_params) -> Subcircuit:
    """Add-drop ring from two half-rings.

    External pins: ``input``, ``through`` on the input bus and ``add``,
    ``drop`` on the drop bus. Light resonant with the ring leaves ``drop``.
    """
    top = models.half_ring(radius, coupling, **waveguide_params)
    bottom = models.half_ring(radius, coupling if drop_coupling is None else drop_coupling, **waveguide_params)
    c = Subcircuit(f"ring_{radius * 1e6:g}um")
    c.add([(top, "top"), (bottom, "bottom")])
    c.connect_many([("top", "n4", "bottom", "n3"), ("bottom", "n4", "top", "n3")])
    c.expose("top", "n1", "input")
    c.expose("top", "n2", "through")
    c.expose("bottom", "n1", "add")
    c.expose("bottom", "n2", "drop")
    return c


def ring_filter(
    radii: tuple[float, ...] = (10e-6, 11e-6, 12e-6),
    coupling: float = 0.1,
    link_length: float = 20e-6,
    **waveguide_params,
) -> Subcircuit:
    """Rings in series along one bus, each with its own drop port.

    External pins: ``input``, ``through`` and ``drop<k>`` (plus ``add<k>``).
    """
    rings = [ring(r, coupling, **waveguide_params) for r in radii]
    link = models.waveguide(link_length, **waveguide_params)
    c = Subcircuit("ring_filter")
    for k, sub in enumerate(rings):
        c.add([(sub, f"ring{k}")])
        if k:
            c.add([(link, f"link{k}")])
            c.connect_many([(f"ring{k - 1}", "through", f"link{k}", "n1"), (f"link{k}", "n2", f"ring{k}", "input")])
    c.expose("ring0", "input", "input")
    c.expose(f"ring{len(rings) - 1}", "through", "through")
    for k in range(len(rings)):
        c.expose(f"ring{k}", "drop", f"drop{k}")
        c.expose(f"ring{k}", "add", f"add{k}")
    return c
