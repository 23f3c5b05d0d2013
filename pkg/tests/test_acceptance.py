"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is
printed in the terminal summary."""

import time
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import curve_fit

import properties
from conftest import ACCEPTANCE_LINES
from goldens import CODEWORDS, DEFAULT_GROUP_INDEX, DESIGN_WAVELENGTH, wrapped_distance
from picsweep import models, reference
from picsweep.analysis import free_spectral_range, local_maxima, local_minima
from picsweep.cli import benchmark
from picsweep.parser import parse_file
from picsweep.simulate import SweepResult, SweepSpec, run_sweep
from picsweep.cascade import reduce_circuit
from picsweep.circuit import flatten
from picsweep.smatrix import FrequencyGrid

NETLISTS = Path(__file__).resolve().parent.parent / "netlists"
RADII = (10e-6, 11e-6, 12e-6)


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_1_oracle_equivalence():
    t0 = time.perf_counter()
    worst = max(properties.oracle_gap(seed) for seed in range(50))
    elapsed = time.perf_counter() - t0
    record(
        1,
        "cascade vs direct solve",
        worst < 1e-10 and elapsed < 30,
        f"max |dS| = {worst:.2e} (< 1e-10) over 50 circuits x 101 points in {elapsed:.2f} s (< 30 s)",
    )


def test_2_green_machine_codewords():
    grid = FrequencyGrid.from_wavelengths([DESIGN_WAVELENGTH])
    s, pin_map = reduce_circuit(flatten(reference.green_machine()), grid)
    res = SweepResult(grid, s, pin_map)
    got = np.array(
        [[res.phase(f"port{i}", f"port{o}", relative_to=("port0", "port4"))[0] for o in range(4, 8)] for i in range(4)]
    )
    err = wrapped_distance(got, CODEWORDS).max()
    record(2, "Green Machine codewords", err < 1e-9, f"max phase error {err:.2e} rad (< 1e-9) over 16 entries")


def test_3_mzi_interference():
    spec = SweepSpec(1500e-9, 1600e-9, 2000)
    res = run_sweep(reference.mzi(), spec)
    _, p = res.power("input.input", "output.output")
    xs, _ = local_minima(res.wavelengths, p)
    fsr, centre = free_spectral_range(xs, near=1550e-9)
    predicted = centre**2 / (DEFAULT_GROUP_INDEX * 100e-6)
    rel = abs(fsr - predicted) / predicted

    lossless = run_sweep(reference.mzi(waveguide_params=dict(loss=0.0)), spec)
    _, p0 = lossless.power("input.input", "output.output")
    floor_db = 10 * np.log10(p0.min())
    record(
        3,
        "MZI fringes",
        rel < 0.02 and floor_db < -30,
        f"FSR {fsr * 1e9:.4f} nm vs {predicted * 1e9:.4f} nm (rel {rel:.2e} < 0.02); "
        f"lossless minimum {floor_db:.1f} dB (< -30 dB)",
    )


def lorentzian(x, amp, x0, hwhm, offset):
    return amp / (1 + ((x - x0) / hwhm) ** 2) + offset


def isolated_fsr(wl, p, near):
    """FSR from two neighbouring resonances that are both undisturbed.

    A resonance split or depleted by another ring stays in the list of maxima
    (so no period is skipped) but may not be one end of the measured pair.
    """
    pos, height = local_maxima(wl, p, min_height=0.02 * p.max())
    isolated = height > 0.5 * p.max()
    pairs = [(pos[i], pos[i + 1]) for i in range(len(pos) - 1) if isolated[i] and isolated[i + 1]]
    a, b = min(pairs, key=lambda ab: abs(0.5 * (ab[0] + ab[1]) - near))
    return free_spectral_range([a, b], near)


def test_4_ring_filter():
    res = run_sweep(reference.ring_filter(RADII), SweepSpec(1530e-9, 1570e-9, 40001))
    wl = res.wavelengths
    notes, ok = [], True

    for k, r in enumerate(RADII):
        _, p = res.power("input", f"drop{k}")
        fsr, centre = isolated_fsr(wl, p, near=1550e-9)
        predicted = centre**2 / (DEFAULT_GROUP_INDEX * 2 * np.pi * r)
        rel = abs(fsr - predicted) / predicted
        ok &= rel < 0.02
        notes.append(f"drop{k} FSR rel err {rel:.1e}")

    # isolated first-ring resonance, dense local sweep
    _, p0 = res.power("input", "drop0")
    peaks, _ = local_maxima(wl, p0, min_height=0.5 * p0.max())
    x0 = peaks[np.argmin(np.abs(peaks - 1552e-9))]
    local = run_sweep(reference.ring_filter(RADII), SweepSpec(x0 - 0.6e-9, x0 + 0.6e-9, 2001))
    x, y = local.wavelengths * 1e9, local.power("input", "drop0")[1]
    popt, _ = curve_fit(lorentzian, x, y, p0=(y.max(), x0 * 1e9, 0.05, 0.0))
    resid = y - lorentzian(x, *popt)
    r2 = 1 - np.sum(resid**2) / np.sum((y - y.mean()) ** 2)
    ok &= r2 > 0.99
    notes.append(f"Lorentzian R^2 {r2:.5f} at {x0 * 1e9:.3f} nm")

    # overlapping resonances: first ring's line centre near 1543.8 nm
    centre = peaks[np.argmin(np.abs(peaks - 1543.8e-9))]
    at = run_sweep(reference.ring_filter(RADII), SweepSpec(centre - 1e-12, centre + 1e-12, 2))
    dropped = [float(np.mean(at.power("input", f"drop{k}")[1])) for k in range(3)]
    ok &= dropped[1] < dropped[0] and dropped[2] < dropped[0]
    notes.append(f"drop power at {centre * 1e9:.3f} nm: " + ", ".join(f"{d:.2e}" for d in dropped))
    record(4, "ring add-drop filter", bool(ok), "; ".join(notes))


def test_5_benchmark_scaling():
    t0 = time.perf_counter()
    rows = dict(benchmark([10, 100], repeats=10))
    wall = time.perf_counter() - t0
    ratio = rows[100] / rows[10]
    record(
        5,
        "linear scaling",
        ratio <= 15 and wall < 60,
        f"t(100)/t(10) = {ratio:.2f} (<= 15), t(10) = {rows[10]:.4f} s, wall {wall:.1f} s (< 60 s)",
    )


def test_6_property_suites():
    failures = {}
    for name, check in properties.PROPERTIES.items():
        bad = []
        for seed in range(100):
            try:
                check(seed)
            except AssertionError:
                bad.append(seed)
        if bad:
            failures[name] = bad
    detail = f"{len(properties.PROPERTIES)} properties x 100 cases"
    if failures:
        detail += "; failing: " + ", ".join(f"{k} seeds {v[:5]}" for k, v in failures.items())
    record(6, "property suites", not failures, detail)


def test_7_file_io(tmp_path):
    grid = SweepSpec(1500e-9, 1600e-9, 501).grid()
    worst = 0.0
    for factory in (
        lambda: models.waveguide(123e-6),
        models.y_branch,
        lambda: models.directional_coupler(0.3),
        models.grating_coupler,
        lambda: models.half_ring(7e-6, 0.2),
        lambda: models.crossover(0.05),
    ):
        s = factory().evaluate(grid)
        path = tmp_path / "m.sparam"
        models.write_sparam_file(path, s)
        back = models.load_sparam_file(path).evaluate(grid)
        scale = np.maximum(np.abs(s.data), np.finfo(float).tiny)
        worst = max(worst, float(np.max(np.abs(back.data - s.data) / scale)))

    c, sweep = parse_file(NETLISTS / "mzi.phc")
    bitwise = run_sweep(c, sweep).s.data.tobytes() == run_sweep(reference.mzi(), sweep).s.data.tobytes()
    record(
        7,
        "file round trips",
        worst < 1e-15 and bitwise,
        f".sparam max relative error {worst:.1e} (< 1e-15); .phc MZI bitwise equal to scripted: {bitwise}",
    )


@pytest.fixture(autouse=True, scope="module")
def _reset_lines():
    ACCEPTANCE_LINES.clear()
    yield
