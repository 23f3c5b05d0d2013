"""Green Machine codewords at the design wavelength and their drift off it.

Phases are relative to the port0 -> port4 path. With --crosstalk and
--bypass-excess the crossover leaks and the unequal routes interfere,
which shows up as ripple on the lower outputs.

    python3 scripts/green_machine.py
    python3 scripts/green_machine.py --crosstalk 0.01 --bypass-excess 50e-6
"""

import argparse

import numpy as np

from picsweep import models, reference
from picsweep.simulate import SweepSpec, run_sweep


def codeword_table(res, index):
    rows = []
    for i in range(4):
        ph = [res.phase(f"port{i}", f"port{o}", relative_to=("port0", "port4"))[index] for o in range(4, 8)]
        rows.append(np.array(ph) / np.pi)
    return np.array(rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--crosstalk", type=float, default=0.0)
    ap.add_argument("--bypass-excess", type=float, default=0.0, help="extra length on the bypass routes, m")
    ap.add_argument("--detune", type=float, default=10e-9, help="offset for the drift table, m")
    args = ap.parse_args()

    circuit = reference.green_machine(crosstalk=args.crosstalk, bypass_excess=args.bypass_excess)
    spec = SweepSpec(1500e-9, 1600e-9, 2001)
    res = run_sweep(circuit, spec)
    wl = res.wavelengths

    for target in (1550e-9, 1550e-9 + args.detune):
        k = int(np.argmin(np.abs(wl - target)))
        print(f"\nrelative phase / pi at {wl[k] * 1e9:.3f} nm (rows: in 0-3, cols: out 4-7)")
        for i, row in enumerate(codeword_table(res, k)):
            print(f"  {i}  " + "  ".join(f"{v:+.4f}" for v in row))

    envelope = np.abs(models.grating_coupler().evaluate(spec.grid()).data[:, 1, 0]) ** 4
    print("\npeak-to-peak power ripple after removing the grating envelope")
    for i in range(4):
        ripple = [np.ptp(res.power(f"port{i}", f"port{o}")[1] / envelope) for o in range(4, 8)]
        print(f"  in {i}: " + "  ".join(f"{r:.2e}" for r in ripple))


if __name__ == "__main__":
    main()
