"""Three-ring add-drop filter: resonances, FSR per drop port, and depletion where rings overlap.

    python3 scripts/ring_filter.py --out rings.csv
"""

import argparse

import numpy as np

from picsweep import reference
from picsweep.analysis import local_maxima
from picsweep.cli import format_csv
from picsweep.models import WAVEGUIDE_DEFAULTS, group_index
from picsweep.simulate import SweepSpec, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--radii", type=float, nargs="+", default=[10e-6, 11e-6, 12e-6])
    ap.add_argument("--coupling", type=float, default=0.1, help="power coupling per bus")
    ap.add_argument("--points", type=int, default=40001)
    ap.add_argument("--out", help="write input->drop sweeps as CSV")
    args = ap.parse_args()

    circuit = reference.ring_filter(tuple(args.radii), coupling=args.coupling)
    res = run_sweep(circuit, SweepSpec(1530e-9, 1570e-9, args.points))
    wl = res.wavelengths
    ng = float(group_index(WAVEGUIDE_DEFAULTS, 1550e-9))

    for k, r in enumerate(args.radii):
        p = res.power("input", f"drop{k}")[1]
        pos, height = local_maxima(wl, p, min_height=0.02 * p.max())
        print(f"\ndrop{k}  r = {r * 1e6:g} um, predicted FSR {1550e-9**2 / (ng * 2 * np.pi * r) * 1e9:.3f} nm at 1550 nm")
        for x, h in zip(pos, height):
            print(f"  {x * 1e9:10.3f} nm  {h:.3f}")
        if len(pos) > 1:
            print("  spacings (nm): " + " ".join(f"{d * 1e9:.3f}" for d in np.diff(pos)))

    pairs = [("input", f"drop{k}") for k in range(len(args.radii))] + [("input", "through")]
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(format_csv(res, pairs))
        print(f"\nwrote {args.out}")


if __name__ == "__main__":
    main()
