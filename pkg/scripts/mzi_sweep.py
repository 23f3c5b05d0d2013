"""Sweep the reference MZI and compare its fringe spacing with the group-index estimate.

    python3 scripts/mzi_sweep.py --points 2000 --out mzi.csv
"""

import argparse

import numpy as np

from picsweep import reference
from picsweep.analysis import free_spectral_range, local_minima
from picsweep.cli import format_csv
from picsweep.models import WAVEGUIDE_DEFAULTS, group_index
from picsweep.simulate import SweepSpec, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--long", type=float, default=150e-6, help="long arm, m")
    ap.add_argument("--short", type=float, default=50e-6, help="short arm, m")
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--lossless", action="store_true", help="zero waveguide loss")
    ap.add_argument("--out", help="write the sweep as CSV")
    args = ap.parse_args()

    wg = dict(loss=0.0) if args.lossless else {}
    circuit = reference.mzi(args.long, args.short, waveguide_params=wg)
    res = run_sweep(circuit, SweepSpec(1500e-9, 1600e-9, args.points))
    _, p = res.power("input.input", "output.output")

    minima, _ = local_minima(res.wavelengths, p)
    fsr, centre = free_spectral_range(minima, near=1550e-9)
    ng = float(group_index(WAVEGUIDE_DEFAULTS, centre))
    predicted = centre**2 / (ng * (args.long - args.short))
    print(f"group index        {ng:.4f}")
    print(f"FSR near {centre * 1e9:.2f} nm  {fsr * 1e9:.4f} nm (predicted {predicted * 1e9:.4f} nm)")
    print(f"peak transmission  {10 * np.log10(p.max()):.2f} dB")
    print(f"deepest minimum    {10 * np.log10(p.min()):.2f} dB")

    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(format_csv(res, [("input.input", "output.output")]))
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
