"""Time cascaded MZI chains of growing length and report how run time scales.

    python3 scripts/benchmark_scaling.py --counts 1 10 25 50 100 --repeats 10
"""

import argparse

import numpy as np

from picsweep.cli import benchmark


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--counts", type=int, nargs="+", default=[1, 10, 25, 50, 100])
    ap.add_argument("--repeats", type=int, default=10)
    ap.add_argument("--points", type=int, default=2000)
    args = ap.parse_args()

    rows = benchmark(args.counts, args.repeats, args.points)
    counts = np.array([c for c, _ in rows], dtype=float)
    times = np.array([t for _, t in rows])
    print(f"{'mzis':>6} {'mean_s':>10} {'s_per_mzi':>10}")
    for c, t in rows:
        print(f"{c:>6d} {t:>10.4f} {t / c:>10.5f}")
    if len(rows) > 1:
        slope, intercept = np.polyfit(counts, times, 1)
        print(f"\nlinear fit: {slope * 1e3:.3f} ms per MZI + {intercept * 1e3:.3f} ms fixed")
        loglog = np.polyfit(np.log(counts), np.log(times), 1)[0]
        print(f"log-log slope {loglog:.3f} (1.0 is linear)")


if __name__ == "__main__":
    main()
