"""Partial squared norms of the stabilization series under omega_p, as gnuplot columns.

The three series are f, h = z2^{-(k-1)} f and z2^{-1} h; only the last one
should grow like log T.
"""
import argparse

from szego_lab.domains import EggOmegaP
from szego_lab.eggs import StabilizationF, StabilizationH, divergence_probe


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--max-exp", type=int, default=14)
    args = ap.parse_args()
    T = [2**i for i in range(4, args.max_exp + 1)]
    runs = {
        "f": divergence_probe(StabilizationF(args.p, args.k), EggOmegaP(), T),
        "h": divergence_probe(StabilizationH(args.p, args.k), EggOmegaP(), T),
        "h_over_z2": divergence_probe(StabilizationH(args.p, args.k), EggOmegaP(), T, ell_shift=-1),
    }
    for name, d in runs.items():
        print(f"# {name}: slope {d.slope:.4f} ({d.classification}), log growth {d.log_growth:.4g}")
    print("# T " + " ".join(runs))
    for i, t in enumerate(T):
        print(t, " ".join(repr(d.partial_sums[i]) for d in runs.values()))


if __name__ == "__main__":
    main()
