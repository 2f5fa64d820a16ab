"""Print where the nu_tau filtration on egg domains stabilises.

For each p and tau the analytic threshold is shown next to the largest k for
which the truncated-integral probe still finds ``z2^{-k}`` square integrable.
"""
import argparse
from fractions import Fraction

from szego_lab.domains import EggNuTau, stabilization_threshold
from szego_lab.eggs import membership_test


def probe_threshold(p: int, tau: Fraction, k_max: int) -> int:
    last = -1
    for k in range(k_max + 1):
        if membership_test(p, EggNuTau(tau), k).probe_member:
            last = k
        else:
            break
    return last


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p-max", type=int, default=6)
    ap.add_argument("--taus", default="0,1/3,1/2,2/3,1", help="comma-separated fractions")
    args = ap.parse_args()
    taus = [Fraction(t) for t in args.taus.split(",")]
    print("# p tau threshold probe_threshold")
    for p in range(1, args.p_max + 1):
        for tau in taus:
            thr = stabilization_threshold(p, tau)
            print(p, tau, thr, probe_threshold(p, tau, p + 1))


if __name__ == "__main__":
    main()
