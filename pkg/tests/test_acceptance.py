"""Acceptance criteria 1-10, one check per criterion at the stated tolerances.

Each check records a ``PASS``/``FAIL`` line that is printed in the pytest
terminal summary; running this file directly prints the same lines.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from szego_lab.cli import random_oracle_point
from szego_lab.domains import (
    ConformalMap,
    Disk,
    EggOmegaP,
    EggSigma,
    Hartogs,
    PuncturedDisk,
    SimplyConnectedPunctured,
    samples_on_grid,
    stabilization_threshold,
)
from szego_lab.eggs import (
    MonomialIndex,
    StabilizationF,
    StabilizationH,
    beta,
    divergence_probe,
    membership_test,
    monomial_norm,
)
from szego_lab.kernels import (
    generic_ck_phi,
    partial_fraction_closed_form,
    partial_fraction_oracle,
    szego_disk,
    szego_hartogs,
    szego_power_hartogs,
    szego_punctured_disk,
)
from szego_lab.projections import MultiplierSpec, admissible_exponents, interior_points, project, reproduce
from szego_lab.rigidity import default_samples, ks_defect
from szego_lab.series import TorusCoefficients, analyze, evaluate, synthesize

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = {}

Q03_K1_FIXTURE = 0.26361395455427555  # first computed value, 64 x 256 sample


def _rel(a, b):
    return abs(a - b) / abs(b)


def crit1():
    t0 = time.perf_counter()
    F = lambda z: z**-2 + 3 * z + z**5
    z = 0.6 * np.exp(1j * np.pi / 5)
    spec = PuncturedDisk((0j,), (2,))
    err = _rel(reproduce(spec, samples_on_grid(spec, F, 256), z), F(z))
    dt = time.perf_counter() - t0
    return err <= 1e-12 and dt < 1, f"rel err {err:.2e}, {dt:.2f}s"


def crit2():
    t0 = time.perf_counter()
    worst = 0.0
    for m, n in [(1, 1), (2, 1), (3, 2), (5, 3)]:
        for k in (0, 1, 2):
            spec = Hartogs(m, n, k)
            pts = interior_points(spec, 5)
            for a, b in admissible_exponents(spec, 10):
                g = samples_on_grid(spec, lambda w1, w2: w1**a * w2**b, 128)
                for z in pts:
                    worst = max(worst, _rel(reproduce(spec, g, z), z[0] ** a * z[1] ** b))
    dt = time.perf_counter() - t0
    return worst <= 1e-10 and dt < 10, f"max rel err {worst:.2e}, {dt:.2f}s"


def crit3():
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    worst = 0.0
    for m in range(1, 7):
        for n in range(1, 7):
            for _ in range(100):
                b, x, y = random_oracle_point(rng, m, n)
                lhs = partial_fraction_oracle(m, n, b, x, y)
                worst = max(worst, _rel(partial_fraction_closed_form(m, n, b, x, y), lhs))
    dt = time.perf_counter() - t0
    return worst <= 1e-10 and dt < 5, f"max rel err {worst:.2e} over 3600 samples, {dt:.2f}s"


def crit4():
    rng = np.random.default_rng(4)
    worst_h = worst_c = 0.0
    for _ in range(1000):
        k = int(rng.integers(0, 4))
        r2 = rng.uniform(0.05, 0.95)
        z = (rng.uniform(0, 0.95) * r2 * np.exp(2j * np.pi * rng.uniform()), r2 * np.exp(2j * np.pi * rng.uniform()))
        w = tuple(np.exp(2j * np.pi * rng.uniform(size=2)))
        worst_h = max(worst_h, _rel(szego_power_hartogs(1, 1, k, z, w), szego_hartogs(k, z, w)))
        zz = rng.uniform(0.05, 0.95) * np.exp(2j * np.pi * rng.uniform())
        ww = np.exp(2j * np.pi * rng.uniform())
        worst_c = max(worst_c, _rel(generic_ck_phi(szego_disk, lambda x: x, k, zz, ww), szego_punctured_disk([0], [k], zz, ww)))
    ok = worst_h <= 1e-13 and worst_c <= 1e-13
    return ok, f"Hartogs m=n=1 {worst_h:.2e}, phi=z construction {worst_c:.2e}"


def crit5():
    rng = np.random.default_rng(0)
    B, N = 16, 256
    c = rng.standard_normal((2 * B + 1, 2 * B + 1)) + 1j * rng.standard_normal((2 * B + 1, 2 * B + 1))
    samples = synthesize(TorusCoefficients(-B, -B, c), N)
    coeffs = analyze(samples)
    worst, idem = 0.0, True
    for m in (1, 2, 3):
        for n in (1, 2, 3):
            if math.gcd(m, n) != 1:
                continue
            for k in (0, 1, 2):
                spec = Hartogs(m, n, k)
                ms = MultiplierSpec.for_domain(spec)
                proj = project(coeffs, ms)
                idem &= project(proj, ms) == proj
                for z in interior_points(spec, 10):
                    worst = max(worst, _rel(evaluate(proj, z), reproduce(spec, samples, z)))
    return worst <= 1e-10 and idem, f"max rel err {worst:.2e}, idempotent={idem}"


def crit6():
    worst, ordered = 0.0, True
    for p in (1, 2, 3):
        for j in range(7):
            for l in range(7):
                q = monomial_norm(p, EggOmegaP(), MonomialIndex(j, l), "quadrature")
                worst = max(worst, _rel(q, 4 * np.pi**2 * beta(j / p + 1, l / p + 1)))
                ordered &= beta(j / p + 1, l / p + 1) <= beta((j + 1) / p, (l + 1) / p)
    return worst <= 1e-8 and ordered, f"max rel err {worst:.2e}, beta ordering holds={ordered}"


def crit7():
    right = total = 0
    for p in range(1, 5):
        for k in range(1, 6):
            for meas, bound in ((EggOmegaP(), p), (EggSigma(), 1)):
                r = membership_test(p, meas, k)
                total += 1
                right += r.member == (k < bound) and r.consistent
    thr_ok = all(
        stabilization_threshold(p, tau) == math.ceil(p * (1 - Fraction(tau).limit_denominator(100)) + Fraction(tau).limit_denominator(100)) - 1
        for p in range(1, 5)
        for tau in (0, 1 / 3, 2 / 3, 1)
    )
    return right == total and thr_ok, f"{right}/{total} membership cases (20 per measure), thresholds match={thr_ok}"


def crit8():
    t0 = time.perf_counter()
    T = [2**i for i in range(4, 15)]
    harm = divergence_probe(StabilizationH(2, 1), EggOmegaP(), T, ell_shift=-1)
    h = divergence_probe(StabilizationH(2, 1), EggOmegaP(), T)
    f = divergence_probe(StabilizationF(2, 1), EggOmegaP(), T)
    dt = time.perf_counter() - t0
    ok = abs(harm.slope + 1) <= 0.05 and h.classification == "convergent" and f.classification == "convergent" and dt < 5
    return ok, f"z2^-1 h slope {harm.slope:.4f}, h {h.classification}, f {f.classification}, {dt:.2f}s"


def crit9():
    centred = max(ks_defect([0], [k], N=256, sample_z=default_samples([0], 32)).sup_defect for k in range(5))
    off = ks_defect([0.3], [1], N=256, sample_z=default_samples([0.3], 64)).sup_defect
    ok = centred <= 1e-12 and off > 0 and abs(off / Q03_K1_FIXTURE - 1) <= 0.10
    return ok, f"centred max defect {centred:.2e}, q=0.3 defect {off:.6f} (fixture {Q03_K1_FIXTURE:.6f})"


def crit10():
    mu = ConformalMap.quadratic(0.3)
    spec = SimplyConnectedPunctured(mu, (0.1,), (1,))
    c = complex(mu.forward(0.1))
    funcs = [lambda w: 1 / (w - c), lambda w: w**2 + 1, lambda w: np.exp(w) / (w - c)]
    worst = 0.0
    for F in funcs:
        g = samples_on_grid(spec, F, 512)
        for z in interior_points(Disk(), 3):
            worst = max(worst, _rel(reproduce(spec, g, z), F(complex(mu.forward(z)))))
    return worst <= 1e-8, f"max rel err {worst:.2e}"


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10]


@pytest.mark.parametrize("index", range(1, 11))
def test_criterion(index):
    ok, detail = CRITERIA[index - 1]()
    line = f"criterion {index:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[index] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
