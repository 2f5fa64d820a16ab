"""Hardy norms, pole-order membership and stabilization diagnostics on egg domains.

In the coordinates ``(s, theta1, theta2)`` the monomial ``z1^j z2^l`` has
boundary values ``s^{j/2p} (1-s)^{l/2p} e^{i(j theta1 + l theta2)}``, so
monomials are orthogonal for every rotation-invariant measure and the
squared norm of a series is the weighted sum of squared monomial norms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np
from scipy import integrate
from scipy.special import betaln

from .domains import (
    EggNuTau,
    EggOmegaP,
    EggSigma,
    MeasureTag,
    egg_density,
    egg_density_exponent,
    egg_density_regular_part,
)
from .errors import DomainError, InvalidInputError

FOUR_PI_SQ = 4 * np.pi**2


def beta(x: float, y: float) -> float:
    """Euler beta function ``Gamma(x) Gamma(y) / Gamma(x + y)`` for ``x, y > 0``."""
    if not (x > 0 and y > 0):
        raise DomainError(f"beta(x, y) needs x, y > 0, got ({x}, {y})")
    return float(np.exp(betaln(x, y)))


@dataclass(frozen=True)
class MonomialIndex:
    """Exponents of ``z1^j z2^l``; ``l`` may be negative."""

    j: int
    l: int

    def __post_init__(self):
        if self.j < 0:
            raise InvalidInputError("the z1 exponent must be non-negative")


@dataclass(frozen=True)
class NormReport:
    value: float
    divergent_at: tuple = ()

    @property
    def finite(self) -> bool:
        return not self.divergent_at


def _check_measure(measure):
    if not isinstance(measure, (EggSigma, EggOmegaP, EggNuTau)):
        raise InvalidInputError(f"{type(measure).__name__} is not an egg boundary measure")


def _constant_density(p, measure):
    # for p == 1 every egg measure is a constant multiple of ds dtheta1 dtheta2
    return p == 1 or isinstance(measure, EggOmegaP)


def _regular(p, measure, s):
    s = np.clip(s, 1e-300, 1 - 1e-16)
    return egg_density_regular_part(p, measure, s, 1 - s)


@lru_cache(maxsize=65536)
def _radial_quad(p, measure, x, y):
    val, _ = integrate.quad(
        lambda s: _regular(p, measure, s), 0.0, 1.0,
        weight="alg", wvar=(x, y), epsabs=1e-13, epsrel=1e-12, limit=200,
    )
    return val


def radial_integral(p: int, measure: MeasureTag, j: float, l: float, method: str = "auto") -> NormReport:
    """``int_0^1 s^{j/p} (1-s)^{l/p} density(s) ds`` with divergence detection.

    ``method`` is ``"closed"`` (beta function; constant densities only),
    ``"quadrature"`` (adaptive QAWS with the endpoint powers as exact weights)
    or ``"auto"``.
    """
    _check_measure(measure)
    e = egg_density_exponent(p, measure)
    x = Fraction(j, p) + e if isinstance(j, int) else j / p + float(e)
    y = Fraction(l, p) + e if isinstance(l, int) else l / p + float(e)
    bad = tuple(name for name, ex in (("s=0", x), ("s=1", y)) if ex <= -1)
    if bad:
        return NormReport(math.inf, bad)
    if method == "auto":
        method = "closed" if _constant_density(p, measure) else "quadrature"
    if method == "closed":
        if not _constant_density(p, measure):
            raise InvalidInputError("closed form needs a constant density")
        c = float(egg_density(p, measure, 0.5))
        return NormReport(c * beta(float(x) + 1, float(y) + 1))
    if method != "quadrature":
        raise InvalidInputError(f"unknown method {method!r}")
    return NormReport(_radial_quad(p, measure, float(x), float(y)))


def monomial_norm_report(p: int, measure: MeasureTag, idx: MonomialIndex, method: str = "auto") -> NormReport:
    r = radial_integral(p, measure, idx.j, idx.l, method)
    return NormReport(FOUR_PI_SQ * r.value, r.divergent_at)


def monomial_norm(p: int, measure: MeasureTag, idx: MonomialIndex, method: str = "auto") -> float:
    """Squared ``L^2(nu)`` norm of ``z1^j z2^l`` on the egg boundary; ``inf`` when divergent.

    Under the Monge-Ampere measure this is ``4 pi^2 beta(j/p + 1, l/p + 1)``.
    Use :func:`monomial_norm_report` to see which endpoint diverges.
    """
    return monomial_norm_report(p, measure, idx, method).value


# --------------------------------------------------------------------------
# membership of z2^{-k}


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    exponent: Fraction  # integrand exponent at s = 1
    bound: Fraction  # member iff k < bound
    probe_member: bool
    probe_ratio: float

    @property
    def consistent(self) -> bool:
        return self.member == self.probe_member

    def __bool__(self):
        return self.member


def membership_bound(p: int, measure: MeasureTag) -> Fraction:
    """``z2^{-k}`` is square integrable iff ``k`` is below this value (``p (1 - tau) + tau``)."""
    _check_measure(measure)
    return p * (1 + egg_density_exponent(p, measure))


def _tail_integral(p, measure, k, eps):
    # int_eps^{1/2} u^{-k/p} density(1 - u) du, substituted u = e^v
    def f(v):
        u = math.exp(v)
        return u ** (1 - k / p) * float(egg_density(p, measure, 1 - u, u))

    val, _ = integrate.quad(f, math.log(eps), math.log(0.5), epsabs=0, epsrel=1e-10, limit=400)
    return val


def membership_test(p: int, measure: MeasureTag, k: int) -> MembershipResult:
    """Decide ``z2^{-k} in L^2(b E_p, nu)``.

    The analytic answer compares the integrand exponent at ``s = 1`` with
    ``-1``.  It is cross-checked by truncated integrals over
    ``[eps, 1/2]`` in ``u = 1 - s``: the increments over
    ``eps = 1e-4 -> 1e-8 -> 1e-12`` shrink when the integral converges and
    stay level or grow when it diverges.
    """
    if k < 0:
        raise InvalidInputError("k must be non-negative")
    bound = membership_bound(p, measure)
    exponent = -Fraction(k, p) + egg_density_exponent(p, measure)
    j4, j8, j12 = (_tail_integral(p, measure, k, e) for e in (1e-4, 1e-8, 1e-12))
    ratio = (j12 - j8) / (j8 - j4)
    return MembershipResult(k < bound, exponent, bound, ratio < 0.5, float(ratio))


# --------------------------------------------------------------------------
# series presets and divergence probes


@dataclass(frozen=True)
class StrictContainment:
    """``sum_{m,n>=1} beta(m+1, n+1)^{-1/2} / (m n) * z1^{mp} z2^{np}``; truncation ``T`` keeps ``m, n <= T``."""

    p: int

    def terms(self, T: int):
        m, n = np.meshgrid(np.arange(1, T + 1), np.arange(1, T + 1), indexing="ij")
        m, n = m.ravel(), n.ravel()
        log_c = -0.5 * betaln(m + 1.0, n + 1.0) - np.log(m * n * 1.0)
        order = np.maximum(m, n)
        return log_c, self.p * m, self.p * n, order


@dataclass(frozen=True)
class StabilizationF:
    """``f = sum_{m>=0} (m+1)^{-k/2p} z1^{mp}``; truncation ``T`` keeps ``m < T``."""

    p: int
    k: int

    def __post_init__(self):
        if not 0 <= self.k:
            raise InvalidInputError("k must be non-negative")

    def terms(self, T: int):
        m = np.arange(T)
        log_c = -(self.k / (2 * self.p)) * np.log(m + 1.0)
        return log_c, self.p * m, np.zeros_like(m), m + 1


@dataclass(frozen=True)
class StabilizationH:
    """``h = z2^{-(k-1)} f`` with ``f`` from :class:`StabilizationF`; requires ``1 <= k < p``."""

    p: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k < self.p:
            raise InvalidInputError(f"StabilizationH needs 1 <= k < p, got k={self.k}, p={self.p}")

    def terms(self, T: int):
        log_c, j, _, order = StabilizationF(self.p, self.k).terms(T)
        return log_c, j, np.full_like(j, -(self.k - 1)), order


SeriesPreset = Union[StrictContainment, StabilizationF, StabilizationH]


def _term_norms(preset, measure, T, ell_shift):
    log_c, j, l, order = preset.terms(T)
    l = l + ell_shift
    p = preset.p
    if _constant_density(p, measure):
        x, y = j / p, l / p  # constant density has no endpoint exponent
        if np.any(x <= -1) or np.any(y <= -1):
            return np.full(len(j), math.inf), order
        c = float(egg_density(p, measure, 0.5))
        vals = FOUR_PI_SQ * c * np.exp(2 * log_c + betaln(x + 1, y + 1))
        return vals, order
    vals = np.array([
        math.exp(2 * lc) * monomial_norm(p, measure, MonomialIndex(int(a), int(b)))
        for lc, a, b in zip(log_c, j, l)
    ])
    return vals, order


@dataclass
class DivergenceTable:
    truncations: list
    partial_sums: list
    slope: float
    log_growth: float
    classification: str
    harmonic_like: bool = False
    rows: list = field(default_factory=list)


SLOPE_BAND = 0.05


def classify_slope(slope: float) -> str:
    if not np.isfinite(slope):
        return "divergent"
    if slope < -1 - SLOPE_BAND:
        return "convergent"
    if slope > -1 + SLOPE_BAND:
        return "divergent"
    return "inconclusive"


def divergence_probe(preset: SeriesPreset, measure: MeasureTag, truncations: Sequence[int], ell_shift: int = 0) -> DivergenceTable:
    """Partial squared norms of a preset series at increasing truncations.

    The classification fits a log-log slope to the mean term size inside
    each truncation block, ``(S(T_{i+1}) - S(T_i)) / (T_{i+1} - T_i)``:
    below ``-1 - 0.05`` is convergent, above ``-1 + 0.05`` divergent and the
    band in between (harmonic-type growth) is reported as inconclusive.
    ``ell_shift`` multiplies the series by ``z2^{ell_shift}``.
    """
    _check_measure(measure)
    T = [int(t) for t in truncations]
    if len(T) < 3 or any(b <= a for a, b in zip(T, T[1:])):
        raise InvalidInputError("need at least three increasing truncations")
    vals, order = _term_norms(preset, measure, T[-1], ell_shift)
    sums = [float(np.sum(vals[order <= t])) for t in T]
    rows = [(t, s) for t, s in zip(T, sums)]
    if not all(np.isfinite(sums)):
        return DivergenceTable(T, sums, math.inf, math.inf, "divergent", False, rows)
    inc = np.diff(sums) / np.diff(T)
    if np.any(inc <= 0):
        slope = -math.inf
    else:
        slope = float(np.polyfit(np.log(T[:-1]), np.log(inc), 1)[0])
    half = len(T) // 2
    log_growth = float(np.polyfit(np.log(T[half:]), sums[half:], 1)[0])
    steps = np.diff(sums[half:])
    harmonic = bool(
        abs(slope + 1) <= SLOPE_BAND and np.all(steps > 0)
        and np.ptp(steps / np.diff(np.log(T[half:]))) < 0.1 * np.mean(steps / np.diff(np.log(T[half:])))
    )
    return DivergenceTable(T, sums, slope, log_growth, classify_slope(slope), harmonic, rows)
