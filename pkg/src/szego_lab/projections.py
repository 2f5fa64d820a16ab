"""Szego projections as 0/1 Fourier multipliers, and kernel-quadrature reproduction."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .domains import TORUS, DomainSpec, boundary_grid, check_interior
from .errors import InvalidInputError
from .kernels import szego
from .series import CircleCoefficients, GridSamples, TorusCoefficients, l2_norm

FAMILIES = ("punctured_disk", "dxdstar", "hartogs")


@dataclass(frozen=True)
class MultiplierSpec:
    """Indicator of the frequencies admitted by a Hardy space.

    ``literal_max=True`` switches to the reading in which a frequency is
    excluded only when *both* index conditions fail (an "or" instead of an
    "and"); it is kept for comparison runs and is not a projection onto a
    space of boundary values of holomorphic functions.
    """

    family: str
    k: int = 0
    m: int = 1
    n: int = 1
    literal_max: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInputError(f"unknown multiplier family {self.family!r}")
        if self.k < 0 or self.m < 1 or self.n < 1:
            raise InvalidInputError("need k >= 0 and m, n >= 1")

    @classmethod
    def for_domain(cls, spec: DomainSpec) -> "MultiplierSpec":
        from .domains import Disk, Hartogs, ProductDxDstar, PuncturedDisk

        if isinstance(spec, Disk):
            return cls("punctured_disk", 0)
        if isinstance(spec, PuncturedDisk):
            if len(spec.punctures) != 1 or spec.punctures[0] != 0:
                raise InvalidInputError("only the disk punctured at 0 has a Fourier multiplier projection")
            return cls("punctured_disk", spec.orders[0])
        if isinstance(spec, ProductDxDstar):
            return cls("dxdstar", spec.k)
        if isinstance(spec, Hartogs):
            return cls("hartogs", spec.k, spec.m, spec.n)
        raise InvalidInputError(f"no multiplier projection for {spec!r}")

    def indicator(self, j, l=None):
        j = np.asarray(j)
        if self.family == "punctured_disk":
            return (j >= -self.k).astype(int)
        if l is None:
            raise InvalidInputError(f"{self.family} multipliers act on the torus; pass (j, l)")
        l = np.asarray(l)
        first = j >= 0
        if self.family == "dxdstar":
            second = l >= -self.k
        else:
            second = self.n * j + self.m * l + self.m * self.k >= 0
        keep = (first | second) if self.literal_max else (first & second)
        return keep.astype(int)


def multiplier(family: Union[MultiplierSpec, str], j: int, l: int = None, *, k: int = 0, m: int = 1, n: int = 1) -> int:
    """0/1 multiplier value at frequency ``j`` (circle) or ``(j, l)`` (torus)."""
    spec = family if isinstance(family, MultiplierSpec) else MultiplierSpec(family, k, m, n)
    return int(spec.indicator(j, l))


def _mask(coeffs, spec: MultiplierSpec):
    if isinstance(coeffs, CircleCoefficients):
        if spec.family != "punctured_disk":
            raise InvalidInputError("circle coefficients need the punctured_disk family")
        return spec.indicator(coeffs.indices)
    if spec.family == "punctured_disk":
        raise InvalidInputError("torus coefficients need a torus multiplier family")
    jj, ll = np.meshgrid(coeffs.j_indices, coeffs.l_indices, indexing="ij")
    return spec.indicator(jj, ll)


def project(coeffs, spec: MultiplierSpec):
    """Multiply coefficients entrywise by the multiplier; the window is unchanged."""
    return coeffs.with_coeffs(coeffs.coeffs * _mask(coeffs, spec))


def membership_defect(coeffs, spec: MultiplierSpec, measure_scale: float = 1.0) -> float:
    """L^2 distance from ``coeffs`` to the Hardy subspace, ``||(I - P) coeffs||``."""
    rest = coeffs.with_coeffs(coeffs.coeffs * (1 - _mask(coeffs, spec)))
    return l2_norm(rest, measure_scale)


def inner(x, y) -> complex:
    """Coefficient-space inner product ``sum x conj(y)`` (windows must match)."""
    if x.coeffs.shape != y.coeffs.shape:
        raise InvalidInputError("coefficient windows differ")
    return complex(np.sum(x.coeffs * np.conj(y.coeffs)))


def hartogs_pullback(coeffs: TorusCoefficients, m: int, n: int) -> TorusCoefficients:
    """Fourier form of ``f -> f o Theta`` with ``Theta(z1, z2) = (z1^n z2^n, z2^m)``.

    Frequency ``(j, l)`` moves to ``(n j, n j + m l)``; the map is injective,
    so it is an isometry of coefficient sequences.
    """
    jj, ll = np.meshgrid(coeffs.j_indices, coeffs.l_indices, indexing="ij")
    nj, nl = n * jj, n * jj + m * ll
    j0, l0 = int(nj.min()), int(nl.min())
    out = np.zeros((int(nj.max()) - j0 + 1, int(nl.max()) - l0 + 1), dtype=complex)
    out[nj - j0, nl - l0] = coeffs.coeffs
    return TorusCoefficients(j0, l0, out)


def admissible_exponents(spec: DomainSpec, count: int = 10, span: int = 4) -> list:
    """First ``count`` frequencies admitted by the multiplier of ``spec``, smallest first.

    Circle domains return integers ``j``; torus domains return ``(j, l)`` pairs.
    Ties are broken lexicographically, so the list is deterministic.
    """
    ms = MultiplierSpec.for_domain(spec)
    if ms.family == "punctured_disk":
        cand = [j for j in range(-ms.k - span, span * count) if ms.indicator(j)]
        cand.sort(key=lambda j: (abs(j), j))
        return cand[:count]
    rng = range(-span * (ms.k + 2) * ms.n, span * count)
    cand = [(j, l) for j in range(0, span * count) for l in rng if ms.indicator(j, l)]
    cand.sort(key=lambda t: (abs(t[0]) + abs(t[1]), t))
    return cand[:count]


def interior_points(spec: DomainSpec, count: int = 5) -> list:
    """Deterministic interior sample (golden-angle phases, no RNG).

    Torus points keep ``0.3 <= |z2| <= 0.8``; on Hartogs domains ``|z1|^m`` is
    a fraction between 0.2 and 0.6 of ``|z2|^n``.
    """
    from .domains import Hartogs

    g = np.pi * (3 - np.sqrt(5))
    t = (np.arange(count) + 0.5) / count
    if isinstance(spec, TORUS):
        r2 = 0.3 + 0.5 * t
        frac = 0.2 + 0.4 * t[::-1]
        if isinstance(spec, Hartogs):
            r1 = (frac * r2**spec.n) ** (1.0 / spec.m)
        else:
            r1 = frac
        ph = g * np.arange(count)
        return [(complex(a * np.exp(1j * f)), complex(b * np.exp(1j * (2 * f + 1.0)))) for a, b, f in zip(r1, r2, ph)]
    r = 0.3 + 0.6 * t
    return [complex(v) for v in r * np.exp(1j * (g * np.arange(count) + 0.3))]


def reproduce(spec: DomainSpec, boundary_values: GridSamples, z) -> complex:
    """Quadrature of ``F(w) * s(z, w)`` over the boundary grid matching ``boundary_values``.

    The sum is a single numpy reduction (pairwise summation), so the result
    does not depend on threading or evaluation order.
    """
    if not isinstance(boundary_values, GridSamples):
        boundary_values = GridSamples(boundary_values)
    torus = isinstance(spec, TORUS)
    if boundary_values.dims != (2 if torus else 1):
        raise InvalidInputError("sample dimension does not match the domain")
    check_interior(spec, z)
    grid = boundary_grid(spec, boundary_values.N)
    w = grid.points if torus else grid.preimages
    k = np.asarray(szego(spec, z, w))
    return complex(np.sum(grid.weights * boundary_values.values.ravel() * k))
