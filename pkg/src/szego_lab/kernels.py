"""Closed-form kernels and the brute-force oracles used to validate them.

All kernels are rational expressions in the products ``z_j * conj(w_j)``;
none is built from a series.  Integer powers are formed by repeated
multiplication so no complex logarithm (and no branch choice) is involved.

Kernels accept a scalar interior point ``z`` (complex, or ``(z1, z2)``) and a
point or array of points ``w``; torus points are arrays whose last axis has
length 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath
import numpy as np

from .domains import (
    ConformalMap,
    Disk,
    DomainSpec,
    Hartogs,
    ProductDxDstar,
    PuncturedDisk,
    SimplyConnectedPunctured,
    check_interior,
)
from .errors import DomainError, InvalidInputError, PreconditionError

POLE_TOL = 1e-9


def _ipow(x, k: int):
    """``x**k`` for integer ``k`` (possibly negative) by binary powering."""
    x = np.asarray(x, dtype=complex)
    if k < 0:
        return 1.0 / _ipow(x, -k)
    out = np.ones_like(x)
    base = x
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


def _guard(x, what: str):
    if np.any(np.abs(x) < POLE_TOL):
        raise DomainError(f"evaluation within {POLE_TOL} of the pole locus {what}")
    return x


def _pair(x):
    x = np.asarray(x, dtype=complex)
    if x.shape[-1:] != (2,):
        raise InvalidInputError(f"expected points in C^2 (last axis of length 2), got shape {x.shape}")
    return x[..., 0], x[..., 1]


def _scalar_planar(z):
    if np.ndim(z) != 0:
        raise InvalidInputError(f"expected a planar point, got shape {np.shape(z)}")
    return complex(z)


def _out(x):
    return complex(x) if np.ndim(x) == 0 else x


# --------------------------------------------------------------------------
# model kernels


def szego_disk(z, w):
    """``1 / (2 pi (1 - z conj(w)))``."""
    zw = np.asarray(z) * np.conj(w)
    return _out(1.0 / (2 * np.pi * _guard(1 - zw, "z conj(w) = 1")))


def mobius(q: complex, zeta):
    """Disk automorphism ``(zeta - q) / (1 - conj(q) zeta)``."""
    q = complex(q)
    if not abs(q) < 1:
        raise DomainError(f"Mobius parameter must satisfy |q| < 1, got {q}")
    zeta = np.asarray(zeta, dtype=complex)
    den = _guard(1 - np.conj(q) * zeta, "zeta = 1/conj(q)")
    return _out((zeta - q) / den)


def szego_punctured_disk(punctures: Sequence[complex], orders: Sequence[int], z, w):
    """Szego kernel of the unit disk punctured at ``punctures`` with pole orders ``orders``.

    Written in the Hermitian form
    ``prod M_q(z)^{-k} * s(z, w) * conj(M_q(w))^{-k}``; for a single puncture
    at 0 this is ``1 / (2 pi (z conj w)^k (1 - z conj w))``.
    """
    val = np.asarray(szego_disk(z, w), dtype=complex)
    for q, k in zip(punctures, orders):
        if k == 0:
            continue
        mz = _guard(mobius(q, z), f"z = {q}")
        mw = _guard(np.conj(mobius(q, w)), f"w = {q}")
        val = val * _ipow(mz * mw, -k)
    return _out(val)


def szego_dxdstar(k: int, z, w):
    z1, z2 = _pair(z)
    w1, w2 = _pair(w)
    a = z1 * np.conj(w1)
    b = _guard(z2 * np.conj(w2), "z2 conj(w2) = 0")
    den = _ipow(b, k) * _guard(1 - b, "z2 conj(w2) = 1") * _guard(1 - a, "z1 conj(w1) = 1")
    return _out(1.0 / (4 * np.pi**2 * den))


def szego_hartogs(k: int, z, w):
    """Szego kernel of the standard Hartogs triangle ``|z1| < |z2| < 1``."""
    z1, z2 = _pair(z)
    w1, w2 = _pair(w)
    a = z1 * np.conj(w1)
    b = _guard(z2 * np.conj(w2), "z2 conj(w2) = 0")
    num = _ipow(b, -(k - 1))
    den = _guard(b - a, "z2 conj(w2) = z1 conj(w1)") * _guard(1 - b, "z2 conj(w2) = 1")
    return _out(num / (4 * np.pi**2 * den))


def pmn_poly(m: int, n: int, a, b):
    """``sum_{r=0}^{m-1} a^r b^{n - floor(n r / m)}``."""
    if m < 1 or n < 1:
        raise InvalidInputError("m and n must be positive")
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    total = np.zeros(np.broadcast(a, b).shape, dtype=complex)
    for r in range(m):
        total = total + _ipow(a, r) * _ipow(b, n - (n * r) // m)
    return _out(total)


def szego_power_hartogs(m: int, n: int, k: int, z, w):
    """Szego kernel of ``|z1|^m < |z2|^n < 1`` with pole order ``k`` along ``z2 = 0``."""
    z1, z2 = _pair(z)
    w1, w2 = _pair(w)
    a = z1 * np.conj(w1)
    b = _guard(z2 * np.conj(w2), "z2 conj(w2) = 0")
    num = _ipow(b, -k) * pmn_poly(m, n, a, b)
    den = _guard(_ipow(b, n) - _ipow(a, m), "(z2 conj w2)^n = (z1 conj w1)^m")
    den = den * _guard(1 - b, "z2 conj(w2) = 1")
    return _out(num / (4 * np.pi**2 * den))


def szego_punctured_sc(map: ConformalMap, punctures, orders, z, w):
    """Szego kernel of ``map(D)`` punctured at ``map(q)``, evaluated at preimages ``z`` (interior) and ``w``.

    Pulls the punctured-disk kernel back through the transformation law
    ``s(mu(z), mu(w)) = s_D(z, w) / (sqrt(mu'(z)) conj(sqrt(mu'(w))))``,
    which is the ``sqrt(beta')`` form for ``beta = mu^{-1}``.
    """
    base = np.asarray(szego_punctured_disk(punctures, orders, z, w), dtype=complex)
    rz = complex(np.asarray(map.sqrt_derivative(np.asarray(z, dtype=complex))))
    rw = np.asarray(map.sqrt_derivative(np.asarray(w, dtype=complex)), dtype=complex)
    return _out(base / (rz * np.conj(rw)))


def szego_punctured_sc_boundary_form(map: ConformalMap, punctures, orders, z, w):
    """Same kernel written as ``phi(w)^k / phi(z)^k * s(z, w)`` with ``phi = M_q``.

    Agrees with :func:`szego_punctured_sc` for ``|w| = 1`` only, since there
    ``M_q(w) = 1 / conj(M_q(w))``.
    """
    base = np.asarray(szego_disk(z, w), dtype=complex)
    for q, k in zip(punctures, orders):
        if k:
            mz = _guard(mobius(q, z), f"z = {q}")
            base = base * _ipow(np.asarray(mobius(q, w)) / mz, k)
    rz = complex(np.asarray(map.sqrt_derivative(np.asarray(z, dtype=complex))))
    rw = np.asarray(map.sqrt_derivative(np.asarray(w, dtype=complex)), dtype=complex)
    return _out(base / (rz * np.conj(rw)))


def cauchy_k(punctures, orders, z, w, tangent):
    """Cauchy k-kernel against arc length.

    ``(1 / 2 pi i) * prod ((w - p)/(z - p))^k * tangent / (w - z)`` where
    ``tangent`` is the unit tangent of the boundary at ``w``.
    """
    z = complex(z)
    w = np.asarray(w, dtype=complex)
    val = np.asarray(tangent, dtype=complex) / (2j * np.pi * _guard(w - z, "w = z"))
    for p, k in zip(punctures, orders):
        if k == 0:
            continue
        if abs(z - p) < 1e-6:
            raise DomainError(f"z = {z} is at the puncture {p}")
        val = val * _ipow((w - p) / (z - p), k)
    return _out(val)


def generic_ck_phi(parent_kernel: Callable, phi: Callable, k: int, z, w):
    """``phi(w)^k / phi(z)^k * parent_kernel(z, w)``."""
    pz = np.asarray(phi(z), dtype=complex)
    if np.any(np.abs(pz) < POLE_TOL):
        raise DomainError(f"phi vanishes at z = {z}")
    pw = np.asarray(phi(w), dtype=complex)
    return _out(_ipow(pw / pz, k) * np.asarray(parent_kernel(z, w)))


# --------------------------------------------------------------------------
# dispatch


def szego(spec: DomainSpec, z, w):
    """Szego kernel of the Hardy space attached to ``spec``.

    ``z`` must be interior (and clear of punctures); ``w`` is normally a
    boundary point or array of boundary points.  For
    :class:`SimplyConnectedPunctured` both are preimages in the unit disk.
    """
    check_interior(spec, z)
    if isinstance(spec, Disk):
        return szego_disk(_scalar_planar(z), w)
    if isinstance(spec, PuncturedDisk):
        return szego_punctured_disk(spec.punctures, spec.orders, _scalar_planar(z), w)
    if isinstance(spec, SimplyConnectedPunctured):
        return szego_punctured_sc(spec.map, spec.punctures, spec.orders, _scalar_planar(z), w)
    if isinstance(spec, ProductDxDstar):
        return szego_dxdstar(spec.k, z, w)
    if isinstance(spec, Hartogs):
        if spec.m == spec.n == 1:
            return szego_hartogs(spec.k, z, w)
        return szego_power_hartogs(spec.m, spec.n, spec.k, z, w)
    raise InvalidInputError(f"no closed-form Szego kernel for {spec!r}")


@dataclass(frozen=True)
class KernelEvaluator:
    """A kernel ``(z, w) -> complex`` bound to the domain it belongs to."""

    domain: DomainSpec
    func: Callable

    def __call__(self, z, w):
        return self.func(z, w)


def kernel_evaluator(spec: DomainSpec) -> KernelEvaluator:
    return KernelEvaluator(spec, lambda z, w: szego(spec, z, w))


# --------------------------------------------------------------------------
# oracles


def _mth_roots(b: complex, m: int) -> np.ndarray:
    r = abs(b) ** (1.0 / m)
    return r * np.exp(1j * (np.angle(b) + 2 * np.pi * np.arange(m)) / m)


def partial_fraction_oracle(m: int, n: int, b: complex, x: complex, y: complex) -> complex:
    """``sum_l b_l^n / ((x - b_l^n)(y - b_l))`` over the m-th roots ``b_l`` of ``b``, by enumeration.

    The sum can cancel to a small fraction of its terms, so it is accumulated
    in 30-digit arithmetic and only the result is rounded to double.
    """
    if b == 0:
        raise DomainError("b must be non-zero")
    b, x, y = complex(b), complex(x), complex(y)
    roots = _mth_roots(b, m)
    if np.any(np.abs(x - _ipow(roots, n)) < POLE_TOL * max(1.0, abs(x))) or np.any(
        np.abs(y - roots) < POLE_TOL * max(1.0, abs(y))
    ):
        raise DomainError("x or y collides with a pole b_l^n or b_l")
    with mpmath.workdps(30):
        bb, xx, yy = mpmath.mpc(b), mpmath.mpc(x), mpmath.mpc(y)
        r0 = abs(bb) ** (mpmath.mpf(1) / m)
        total = mpmath.mpc(0)
        for l in range(m):
            bl = r0 * mpmath.expj((mpmath.arg(bb) + 2 * mpmath.pi * l) / m)
            bn = bl**n
            total += bn / ((xx - bn) * (yy - bl))
        return complex(total)


def partial_fraction_coefficient(m: int, n: int, b: complex, p: int, q: int) -> complex:
    """``c_{p,q}``: ``b^{-(np+1+q)/m}`` when ``m`` divides ``np+1+q``, else 0."""
    e = n * p + 1 + q
    if e % m:
        return 0j
    return complex(_ipow(complex(b), -(e // m)))


def partial_fraction_closed_form(m: int, n: int, b: complex, x: complex, y: complex) -> complex:
    """Closed-form right-hand side ``m b^{n+1} sum c_{pq} x^p y^q / ((x^m - b^n)(y^m - b))``."""
    b, x, y = complex(b), complex(x), complex(y)
    total = 0j
    for p in range(m):
        for q in range(m):
            c = partial_fraction_coefficient(m, n, b, p, q)
            if c:
                total += c * x**p * y**q
    den = (complex(_ipow(x, m)) - complex(_ipow(b, n))) * (complex(_ipow(y, m)) - b)
    if abs(den) < POLE_TOL:
        raise DomainError("x^m = b^n or y^m = b")
    return m * complex(_ipow(b, n + 1)) * total / den


def roots_substitution_oracle(n: int, a: complex, f: Callable, N: int) -> tuple[complex, complex]:
    """Both sides of the root-substitution identity by ``N``-node trapezoid rules on ``|zeta| = 1``.

    Returns ``(sum_j oint f(zeta^n)/(zeta - a_j) dzeta, n oint f(w)/(w - a) dw)``
    where ``a_j`` runs over the n-th roots of ``a``.
    """
    a = complex(a)
    if abs(abs(a) - 1) < POLE_TOL:
        raise PreconditionError("a must lie off the unit circle")
    if N < 2:
        raise PreconditionError("need at least 2 quadrature nodes")
    zeta = np.exp(2j * np.pi * np.arange(N) / N)
    dz = 1j * zeta * (2 * np.pi / N)
    fz = np.asarray(f(_ipow(zeta, n)), dtype=complex) * np.ones(N)
    lhs = sum(np.sum(fz * dz / (zeta - aj)) for aj in _mth_roots(a, n)) if a != 0 else n * np.sum(fz * dz / zeta)
    fw = np.asarray(f(zeta), dtype=complex) * np.ones(N)
    rhs = n * np.sum(fw * dz / (zeta - a))
    return complex(lhs), complex(rhs)
