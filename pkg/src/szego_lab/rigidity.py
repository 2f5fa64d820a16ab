"""Kerzman-Stein comparison of the Cauchy k-kernel with the Szego kernel.

On a punctured simply connected domain the two kernels reproduce the same
functions, but they coincide only for the disk punctured at its centre.  The
defects below measure how far apart they are on a fixed sample.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .domains import ConformalMap, PUNCTURE_CLEARANCE, spiral_points
from .errors import InvalidInputError
from .kernels import cauchy_k, szego_punctured_sc

# Kernels grow like |z - q|^{-k} near a puncture, so sample points stay an
# annulus away from the centre to keep the absolute defect at rounding level.
SAMPLE_R_MIN = 0.3
SAMPLE_CLEARANCE = 0.05


@dataclass(frozen=True)
class DefectReport:
    """Kernel defects on ``len(sample_z)`` interior points by ``N`` boundary nodes.

    ``sup_defect`` is ``max |C_k(z, w) - s_k(z, w)|`` over interior ``z`` and
    boundary ``w``.  ``antisymmetry_defect`` is ``max |C_k(z, w) - conj C_k(w, z)|``
    over distinct boundary nodes, which vanishes when the Cauchy kernel is
    self-adjoint.
    """

    punctures: tuple
    orders: tuple
    map_name: str
    N: int
    n_samples: int
    sup_defect: float
    antisymmetry_defect: float
    extra: dict = field(default_factory=dict)


def default_samples(punctures: Sequence[complex], count: int = 32, r_max: float = 0.9) -> np.ndarray:
    """Spiral points in ``0.3 <= |z| < r_max``, minus any too close to a puncture."""
    pts = spiral_points(count, r_max, r_min=SAMPLE_R_MIN)
    for q in punctures:
        pts = pts[np.abs(pts - q) > SAMPLE_CLEARANCE]
    return pts


def _boundary(map: ConformalMap, N: int):
    w = np.exp(2j * np.pi * np.arange(N) / N)
    d = np.asarray(map.derivative(w), dtype=complex)
    return w, np.asarray(map.forward(w), dtype=complex), 1j * w * d / np.abs(d)


def ks_defect(
    punctures: Sequence[complex],
    orders: Sequence[int],
    map: Optional[ConformalMap] = None,
    N: int = 256,
    sample_z=None,
) -> DefectReport:
    """Compare both kernels on ``map(D)`` punctured at ``map(q)``.

    ``punctures`` and ``sample_z`` are preimages in the unit disk; the
    identity map gives the punctured unit disk itself.
    """
    map = map or ConformalMap.identity()
    punctures = tuple(complex(q) for q in punctures)
    orders = tuple(int(k) for k in orders)
    if len(punctures) != len(orders):
        raise InvalidInputError("one order per puncture is required")
    if any(abs(q) >= 1 for q in punctures):
        raise InvalidInputError("punctures must lie inside the unit disk")
    if N < 8:
        raise InvalidInputError("N must be at least 8")
    zs = default_samples(punctures) if sample_z is None else np.atleast_1d(np.asarray(sample_z, dtype=complex))
    if np.any(np.abs(zs) >= 1):
        raise InvalidInputError("sample points must lie inside the unit disk")
    for q in punctures:
        if np.any(np.abs(zs - q) < PUNCTURE_CLEARANCE):
            raise InvalidInputError(f"a sample point sits on the puncture {q}")

    pre, img, tan = _boundary(map, N)
    img_punct = [complex(np.asarray(map.forward(np.asarray(q)))) for q in punctures]
    sup = 0.0
    for z in zs:
        c = np.asarray(cauchy_k(img_punct, orders, complex(np.asarray(map.forward(z))), img, tan))
        s = np.asarray(szego_punctured_sc(map, punctures, orders, z, pre))
        sup = max(sup, float(np.max(np.abs(c - s))))

    # C(b_i, b_j) on the boundary, off the diagonal
    zi = img[:, None]
    zj = img[None, :]
    off = ~np.eye(N, dtype=bool)
    diff = np.where(off, zj - zi, 1.0)
    C = tan[None, :] / (2j * np.pi * diff)
    for q, k in zip(img_punct, orders):
        if k:
            C = C * ((zj - q) / (zi - q)) ** k
    A = C - np.conj(C.T)
    anti = float(np.max(np.abs(A[off])))
    return DefectReport(punctures, orders, map.name, N, len(zs), sup, anti)


def rigidity_scan(q_values: Sequence[complex], k: int, N: int = 256, sample_count: int = 32) -> list[DefectReport]:
    """Defect of the disk punctured once at each ``q`` with pole order ``k``."""
    out = []
    for q in q_values:
        if abs(q) >= 1:
            raise InvalidInputError(f"|q| must be < 1, got {q}")
        zs = default_samples([q], sample_count)
        out.append(ks_defect([q], [k], None, N, zs))
    return out
