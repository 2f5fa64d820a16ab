"""Finite Fourier/Laurent coefficient windows on the circle and the 2-torus.

Samples live on equispaced angles ``theta_t = 2*pi*t/N``.  Coefficients are
stored as offset arrays so negative frequencies (Laurent windows) need no
special handling.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidInputError, PreconditionError


def _frozen(a, ndim):
    arr = np.array(a, dtype=complex)
    if arr.ndim != ndim:
        raise InvalidInputError(f"expected a {ndim}-d coefficient array, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidInputError("coefficient array is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("coefficients must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CircleCoefficients:
    """Laurent/Fourier window; ``coeffs[t]`` is the coefficient of index ``min_index + t``."""

    min_index: int
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "min_index", int(self.min_index))
        object.__setattr__(self, "coeffs", _frozen(self.coeffs, 1))

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.min_index, self.min_index + len(self.coeffs))

    @property
    def max_abs_index(self) -> int:
        return max(abs(self.min_index), abs(self.min_index + len(self.coeffs) - 1))

    def coefficient(self, j: int) -> complex:
        t = j - self.min_index
        if 0 <= t < len(self.coeffs):
            return complex(self.coeffs[t])
        return 0j

    def with_coeffs(self, coeffs) -> "CircleCoefficients":
        return CircleCoefficients(self.min_index, coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, CircleCoefficients)
            and self.min_index == other.min_index
            and np.array_equal(self.coeffs, other.coeffs)
        )


@dataclass(frozen=True, eq=False)
class TorusCoefficients:
    """Window ``[j_min, j_min+rows) x [l_min, l_min+cols)`` of torus coefficients.

    ``coeffs[a, b]`` multiplies ``exp(i*((j_min+a)*theta1 + (l_min+b)*theta2))``.
    """

    j_min: int
    l_min: int
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "j_min", int(self.j_min))
        object.__setattr__(self, "l_min", int(self.l_min))
        object.__setattr__(self, "coeffs", _frozen(self.coeffs, 2))

    @property
    def window(self) -> tuple[int, int, int, int]:
        r, c = self.coeffs.shape
        return (self.j_min, self.j_min + r - 1, self.l_min, self.l_min + c - 1)

    @property
    def j_indices(self) -> np.ndarray:
        return np.arange(self.j_min, self.j_min + self.coeffs.shape[0])

    @property
    def l_indices(self) -> np.ndarray:
        return np.arange(self.l_min, self.l_min + self.coeffs.shape[1])

    @property
    def max_abs_index(self) -> int:
        j0, j1, l0, l1 = self.window
        return max(abs(j0), abs(j1), abs(l0), abs(l1))

    def coefficient(self, j: int, l: int) -> complex:
        a, b = j - self.j_min, l - self.l_min
        if 0 <= a < self.coeffs.shape[0] and 0 <= b < self.coeffs.shape[1]:
            return complex(self.coeffs[a, b])
        return 0j

    def with_coeffs(self, coeffs) -> "TorusCoefficients":
        return TorusCoefficients(self.j_min, self.l_min, coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, TorusCoefficients)
            and (self.j_min, self.l_min) == (other.j_min, other.l_min)
            and np.array_equal(self.coeffs, other.coeffs)
        )


Coefficients = Union[CircleCoefficients, TorusCoefficients]


@dataclass(frozen=True, eq=False)
class GridSamples:
    """Samples at ``theta_t = 2*pi*t/N``; shape ``(N,)`` on the circle, ``(N, N)`` on the torus.

    On the torus axis 0 runs over ``theta1`` and axis 1 over ``theta2``.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=complex)
        if arr.size == 0:
            raise InvalidInputError("empty sample array")
        if arr.ndim not in (1, 2) or (arr.ndim == 2 and arr.shape[0] != arr.shape[1]):
            raise InvalidInputError(f"samples must have shape (N,) or (N, N), got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def dims(self) -> int:
        return self.values.ndim

    @property
    def N(self) -> int:
        return self.values.shape[0]


def grid_angles(N: int) -> np.ndarray:
    return 2 * np.pi * np.arange(N) / N


def analyze(samples: GridSamples) -> Coefficients:
    """Discrete Fourier analysis of equispaced samples.

    Frequencies are returned on the centred window
    ``[-(N//2), ceil(N/2) - 1]`` in each dimension.
    """
    if not isinstance(samples, GridSamples):
        samples = GridSamples(samples)
    N = samples.N
    lo = -(N // 2)
    if samples.dims == 1:
        c = np.fft.fftshift(np.fft.fft(samples.values)) / N
        return CircleCoefficients(lo, c)
    c = np.fft.fftshift(np.fft.fft2(samples.values)) / N**2
    return TorusCoefficients(lo, lo, c)


def _alias_guard(coeffs: Coefficients, N: int):
    # The centred window produced by analyze() at this N maps one-to-one onto
    # residues mod N, so it is accepted even though it carries -N/2 for even N.
    lo, hi = -(N // 2), (N + 1) // 2 - 1
    if isinstance(coeffs, CircleCoefficients):
        spans = [(coeffs.min_index, coeffs.min_index + len(coeffs.coeffs) - 1)]
    else:
        j0, j1, l0, l1 = coeffs.window
        spans = [(j0, j1), (l0, l1)]
    if all(lo <= a and b <= hi for a, b in spans):
        return
    need = 2 * coeffs.max_abs_index + 1
    if N < need:
        raise PreconditionError(
            f"grid size N={N} aliases the coefficient window; need N >= {need}"
        )


def synthesize(coeffs: Coefficients, grid_size: int) -> GridSamples:
    """Evaluate the trigonometric polynomial at ``grid_size`` equispaced nodes per circle."""
    N = int(grid_size)
    _alias_guard(coeffs, N)
    if isinstance(coeffs, CircleCoefficients):
        buf = np.zeros(N, dtype=complex)
        buf[coeffs.indices % N] = coeffs.coeffs
        return GridSamples(np.fft.ifft(buf) * N)
    buf = np.zeros((N, N), dtype=complex)
    buf[np.ix_(coeffs.j_indices % N, coeffs.l_indices % N)] = coeffs.coeffs
    return GridSamples(np.fft.ifft2(buf) * N**2)


def l2_norm(coeffs: Coefficients, measure_scale: float = 1.0) -> float:
    """``measure_scale * sqrt(sum |a|^2)``.

    Use ``sqrt(2*pi)`` for arc length on the unit circle and ``2*pi`` for the
    product measure on the torus.
    """
    return float(measure_scale * np.sqrt(np.sum(np.abs(coeffs.coeffs) ** 2)))


def evaluate(coeffs: Coefficients, z) -> complex:
    """Sum the Laurent series at an interior point (``z`` complex, or ``(z1, z2)``)."""
    if isinstance(coeffs, CircleCoefficients):
        z = complex(z)
        if z == 0 and coeffs.min_index < 0:
            raise InvalidInputError("negative powers cannot be evaluated at 0")
        return complex(np.sum(coeffs.coeffs * np.complex128(z) ** coeffs.indices))
    z1, z2 = (complex(v) for v in z)
    p1 = np.complex128(z1) ** coeffs.j_indices
    p2 = np.complex128(z2) ** coeffs.l_indices
    return complex(p1 @ coeffs.coeffs @ p2)
