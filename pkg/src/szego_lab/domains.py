"""Model domains, boundary measures and boundary quadrature grids.

Planar domains are parametrised through the unit circle, torus-type domains
(D x D*, Hartogs triangles) through the distinguished boundary, and egg
domains ``|z1|^{2p} + |z2|^{2p} < 1`` through

    (s, theta1, theta2) -> (s^{1/2p} e^{i theta1}, (1-s)^{1/2p} e^{i theta2}).

The ``s`` direction uses a tanh-sinh (double exponential) rule, which absorbs
the algebraic endpoint singularities of the surface-area density.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import lambertw

from .errors import ConfigurationError, DomainError, InvalidInputError

PUNCTURE_CLEARANCE = 1e-6


# --------------------------------------------------------------------------
# measures


@dataclass(frozen=True)
class SigmaCircle:
    """Arc length on a planar boundary curve."""


@dataclass(frozen=True)
class SigmaTorus:
    """Product arc length on the torus ``bD x bD``."""


@dataclass(frozen=True)
class EggSigma:
    """Euclidean surface area on the egg boundary."""


@dataclass(frozen=True)
class EggOmegaP:
    """Monge-Ampere boundary measure of ``(1/2p) log(|z1|^{2p} + |z2|^{2p})``."""


@dataclass(frozen=True)
class EggNuTau:
    """``f |L|^{1-tau} sigma``; ``weight`` selects ``f == 1`` ("one") or ``f = |grad rho|^2 / 4 pi^2`` ("gradient")."""

    tau: float
    weight: str = "one"

    def __post_init__(self):
        if not 0.0 <= float(self.tau) <= 1.0:
            raise InvalidInputError(f"tau must lie in [0, 1], got {self.tau}")
        if self.weight not in ("one", "gradient"):
            raise InvalidInputError(f"unknown nu_tau weight {self.weight!r}")


MeasureTag = Union[SigmaCircle, SigmaTorus, EggSigma, EggOmegaP, EggNuTau]
EGG_MEASURES = (EggSigma, EggOmegaP, EggNuTau)


def as_fraction(x) -> Fraction:
    """Exact rational for tau-like inputs; floats such as ``2/3`` snap to the nearest small rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(float(x)).limit_denominator(10**6)


# --------------------------------------------------------------------------
# conformal maps


@dataclass(frozen=True)
class ConformalMap:
    """Map from the closed unit disk onto the closure of a planar domain.

    ``sqrt_derivative`` must be a continuous branch of the square root of the
    derivative on the closed disk.  :meth:`validate` checks this on a boundary
    grid.
    """

    forward: Callable
    derivative: Callable
    sqrt_derivative: Callable
    name: str = "custom"

    @classmethod
    def from_derivative(cls, forward, derivative, name="custom"):
        """Build the default branch: principal root continued from the value at 0."""
        d0 = complex(derivative(0.0))
        r0 = np.sqrt(d0)

        def sqrt_derivative(z):
            return r0 * np.sqrt(np.asarray(derivative(z)) / d0)

        return cls(forward, derivative, sqrt_derivative, name)

    @classmethod
    def identity(cls):
        return cls(
            lambda z: np.asarray(z, dtype=complex),
            lambda z: np.ones_like(np.asarray(z, dtype=complex)),
            lambda z: np.ones_like(np.asarray(z, dtype=complex)),
            "identity",
        )

    @classmethod
    def quadratic(cls, eps: float):
        """``z + eps z^2``; univalent on the disk for ``|eps| <= 1/2``."""
        if abs(eps) >= 0.5:
            raise ConfigurationError(f"z + eps z^2 with |eps|={abs(eps)} is not a valid map", "eps")
        return cls.from_derivative(
            lambda z: np.asarray(z) + eps * np.asarray(z) ** 2,
            lambda z: 1 + 2 * eps * np.asarray(z),
            f"quadratic({eps})",
        )

    def validate(self, n: int = 1024):
        w = np.exp(2j * np.pi * np.arange(n) / n)
        d = np.asarray(self.derivative(w), dtype=complex)
        if np.min(np.abs(d)) < 1e-12:
            raise ConfigurationError("derivative vanishes on the unit circle", "map")
        winding = np.sum(np.angle(np.roll(d, -1) / d)) / (2 * np.pi)
        if abs(winding) > 0.5:
            raise ConfigurationError(f"derivative winds {winding:.0f} times around 0", "map")
        r = np.asarray(self.sqrt_derivative(w), dtype=complex)
        if np.max(np.abs(r * r - d) / np.abs(d)) > 1e-12:
            raise ConfigurationError("sqrt_derivative**2 does not match derivative", "map")
        nxt = np.roll(r, -1)
        if np.any(np.abs(nxt - r) > np.abs(nxt + r)):
            raise ConfigurationError("sqrt_derivative branch jumps along the unit circle", "map")
        return self


# --------------------------------------------------------------------------
# domains


def _as_tuple(x, conv):
    return tuple(conv(v) for v in x)


@dataclass(frozen=True)
class Disk:
    pass


@dataclass(frozen=True)
class PuncturedDisk:
    """Unit disk minus ``punctures``; ``orders[i]`` is the allowed pole order at ``punctures[i]``."""

    punctures: tuple = (0j,)
    orders: tuple = (0,)

    def __post_init__(self):
        object.__setattr__(self, "punctures", _as_tuple(self.punctures, complex))
        object.__setattr__(self, "orders", _as_tuple(self.orders, int))
        _check_punctures(self.punctures, self.orders)


@dataclass(frozen=True)
class ProductDxDstar:
    k: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise InvalidInputError("k must be non-negative")


@dataclass(frozen=True)
class Hartogs:
    """Power-generalised Hartogs triangle ``|z1|^m < |z2|^n < 1`` with pole order ``k`` at the origin."""

    m: int = 1
    n: int = 1
    k: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidInputError("m and n must be positive")
        if math.gcd(self.m, self.n) != 1:
            raise InvalidInputError(f"gcd(m, n) must be 1, got m={self.m}, n={self.n}")
        if self.k < 0:
            raise InvalidInputError("k must be non-negative")


@dataclass(frozen=True)
class Egg:
    p: int
    measure: MeasureTag = field(default_factory=EggOmegaP)

    def __post_init__(self):
        if self.p < 1:
            raise InvalidInputError("p must be a positive integer")
        if not isinstance(self.measure, EGG_MEASURES):
            raise InvalidInputError(f"{type(self.measure).__name__} is not an egg boundary measure")


@dataclass(frozen=True)
class SimplyConnectedPunctured:
    """Image of the unit disk under ``map``, punctured at ``map(q)`` for each preimage ``q``.

    Points of this domain are always addressed through their preimages in the
    unit disk, so no inverse map is ever needed.
    """

    map: ConformalMap
    punctures: tuple = ()
    orders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "punctures", _as_tuple(self.punctures, complex))
        object.__setattr__(self, "orders", _as_tuple(self.orders, int))
        _check_punctures(self.punctures, self.orders)
        self.map.validate()


DomainSpec = Union[Disk, PuncturedDisk, ProductDxDstar, Hartogs, Egg, SimplyConnectedPunctured]
PLANAR = (Disk, PuncturedDisk, SimplyConnectedPunctured)
TORUS = (ProductDxDstar, Hartogs)


def _check_punctures(punctures, orders):
    if len(punctures) != len(orders):
        raise InvalidInputError("one order per puncture is required")
    if any(k < 0 for k in orders):
        raise InvalidInputError("orders must be non-negative")
    for i, q in enumerate(punctures):
        if abs(q) >= 1:
            raise InvalidInputError(f"puncture {q} is not inside the unit disk")
        for q2 in punctures[:i]:
            if abs(q - q2) < PUNCTURE_CLEARANCE:
                raise InvalidInputError("punctures must be pairwise distinct")


def default_measure(spec: DomainSpec) -> MeasureTag:
    if isinstance(spec, PLANAR):
        return SigmaCircle()
    if isinstance(spec, TORUS):
        return SigmaTorus()
    return spec.measure


def check_interior(spec: DomainSpec, z):
    """Raise :class:`DomainError` unless ``z`` is admissible for kernel evaluation."""
    if isinstance(spec, PLANAR):
        z = complex(z)
        if not abs(z) < 1:
            raise DomainError(f"{z} is not inside the unit disk")
        for q in getattr(spec, "punctures", ()):
            if abs(z - q) < PUNCTURE_CLEARANCE:
                raise DomainError(f"{z} is within {PUNCTURE_CLEARANCE} of the puncture {q}")
        return
    if np.ndim(z) != 1 or len(z) != 2:
        raise InvalidInputError(f"expected a point (z1, z2) in C^2, got {z!r}")
    z1, z2 = complex(z[0]), complex(z[1])
    if isinstance(spec, ProductDxDstar):
        ok = abs(z1) < 1 and PUNCTURE_CLEARANCE <= abs(z2) < 1
    elif isinstance(spec, Hartogs):
        ok = abs(z1) ** spec.m < abs(z2) ** spec.n < 1 and abs(z2) >= PUNCTURE_CLEARANCE
    else:
        ok = abs(z1) ** (2 * spec.p) + abs(z2) ** (2 * spec.p) < 1 and abs(z2) >= PUNCTURE_CLEARANCE
    if not ok:
        raise DomainError(f"({z1}, {z2}) is not an interior point of {spec}")


# --------------------------------------------------------------------------
# egg densities


def _split(s, one_minus_s):
    s = np.asarray(s, dtype=float)
    t = 1.0 - s if one_minus_s is None else np.asarray(one_minus_s, dtype=float)
    if np.any(s <= 0) or np.any(t <= 0):
        raise DomainError("egg densities are defined for 0 < s < 1 only")
    return s, t


def _q(p, s, t):
    return np.sqrt(s ** (2 - 1 / p) + t ** (2 - 1 / p))


def egg_gradient_norm(p: int, s, one_minus_s=None):
    """Euclidean norm of the real gradient of ``rho_p = (2 pi / p)(|z1|^{2p} + |z2|^{2p} - 1)`` on the boundary."""
    s, t = _split(s, one_minus_s)
    return 4 * np.pi * _q(p, s, t)


def egg_levi_factor(p: int, s, one_minus_s=None):
    """``|L| = -4 |grad rho|^{-3} det[[0, rho_zbar], [rho_z, rho_{z zbar}]]`` for ``rho_p``.

    For ``rho_p`` the bordered determinant is ``-8 pi^3 p s^a (1-s)^a`` with
    ``a = 1 - 1/p``, which gives ``p s^a (1-s)^a / (2 Q^3)``.
    """
    s, t = _split(s, one_minus_s)
    a = 1 - 1 / p
    return p * s**a * t**a / (2 * _q(p, s, t) ** 3)


def _sigma_density(p, s, t):
    a = 1 - 1 / p
    return _q(p, s, t) / (2 * p * s**a * t**a)


def egg_density(p: int, measure: MeasureTag, s, one_minus_s=None):
    """Density of the pulled-back boundary measure with respect to ``ds dtheta1 dtheta2``.

    ``one_minus_s`` may be passed to keep ``1 - s`` accurate near ``s = 1``.
    """
    s, t = _split(s, one_minus_s)
    if isinstance(measure, EggOmegaP):
        out = np.ones_like(s)
    elif isinstance(measure, EggSigma):
        out = _sigma_density(p, s, t)
    elif isinstance(measure, EggNuTau):
        tau = float(measure.tau)
        out = egg_levi_factor(p, s, t) ** (1 - tau) * _sigma_density(p, s, t)
        if measure.weight == "gradient":
            out = out * egg_gradient_norm(p, s, t) ** 2 / (4 * np.pi**2)
    else:
        raise InvalidInputError(f"{type(measure).__name__} is not an egg boundary measure")
    return out if out.ndim else float(out)


def egg_density_exponent(p: int, measure: MeasureTag) -> Fraction:
    """Exponent ``e`` with density ~ ``s^e`` at 0 and ~ ``(1-s)^e`` at 1 (symmetric in s <-> 1-s)."""
    a = 1 - Fraction(1, p)
    if isinstance(measure, EggOmegaP):
        return Fraction(0)
    if isinstance(measure, EggSigma):
        return -a
    if isinstance(measure, EggNuTau):
        return -a * as_fraction(measure.tau)
    raise InvalidInputError(f"{type(measure).__name__} is not an egg boundary measure")


def egg_density_regular_part(p: int, measure: MeasureTag, s, one_minus_s=None):
    """``density / (s (1-s))^e``: bounded, continuous and positive on [0, 1]."""
    s, t = _split(s, one_minus_s)
    q = _q(p, s, t)
    if isinstance(measure, EggOmegaP):
        out = np.ones_like(s)
    elif isinstance(measure, EggSigma):
        out = q / (2 * p)
    else:
        tau = float(measure.tau)
        out = (p / (2 * q**3)) ** (1 - tau) * q / (2 * p)
        if measure.weight == "gradient":
            out = out * 4 * q**2
    return out if out.ndim else float(out)


def stabilization_threshold(p: int, tau) -> int:
    """Level ``ceil(p(1 - tau) + tau) - 1`` at which the nu_tau filtration stabilises."""
    if p < 1:
        raise InvalidInputError("p must be a positive integer")
    tau = as_fraction(tau)
    if not 0 <= tau <= 1:
        raise InvalidInputError(f"tau must lie in [0, 1], got {tau}")
    return math.ceil(p * (1 - tau) + tau) - 1


# --------------------------------------------------------------------------
# quadrature grids


def tanh_sinh_nodes(M: int, endpoint_exponent: float = 0.0):
    """``M``-point tanh-sinh rule on (0, 1).

    Returns ``(s, 1 - s, weights)`` with ``1 - s`` computed without
    cancellation.  The truncation ``t_max`` solves
    ``t_max exp(t_max) = pi M / delta`` with ``delta = 1 + endpoint_exponent``,
    balancing truncation against discretisation error for integrands that
    behave like ``s^endpoint_exponent`` at the ends.
    """
    if M < 4:
        raise InvalidInputError("need at least 4 nodes in s")
    delta = 1.0 + float(endpoint_exponent)
    if delta <= 0:
        raise InvalidInputError("endpoint exponent must exceed -1")
    # keep min(s, 1-s) representable (about 1e-300)
    t_max = min(float(lambertw(np.pi * M / delta).real), 6.0)
    t = np.linspace(-t_max, t_max, M)
    h = t[1] - t[0]
    u = 0.5 * np.pi * np.sinh(t)
    e = np.exp(-2 * np.abs(u))
    small = e / (1 + e)  # = min(s, 1 - s)
    s = np.where(u < 0, small, 1 - small)
    one_minus_s = np.where(u < 0, 1 - small, small)
    # (pi/4) cosh t / cosh^2 u, written with exp(-2|u|) to avoid overflow
    w = h * np.pi * np.cosh(t) * e / (1 + e) ** 2
    return s, one_minus_s, w


@dataclass(frozen=True, eq=False)
class BoundaryGrid:
    """Quadrature nodes on the support of a boundary measure.

    ``nodes`` holds parameters (``theta`` for planar domains,
    ``(theta1, theta2)`` on the torus, ``(s, theta1, theta2)`` for eggs),
    ``weights`` already include the measure density, and ``points`` are the
    embedded boundary points (complex, or shape ``(n, 2)`` in C^2).
    For planar grids ``tangents`` holds the unit tangent and ``preimages`` the
    points on the unit circle.
    """

    nodes: np.ndarray
    weights: np.ndarray
    points: np.ndarray
    measure: MeasureTag
    tangents: Optional[np.ndarray] = None
    preimages: Optional[np.ndarray] = None

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    def __len__(self):
        return len(self.weights)


def boundary_grid(spec: DomainSpec, N: int, M: Optional[int] = None, measure: Optional[MeasureTag] = None) -> BoundaryGrid:
    """Boundary quadrature for ``spec``.

    ``N`` is the number of nodes per angular circle and ``M`` the number of
    tanh-sinh nodes in ``s`` (eggs only).  ``measure`` defaults to the natural
    measure of the domain; an incompatible pairing raises
    :class:`InvalidInputError`.
    """
    if N < 4:
        raise InvalidInputError("need at least 4 nodes per circle")
    natural = default_measure(spec)
    measure = natural if measure is None else measure
    theta = 2 * np.pi * np.arange(N) / N
    if isinstance(spec, PLANAR):
        if not isinstance(measure, SigmaCircle):
            raise InvalidInputError(f"{type(measure).__name__} cannot be used on a planar boundary")
        w = np.exp(1j * theta)
        if isinstance(spec, SimplyConnectedPunctured):
            d = np.asarray(spec.map.derivative(w), dtype=complex)
            pts = np.asarray(spec.map.forward(w), dtype=complex)
            speed = np.abs(d)
            tangents = 1j * w * d / speed
        else:
            pts, speed, tangents = w, np.ones(N), 1j * w
        return BoundaryGrid(theta, speed * 2 * np.pi / N, pts, measure, tangents, w)
    if isinstance(spec, TORUS):
        if not isinstance(measure, SigmaTorus):
            raise InvalidInputError(f"{type(measure).__name__} cannot be used on the torus")
        t1, t2 = np.meshgrid(theta, theta, indexing="ij")
        nodes = np.column_stack([t1.ravel(), t2.ravel()])
        pts = np.exp(1j * nodes)
        weights = np.full(N * N, (2 * np.pi / N) ** 2)
        return BoundaryGrid(nodes, weights, pts, measure)
    if isinstance(spec, Egg):
        if not isinstance(measure, EGG_MEASURES):
            raise InvalidInputError(f"{type(measure).__name__} is not an egg boundary measure")
        if M is None or M < 4:
            raise InvalidInputError("egg grids need M >= 4 nodes in s")
        p = spec.p
        s, t, ws = tanh_sinh_nodes(M, float(egg_density_exponent(p, measure)))
        ws = ws * egg_density(p, measure, s, t)
        si = np.repeat(np.arange(M), N * N)
        t1 = np.tile(np.repeat(theta, N), M)
        t2 = np.tile(theta, M * N)
        nodes = np.column_stack([s[si], t1, t2])
        pts = np.column_stack([
            s[si] ** (1 / (2 * p)) * np.exp(1j * t1),
            t[si] ** (1 / (2 * p)) * np.exp(1j * t2),
        ])
        weights = ws[si] * (2 * np.pi / N) ** 2
        return BoundaryGrid(nodes, weights, pts, measure)
    raise InvalidInputError(f"unsupported domain {spec!r}")


def samples_on_grid(spec: DomainSpec, func: Callable, N: int):
    """Boundary values of ``func`` on the natural grid, shaped like :class:`~szego_lab.series.GridSamples`.

    Planar functions are called with points of the (image) boundary; torus
    functions with ``(w1, w2)`` arrays.
    """
    from .series import GridSamples

    grid = boundary_grid(spec, N)
    if isinstance(spec, TORUS):
        vals = func(grid.points[:, 0], grid.points[:, 1]).reshape(N, N)
    elif isinstance(spec, PLANAR):
        vals = func(grid.points)
    else:
        raise InvalidInputError("grid samples are defined for planar and torus domains only")
    return GridSamples(np.broadcast_to(vals, (N, N) if isinstance(spec, TORUS) else (N,)))


def spiral_points(count: int, r_max: float = 0.9, center: complex = 0j, r_min: float = 0.0) -> np.ndarray:
    """Deterministic golden-angle spiral in the annulus ``r_min <= |z - center| < r_max`` (no RNG)."""
    i = np.arange(count)
    r = np.sqrt(r_min**2 + (r_max**2 - r_min**2) * (i + 0.5) / count)
    ang = i * np.pi * (3 - np.sqrt(5))
    return center + r * np.exp(1j * ang)
