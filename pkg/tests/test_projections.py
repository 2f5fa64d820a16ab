import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from szego_lab.domains import ConformalMap, Disk, Hartogs, ProductDxDstar, PuncturedDisk, SimplyConnectedPunctured, samples_on_grid
from szego_lab.errors import DomainError, InvalidInputError
from szego_lab.projections import (
    MultiplierSpec,
    admissible_exponents,
    hartogs_pullback,
    inner,
    interior_points,
    membership_defect,
    multiplier,
    project,
    reproduce,
)
from szego_lab.series import CircleCoefficients, GridSamples, TorusCoefficients, analyze, evaluate, l2_norm, synthesize


@pytest.mark.parametrize("family, j, l, kw, expected", [
    ("hartogs", 0, -1, dict(k=1), 1),
    ("hartogs", 0, 0, dict(k=0), 1),
    ("dxdstar", 0, 0, dict(k=0), 1),
    ("punctured_disk", 0, None, dict(k=0), 1),
    ("dxdstar", -1, 5, dict(k=2), 0),
    ("punctured_disk", -3, None, dict(k=2), 0),
    ("punctured_disk", -2, None, dict(k=2), 1),
    ("hartogs", 1, -1, dict(k=1, m=2, n=1), 1),
    ("hartogs", 1, -1, dict(k=0, m=2, n=1), 0),
])
def test_multiplier_values(family, j, l, kw, expected):
    assert multiplier(family, j, l, **kw) == expected


def test_literal_max_reading_differs():
    assert multiplier(MultiplierSpec("dxdstar", 0, literal_max=True), -1, 0) == 1
    assert multiplier(MultiplierSpec("dxdstar", 0), -1, 0) == 0


def test_unknown_family():
    with pytest.raises(InvalidInputError):
        MultiplierSpec("annulus")
    with pytest.raises(InvalidInputError):
        multiplier("hartogs", 0)


@settings(max_examples=200)
@given(family=st.sampled_from(["dxdstar", "hartogs"]), k=st.integers(0, 5), m=st.integers(1, 5), n=st.integers(1, 5), j=st.integers(-20, 20), l=st.integers(-20, 20))
def test_filtration_monotone(family, k, m, n, j, l):
    assert multiplier(family, j, l, k=k, m=m, n=n) <= multiplier(family, j, l, k=k + 1, m=m, n=n)


def _rand_torus(seed, B=6):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((2 * B + 1, 2 * B + 1)) + 1j * rng.standard_normal((2 * B + 1, 2 * B + 1))
    return TorusCoefficients(-B, -B, c)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 3), n=st.integers(1, 3), k=st.integers(0, 2))
def test_projection_idempotent_and_selfadjoint(seed, m, n, k):
    spec = MultiplierSpec("hartogs", k, m, n)
    x, y = _rand_torus(seed), _rand_torus(seed + 1)
    px = project(x, spec)
    assert project(px, spec) == px
    assert abs(inner(px, y) - inner(x, project(y, spec))) <= 1e-14 * max(1.0, abs(inner(x, y)))


def test_project_support_cases():
    spec = MultiplierSpec("punctured_disk", 1)
    ok = CircleCoefficients(-1, [1, 2, 3])
    assert project(ok, spec) == ok
    assert np.all(project(CircleCoefficients(-4, [1.0]), spec).coeffs == 0)


@pytest.mark.parametrize("k, expected", [(0, 2 * np.pi), (1, 0.0)])
def test_membership_defect_strict_filtration(k, expected):
    mode = TorusCoefficients(0, -1, [[1.0]])
    assert membership_defect(mode, MultiplierSpec("dxdstar", k), 2 * np.pi) == pytest.approx(expected)


def test_membership_defect_single_excluded_mode():
    assert membership_defect(CircleCoefficients(-2, [1.0]), MultiplierSpec("punctured_disk", 1), 3.0) == 3.0


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 4), n=st.integers(1, 4))
def test_pullback_isometry(seed, m, n):
    x = _rand_torus(seed)
    y = hartogs_pullback(x, m, n)
    assert l2_norm(y, 2 * np.pi) == pytest.approx(l2_norm(x, 2 * np.pi), rel=1e-14)
    assert y.coefficient(n * 2, n * 2 + m * (-3)) == x.coefficient(2, -3)


def test_pullback_maps_dxdstar_space_into_hartogs_space():
    x = project(_rand_torus(5), MultiplierSpec("dxdstar", 1))
    y = hartogs_pullback(x, 1, 1)
    assert membership_defect(y, MultiplierSpec("hartogs", 1)) == 0


# ---------------------------------------------------------------- reproduce


def test_disk_constant():
    g = samples_on_grid(Disk(), lambda w: np.ones_like(w), 64)
    assert reproduce(Disk(), g, 0.4 + 0.2j) == pytest.approx(1, abs=1e-13)


def test_punctured_disk_laurent():
    F = lambda z: z**-2 + 3 * z + z**5
    z = 0.6 * np.exp(1j * np.pi / 5)
    spec = PuncturedDisk((0j,), (2,))
    v = reproduce(spec, samples_on_grid(spec, F, 256), z)
    assert abs(v - F(z)) <= 1e-12 * abs(F(z))


def test_hartogs_21():
    spec = Hartogs(2, 1, 1)
    F = lambda a, b: a / b
    v = reproduce(spec, samples_on_grid(spec, F, 128), (0.1, 0.7))
    assert abs(v - F(0.1, 0.7)) <= 1e-10 * abs(F(0.1, 0.7))


def test_off_centre_puncture_rational():
    spec = PuncturedDisk((0.3 + 0.1j, -0.4j), (1, 2))
    F = lambda z: 1 / (z - 0.3 - 0.1j) + 2 / (z + 0.4j) ** 2 + z
    g = samples_on_grid(spec, F, 512)
    for z in interior_points(Disk(), 4):
        assert reproduce(spec, g, z) == pytest.approx(F(z), rel=1e-11)


def test_excluded_pole_order_is_not_reproduced():
    spec = PuncturedDisk((0j,), (1,))
    F = lambda z: z**-2
    z = 0.5
    v = reproduce(spec, samples_on_grid(spec, F, 64), z)
    assert abs(v) < 1e-12


def test_sample_dimension_checked():
    with pytest.raises(InvalidInputError):
        reproduce(Hartogs(1, 1, 0), GridSamples(np.ones(8)), (0.1, 0.5))
    with pytest.raises(DomainError):
        reproduce(PuncturedDisk((0.2,), (1,)), GridSamples(np.ones(8)), 0.2)


@pytest.mark.parametrize("spec", [ProductDxDstar(2), Hartogs(1, 1, 1), Hartogs(2, 3, 2)])
def test_multiplier_matches_kernel_projection(spec):
    rng = np.random.default_rng(0)
    B = 8
    c = TorusCoefficients(-B, -B, rng.standard_normal((2 * B + 1, 2 * B + 1)) + 1j * rng.standard_normal((2 * B + 1, 2 * B + 1)))
    N = 128
    samples = synthesize(c, N)
    proj = project(analyze(samples), MultiplierSpec.for_domain(spec))
    for z in interior_points(spec, 5):
        a, b = evaluate(proj, z), reproduce(spec, samples, z)
        assert abs(a - b) <= 1e-10 * abs(b)


def test_admissible_exponents_respect_multiplier():
    for spec in [Hartogs(5, 3, 2), ProductDxDstar(1), PuncturedDisk((0j,), (3,))]:
        ms = MultiplierSpec.for_domain(spec)
        ex = admissible_exponents(spec, 10)
        assert len(ex) == 10 and len(set(ex)) == 10
        for e in ex:
            assert ms.indicator(*(e if isinstance(e, tuple) else (e,))) == 1


def test_interior_points_are_interior():
    from szego_lab.domains import check_interior

    for spec in [Hartogs(5, 3, 2), Hartogs(1, 1, 0), ProductDxDstar(1), Disk()]:
        for z in interior_points(spec, 20):
            check_interior(spec, z)


def test_multiplier_for_off_centre_disk_rejected():
    with pytest.raises(InvalidInputError):
        MultiplierSpec.for_domain(PuncturedDisk((0.3,), (1,)))
    with pytest.raises(InvalidInputError):
        MultiplierSpec.for_domain(SimplyConnectedPunctured(ConformalMap.identity(), (0.1,), (1,)))
