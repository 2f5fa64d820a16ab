import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from szego_lab.errors import InvalidInputError, PreconditionError
from szego_lab.series import (
    CircleCoefficients,
    GridSamples,
    TorusCoefficients,
    analyze,
    evaluate,
    grid_angles,
    l2_norm,
    synthesize,
)


def test_pure_mode_circle():
    th = grid_angles(8)
    c = analyze(GridSamples(np.exp(1j * th)))
    assert c.min_index == -4
    expected = np.zeros(8)
    expected[1 + 4] = 1
    np.testing.assert_allclose(c.coeffs, expected, atol=1e-15)


def test_constant_at_n4():
    c = analyze(GridSamples(np.ones(4)))
    assert c.coefficient(0) == pytest.approx(1)
    assert all(abs(c.coefficient(j)) < 1e-15 for j in (-2, -1, 1))


def test_pure_mode_torus():
    th = grid_angles(16)
    t1, t2 = np.meshgrid(th, th, indexing="ij")
    c = analyze(GridSamples(np.exp(1j * (2 * t1 - t2))))
    assert c.coefficient(2, -1) == pytest.approx(1, abs=1e-14)
    assert np.sum(np.abs(c.coeffs) > 1e-12) == 1


@pytest.mark.parametrize("j, N, expected", [
    (0, 4, lambda th: np.ones_like(th)),
    (-1, 8, lambda th: np.exp(-1j * th)),
])
def test_synthesize_single_mode(j, N, expected):
    s = synthesize(CircleCoefficients(j, [1.0]), N)
    np.testing.assert_allclose(s.values, expected(grid_angles(N)), atol=1e-14)


def test_alias_guard_names_required_n():
    with pytest.raises(PreconditionError, match="N >= 11"):
        synthesize(CircleCoefficients(-5, np.ones(3)), 8)
    with pytest.raises(PreconditionError):
        synthesize(TorusCoefficients(0, 0, np.ones((7, 1))), 12)


def test_empty_samples_rejected():
    with pytest.raises(InvalidInputError):
        analyze(GridSamples(np.array([])))
    with pytest.raises(InvalidInputError):
        GridSamples(np.ones((3, 4)))


@pytest.mark.parametrize("scale, expected", [(np.sqrt(2 * np.pi), np.sqrt(2 * np.pi)), (1.0, 1.0)])
def test_l2_unit(scale, expected):
    assert l2_norm(CircleCoefficients(7, [1.0]), scale) == pytest.approx(expected)


def test_l2_pythagorean():
    assert l2_norm(CircleCoefficients(-3, [3.0, 4.0])) == pytest.approx(5.0)


def test_coefficients_are_immutable():
    c = CircleCoefficients(0, [1.0, 2.0])
    with pytest.raises(ValueError):
        c.coeffs[0] = 5


def _random_circle(seed, lo, width):
    rng = np.random.default_rng(seed)
    return CircleCoefficients(lo, rng.standard_normal(width) + 1j * rng.standard_normal(width))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), lo=st.integers(-10, 5), width=st.integers(1, 12), extra=st.integers(0, 9))
def test_round_trip_random_window(seed, lo, width, extra):
    c = _random_circle(seed, lo, width)
    N = 2 * c.max_abs_index + 1 + extra
    back = analyze(synthesize(c, N))
    err = max(abs(back.coefficient(j) - c.coefficient(j)) for j in range(-N, N))
    assert err <= 1e-13 * max(1.0, np.max(np.abs(c.coeffs)))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), N=st.integers(1, 40))
def test_samples_round_trip(seed, N):
    rng = np.random.default_rng(seed)
    x = GridSamples(rng.standard_normal(N) + 1j * rng.standard_normal(N))
    y = synthesize(analyze(x), N)
    np.testing.assert_allclose(y.values, x.values, rtol=0, atol=1e-13 * np.max(np.abs(x.values)))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), N=st.sampled_from([4, 9, 16, 33]))
def test_torus_round_trip(seed, N):
    rng = np.random.default_rng(seed)
    x = GridSamples(rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N)))
    np.testing.assert_allclose(synthesize(analyze(x), N).values, x.values, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), lo=st.integers(-8, 0), width=st.integers(1, 16))
def test_parseval_circle(seed, lo, width):
    c = _random_circle(seed, lo, width)
    N = 2 * c.max_abs_index + 2
    f = synthesize(c, N).values
    quad = np.sum(np.abs(f) ** 2) * 2 * np.pi / N
    assert l2_norm(analyze(synthesize(c, N)), np.sqrt(2 * np.pi)) ** 2 == pytest.approx(quad, rel=1e-12)


def test_parseval_torus():
    rng = np.random.default_rng(3)
    c = TorusCoefficients(-4, -3, rng.standard_normal((9, 8)) + 1j * rng.standard_normal((9, 8)))
    N = 16
    f = synthesize(c, N).values
    quad = np.sum(np.abs(f) ** 2) * (2 * np.pi / N) ** 2
    assert l2_norm(c, 2 * np.pi) ** 2 == pytest.approx(quad, rel=1e-12)


def test_evaluate_laurent():
    c = CircleCoefficients(-2, [1, 0, 0, 3, 0, 0, 0, 1])
    z = 0.5 + 0.2j
    assert evaluate(c, z) == pytest.approx(z**-2 + 3 * z + z**5)
    t = TorusCoefficients(0, -1, [[0, 0], [2.0, 0]])
    assert evaluate(t, (0.3, 0.5j)) == pytest.approx(2 * 0.3 / 0.5j)
    with pytest.raises(InvalidInputError):
        evaluate(c, 0)
