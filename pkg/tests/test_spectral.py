import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfharmonic.errors import LengthError, ModulusCollapse, NonUnitModulus
from halfharmonic.spectral import (SQRT_2PI, averaged_modulus, double_integral_energy,
                                   energy, frac_laplacian_half, frac_laplacian_quarter,
                                   from_function, from_samples, from_spectrum, grid,
                                   hilbert_transform, smooth_average, spectral_energy)

from oracles import dense_coefficients, dense_double_integral, trig_energy, trig_poly

TWO_PI = 2 * np.pi


def mode(k, n=64):
    return from_function(lambda t: np.exp(1j * k * t), n)


@st.composite
def trig_polys(draw, max_deg=8):
    deg = draw(st.integers(1, max_deg))
    re = draw(st.lists(st.floats(-1, 1), min_size=2 * deg + 1, max_size=2 * deg + 1))
    im = draw(st.lists(st.floats(-1, 1), min_size=2 * deg + 1, max_size=2 * deg + 1))
    return {k: complex(r, i) for k, r, i in zip(range(-deg, deg + 1), re, im)}


sizes = st.sampled_from([16, 32, 64, 128])


# -- construction -----------------------------------------------------------

def test_constant_map_spectrum():
    u = from_samples(np.ones(32), assert_circle=True)
    assert u.coefficient(0) == pytest.approx(SQRT_2PI)
    assert np.allclose(np.delete(u.spectrum, 16), 0.0, atol=1e-14)


def test_single_mode_spectrum():
    u = mode(1)
    assert u.coefficient(1) == pytest.approx(SQRT_2PI)
    others = np.delete(u.spectrum, 32 + 1)
    assert np.max(np.abs(others)) < 1e-13


@pytest.mark.parametrize("n", [7, 6, 0, 31])
def test_bad_length(n):
    with pytest.raises(LengthError):
        from_samples(np.ones(n))


def test_non_finite_rejected():
    x = np.ones(16, dtype=complex)
    x[3] = np.nan
    with pytest.raises(LengthError):
        from_samples(x)


def test_non_unit_modulus():
    x = np.ones(16, dtype=complex)
    x[2] = 1.0 + 1e-6
    with pytest.raises(NonUnitModulus):
        from_samples(x, assert_circle=True)


def test_small_deviation_renormalized():
    x = np.exp(1j * grid(16)) * (1 + 1e-11)
    u = from_samples(x, assert_circle=True)
    assert np.max(np.abs(np.abs(u.samples) - 1)) < 1e-15
    assert u.on_circle


def test_arrays_are_read_only():
    u = mode(2)
    with pytest.raises(ValueError):
        u.samples[0] = 0


@given(trig_polys(5), sizes)
def test_round_trip(coeffs, n):
    x = trig_poly(coeffs, grid(n))
    u = from_samples(x)
    back = from_spectrum(u.spectrum)
    assert np.max(np.abs(back.samples - x)) <= 1e-10 * max(1.0, np.max(np.abs(x)))


@given(trig_polys(5), sizes)
def test_spectrum_matches_dense_dft(coeffs, n):
    x = trig_poly(coeffs, grid(n))
    _, a = dense_coefficients(x)
    assert np.allclose(from_samples(x).spectrum, a, atol=1e-11)


@given(trig_polys(6), sizes)
def test_parseval(coeffs, n):
    u = from_samples(trig_poly(coeffs, grid(n)))
    lhs = np.sum(np.abs(u.spectrum) ** 2)
    rhs = TWO_PI / n * np.sum(np.abs(u.samples) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


def test_evaluate_interpolates(rng):
    coeffs = {k: complex(*rng.normal(size=2)) for k in range(-5, 6)}
    u = from_samples(trig_poly(coeffs, grid(64)))
    t = rng.uniform(0, TWO_PI, 20)
    assert np.allclose(u.evaluate(t), trig_poly(coeffs, t), atol=1e-12)


def test_upsample_preserves_function(rng):
    coeffs = {k: complex(*rng.normal(size=2)) for k in range(-7, 8)}
    u = from_samples(trig_poly(coeffs, grid(32)))
    v = u.upsample(4)
    assert np.allclose(v.samples, trig_poly(coeffs, grid(128)), atol=1e-12)
    assert spectral_energy(v) == pytest.approx(spectral_energy(u), rel=1e-12)


# -- operators --------------------------------------------------------------

@pytest.mark.parametrize("op", [frac_laplacian_quarter, frac_laplacian_half, hilbert_transform])
def test_constant_annihilated(op):
    out = op(from_samples(np.full(32, 1j), assert_circle=True))
    assert np.max(np.abs(out.samples)) < 1e-14
    assert not out.on_circle


@pytest.mark.parametrize("k, factor", [(1, 1.0), (4, 2.0), (-9, 3.0)])
def test_quarter_eigenvalues(k, factor):
    u = mode(k)
    assert np.allclose(frac_laplacian_quarter(u).samples, factor * u.samples, atol=1e-12)


@pytest.mark.parametrize("k", [1, -3, 7])
def test_half_eigenvalues(k):
    u = mode(k)
    assert np.allclose(frac_laplacian_half(u).samples, abs(k) * u.samples, atol=1e-12)


@pytest.mark.parametrize("k, factor", [(1, -1j), (-2, 1j), (5, -1j)])
def test_hilbert_modes(k, factor):
    u = mode(k)
    assert np.allclose(hilbert_transform(u).samples, factor * u.samples, atol=1e-13)


@given(trig_polys(8), sizes)
def test_semigroup(coeffs, n):
    u = from_samples(trig_poly(coeffs, grid(n)))
    twice = frac_laplacian_quarter(frac_laplacian_quarter(u))
    assert np.allclose(twice.spectrum, frac_laplacian_half(u).spectrum, atol=1e-10)


@given(trig_polys(8), sizes)
def test_hilbert_commutes_with_quarter(coeffs, n):
    u = from_samples(trig_poly(coeffs, grid(n)))
    a = hilbert_transform(frac_laplacian_quarter(u))
    b = frac_laplacian_quarter(hilbert_transform(u))
    assert np.max(np.abs(a.samples - b.samples)) < 1e-10


# -- energies ---------------------------------------------------------------

def test_identity_energy():
    assert spectral_energy(mode(1, 512)) == pytest.approx(TWO_PI, rel=1e-12)


def test_constant_energy_all_routes():
    rep = energy(from_samples(np.ones(64), assert_circle=True),
                 {"spectral", "double_integral", "extension"})
    assert all(abs(v) < 1e-12 for v in rep.values().values())


def test_mode3_energy_routes():
    rep = energy(mode(3, 512), {"spectral", "double_integral"})
    assert rep.spectral == pytest.approx(6 * np.pi, rel=1e-12)
    assert rep.double_integral == pytest.approx(6 * np.pi, rel=0.02)


@pytest.mark.parametrize("k", [1, 2, 5])
def test_double_integral_closed_form(k):
    # the diagonal-free grid sum of e^{ik theta} is exactly 2 pi k (1 - k/N)
    n = 128
    assert double_integral_energy(mode(k, n)) == pytest.approx(TWO_PI * k * (1 - k / n),
                                                               rel=1e-10)


def test_double_integral_matches_dense(rng):
    coeffs = {k: complex(*rng.normal(size=2)) for k in range(-4, 5)}
    x = trig_poly(coeffs, grid(64))
    assert double_integral_energy(from_samples(x)) == pytest.approx(
        dense_double_integral(x), rel=1e-12)


@given(trig_polys(8))
def test_energy_methods_agree(coeffs):
    # degree <= N/8 at N = 512
    u = from_samples(trig_poly(coeffs, grid(512)))
    rep = energy(u, {"spectral", "double_integral"})
    assert rep.spectral == pytest.approx(trig_energy(coeffs), rel=1e-10, abs=1e-12)
    assert rep.double_integral == pytest.approx(rep.spectral, rel=0.02, abs=1e-10)


@given(trig_polys(6), st.integers(0, 127))
def test_rotation_invariance(coeffs, shift):
    u = from_samples(trig_poly(coeffs, grid(128)))
    assert spectral_energy(u.rotate(shift)) == pytest.approx(spectral_energy(u),
                                                             rel=1e-12, abs=1e-12)


def test_unknown_energy_method():
    with pytest.raises(ValueError):
        energy(mode(1), {"spectral", "bogus"})


# -- smoothing --------------------------------------------------------------

def test_average_constant():
    u = from_samples(np.full(64, np.exp(0.3j)), assert_circle=True)
    assert np.allclose(smooth_average(u, 0.4).samples, u.samples, atol=1e-14)


def test_average_single_mode():
    u = mode(1, 256)
    assert np.allclose(averaged_modulus(u, 0.1), np.sin(0.1) / 0.1, atol=1e-12)
    assert np.allclose(smooth_average(u, 0.1).samples, u.samples, atol=1e-12)


def test_average_jump_map():
    theta = grid(256)
    u = from_samples(np.where(theta < np.pi, 1.0, 1j), assert_circle=True)
    v = smooth_average(u, 0.2)
    assert v.on_circle
    assert np.isfinite(spectral_energy(v))
    assert spectral_energy(v) < spectral_energy(u)


def test_average_collapse():
    # e^{3i theta} averaged over a half-width near pi/3 nearly cancels
    with pytest.raises(ModulusCollapse):
        smooth_average(mode(3, 256), 1.0)


@pytest.mark.parametrize("eps", [0.0, -0.1, np.pi / 2])
def test_average_bad_eps(eps):
    with pytest.raises(ValueError):
        smooth_average(mode(1), eps)
