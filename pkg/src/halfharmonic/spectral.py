"""Band-limited circle maps and the fractional operators acting on them.

A :class:`CircleMap` stores both the samples ``u(theta_j)`` on the uniform grid
``theta_j = 2*pi*j/N`` and the Fourier coefficients

    a_k = (2*pi)**-0.5 * integral u(e^{i theta}) e^{-ik theta} d theta,

for ``-N/2 <= k <= N/2``, so that ``u = (2*pi)**-0.5 * sum_k a_k e^{ik theta}``.
With this normalization ``E(e^{ik theta}) = 2*pi*|k|``.

The Nyquist bin of an even-length DFT is shared by ``k = +N/2`` and
``k = -N/2``; it is split evenly between them, which keeps every multiplier
that is symmetric or antisymmetric in ``k`` well defined on the grid.
"""

from dataclasses import dataclass

import numpy as np

from .errors import LengthError, ModulusCollapse, NonUnitModulus, QuadratureOverflow

SQRT_2PI = np.sqrt(2.0 * np.pi)

#: tolerance on |samples| - 1 accepted by ``from_samples(assert_circle=True)``
CIRCLE_TOL = 1e-9

#: renormalization floor for pointwise projection onto the circle
MODULUS_FLOOR = 0.5


def grid(n):
    """Uniform angles ``2*pi*j/n``, ``j = 0..n-1``."""
    return 2.0 * np.pi * np.arange(n) / n


def modes(n):
    """Wavenumbers ``-n/2 .. n/2`` matching the layout of ``CircleMap.spectrum``."""
    return np.arange(-(n // 2), n // 2 + 1)


def _check_length(n):
    if n < 8 or n % 2:
        raise LengthError(f"sample count must be even and >= 8, got {n}")


def _fft_to_spectrum(c):
    n = c.size
    h = n // 2
    spec = np.empty(n + 1, dtype=complex)
    # k = -h+1 .. h-1
    spec[1:h] = c[h + 1:]
    spec[h:2 * h] = c[:h]
    spec[0] = spec[2 * h] = 0.5 * c[h]
    return spec * (SQRT_2PI / n)


def _spectrum_to_fft(spec):
    n = spec.size - 1
    h = n // 2
    c = np.empty(n, dtype=complex)
    c[:h] = spec[h:2 * h]
    c[h + 1:] = spec[1:h]
    c[h] = spec[0] + spec[2 * h]
    return c * (n / SQRT_2PI)


@dataclass(frozen=True)
class CircleMap:
    """Band-limited map from the circle into the plane.

    Use :func:`from_samples` or :func:`from_spectrum` rather than calling the
    constructor directly; both keep samples and spectrum consistent and mark
    the arrays read-only.
    """

    samples: np.ndarray
    spectrum: np.ndarray
    on_circle: bool = False

    @property
    def n_samples(self):
        return self.samples.size

    @property
    def theta(self):
        return grid(self.n_samples)

    @property
    def modes(self):
        return modes(self.n_samples)

    def coefficient(self, k):
        """Return ``a_k`` (zero outside the band)."""
        h = self.n_samples // 2
        if abs(k) > h:
            return 0.0j
        return self.spectrum[k + h]

    def evaluate(self, theta):
        """Evaluate the trigonometric interpolant at arbitrary angles."""
        theta = np.asarray(theta, dtype=float)
        k = self.modes
        phase = np.exp(1j * np.multiply.outer(theta, k))
        return phase @ self.spectrum / SQRT_2PI

    def derivative(self):
        """Angular derivative ``du/dtheta`` as a new (plane-valued) map."""
        return apply_multiplier(self, 1j * self.modes)

    def conj(self):
        return from_samples(np.conj(self.samples), assert_circle=self.on_circle)

    def rotate(self, shift):
        """Return ``theta -> u(theta - shift*2*pi/N)`` for an integer node shift."""
        return from_samples(np.roll(self.samples, shift), assert_circle=self.on_circle)

    def upsample(self, factor):
        """Same band-limited function sampled on a grid ``factor`` times finer."""
        n = self.n_samples
        m = n * factor
        spec = np.zeros(m + 1, dtype=complex)
        h, hm = n // 2, m // 2
        spec[hm - h:hm + h + 1] = self.spectrum
        # a split Nyquist pair becomes two ordinary modes on the finer grid
        return from_spectrum(spec)

    def __len__(self):
        return self.n_samples


def _freeze(a):
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


def unit_normalize(values):
    """``z / |z|``, leaving values already of unit modulus bit-identical."""
    values = np.asarray(values, dtype=complex)
    mod = np.abs(values)
    return np.where(np.abs(mod - 1.0) > 2.0 ** -50, values / mod, values)


def from_samples(values, assert_circle=False):
    """Build a :class:`CircleMap` from grid samples.

    Parameters
    ----------
    values : array_like of complex
        Samples at ``theta_j = 2*pi*j/N``; ``N`` even and at least 8.
    assert_circle : bool
        Require ``|values| == 1`` within ``CIRCLE_TOL``; values are then
        renormalized to modulus one exactly.

    Raises
    ------
    LengthError
        Bad length or non-finite values.
    NonUnitModulus
        ``assert_circle`` set and some modulus deviates by more than ``CIRCLE_TOL``.
    """
    values = np.asarray(values, dtype=complex).ravel()
    _check_length(values.size)
    if not np.all(np.isfinite(values)):
        raise LengthError("samples must be finite")
    if assert_circle:
        mod = np.abs(values)
        dev = np.max(np.abs(mod - 1.0))
        if dev > CIRCLE_TOL:
            raise NonUnitModulus(f"max | |u| - 1 | = {dev:.3e} exceeds {CIRCLE_TOL:g}")
        values = unit_normalize(values)
    spectrum = _fft_to_spectrum(np.fft.fft(values))
    return CircleMap(_freeze(values), _freeze(spectrum), bool(assert_circle))


def from_spectrum(spectrum):
    """Build a plane-valued :class:`CircleMap` from coefficients ``a_{-N/2..N/2}``."""
    spectrum = np.asarray(spectrum, dtype=complex).ravel()
    n = spectrum.size - 1
    _check_length(n)
    spectrum = spectrum.copy()
    h = n // 2
    nyq = 0.5 * (spectrum[0] + spectrum[2 * h])
    spectrum[0] = spectrum[2 * h] = nyq
    samples = np.fft.ifft(_spectrum_to_fft(spectrum))
    return CircleMap(_freeze(samples), _freeze(spectrum), False)


def from_function(func, n, assert_circle=True):
    """Sample ``func(theta)`` on the ``n``-point grid."""
    return from_samples(func(grid(n)), assert_circle=assert_circle)


def project_to_circle(values, floor=MODULUS_FLOOR):
    """Pointwise ``z / |z|`` with a collapse guard."""
    values = np.asarray(values, dtype=complex)
    mod = np.abs(values)
    if np.min(mod) < floor:
        raise ModulusCollapse(f"modulus {np.min(mod):.3g} below floor {floor}")
    return values / mod


def apply_multiplier(u, multiplier):
    """Fourier multiplier ``a_k -> m(k) a_k`` on the band-limited representative."""
    return from_spectrum(u.spectrum * multiplier)


def frac_laplacian_quarter(u):
    """``(-Delta)^{1/4}``: coefficients ``sqrt(|k|) a_k``."""
    return apply_multiplier(u, np.sqrt(np.abs(u.modes)))


def frac_laplacian_half(u):
    """``(-Delta)^{1/2}``: coefficients ``|k| a_k``."""
    return apply_multiplier(u, np.abs(u.modes).astype(float))


def hilbert_transform(u):
    """Periodic Hilbert transform: ``a_k -> -i sign(k) a_k``, zero mean mode."""
    return apply_multiplier(u, -1j * np.sign(u.modes))


def spectral_energy(u):
    """``sum_k |k| |a_k|^2``."""
    return float(np.sum(np.abs(u.modes) * np.abs(u.spectrum) ** 2))


def double_integral_energy(u):
    """Gagliardo form of the energy by grid quadrature, diagonal excluded.

    ``(1/2pi) * sum_{j != l} |u_j - u_l|^2 / |e^{i theta_j} - e^{i theta_l}|^2 * h^2``
    with ``h = 2*pi/N``.  Evaluated offset by offset, so memory stays O(N).
    """
    x = u.samples
    n = x.size
    h = 2.0 * np.pi / n
    total = 0.0
    for m in range(1, n):
        num = np.sum(np.abs(x - np.roll(x, -m)) ** 2)
        total += num / (4.0 * np.sin(np.pi * m / n) ** 2)
    value = total * h * h / (2.0 * np.pi)
    if not np.isfinite(value):
        raise QuadratureOverflow("double integral is not finite")
    return float(value)


@dataclass(frozen=True)
class EnergyReport:
    """Energy of a map by up to three routes (dimensionless).

    ``None`` marks routes that were not requested.
    """

    spectral: float = None
    double_integral: float = None
    extension: float = None

    def values(self):
        return {k: v for k, v in (("spectral", self.spectral),
                                  ("double_integral", self.double_integral),
                                  ("extension", self.extension)) if v is not None}

    def max_disagreement(self):
        vals = list(self.values().values())
        if len(vals) < 2:
            return 0.0
        return max(vals) - min(vals)


ENERGY_METHODS = ("spectral", "double_integral", "extension")


def energy(u, methods=("spectral",), n_r=None):
    """Fractional Dirichlet energy of ``u``.

    Parameters
    ----------
    u : CircleMap
    methods : iterable of {"spectral", "double_integral", "extension"}
    n_r : int, optional
        Radial resolution for the extension route.
    """
    methods = set(methods)
    unknown = methods - set(ENERGY_METHODS)
    if unknown:
        raise ValueError(f"unknown energy methods {sorted(unknown)}")
    out = {}
    if "spectral" in methods:
        out["spectral"] = spectral_energy(u)
    if "double_integral" in methods:
        out["double_integral"] = double_integral_energy(u)
    if "extension" in methods:
        from .extension import dirichlet_energy, poisson_extend

        out["extension"] = dirichlet_energy(poisson_extend(u, n_r=n_r))
    for name, val in out.items():
        if not np.isfinite(val):
            raise QuadratureOverflow(f"{name} energy is not finite")
    return EnergyReport(**out)


def smooth_average(u, eps):
    """Arc average over ``[theta - eps, theta + eps]`` followed by renormalization.

    The average of the band-limited representative is exact: mode ``k`` is
    multiplied by ``sin(k eps)/(k eps)``.

    Raises
    ------
    ModulusCollapse
        If some averaged value has modulus below ``MODULUS_FLOOR``.
    """
    if not u.on_circle:
        raise ValueError("smooth_average expects a circle-valued map")
    if not 0.0 < eps < np.pi / 2:
        raise ValueError("eps must lie in (0, pi/2)")
    avg = apply_multiplier(u, np.sinc(u.modes * eps / np.pi))
    return from_samples(project_to_circle(avg.samples), assert_circle=True)


def averaged_modulus(u, eps):
    """Moduli of the arc averages before renormalization (diagnostic)."""
    return np.abs(apply_multiplier(u, np.sinc(u.modes * eps / np.pi)).samples)
