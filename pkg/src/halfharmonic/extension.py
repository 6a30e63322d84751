"""Harmonic extension to the disk and the degree of circle maps.

Three degree formulas are evaluated independently:

* ``fourier``  -- ``(1/2pi) sum_k k |a_k|^2``
* ``hilbert``  -- ``(1/2pi i) int H[(-Delta)^{1/4} conj(u)] (-Delta)^{1/4} u``,
  a grid pairing of two synthesized sample arrays
* ``jacobian`` -- ``(1/pi) int_D J u~`` by 2-D quadrature of the Jacobian of
  the harmonic extension on a polar grid
"""

from dataclasses import dataclass

import numpy as np

from .errors import UnresolvedDegree
from .spectral import (SQRT_2PI, CircleMap, _spectrum_to_fft, frac_laplacian_quarter,
                       from_samples, hilbert_transform, spectral_energy)

#: degree reports with a larger residual raise UnresolvedDegree
UNRESOLVED_THRESHOLD = 0.25


def clenshaw_curtis(n):
    """Nodes and weights of ``n``-point Clenshaw-Curtis quadrature on [0, 1].

    Nodes are increasing, start at 0 and end at 1, and cluster at both ends.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    m = n - 1
    theta = np.pi * np.arange(n) / m
    x = -np.cos(theta)
    w = np.zeros(n)
    v = np.ones(m - 1)
    inner = theta[1:-1]
    if m % 2 == 0:
        w[0] = w[-1] = 1.0 / (m * m - 1)
        for j in range(1, m // 2):
            v -= 2.0 * np.cos(2 * j * inner) / (4 * j * j - 1)
        v -= np.cos(m * inner) / (m * m - 1)
    else:
        w[0] = w[-1] = 1.0 / (m * m)
        for j in range(1, (m - 1) // 2 + 1):
            v -= 2.0 * np.cos(2 * j * inner) / (4 * j * j - 1)
    w[1:-1] = 2.0 * v / m
    # map [-1, 1] -> [0, 1]
    return 0.5 * (x + 1.0), 0.5 * w


def default_radial_resolution(n_theta):
    return max(64, n_theta // 2 + 1)


@dataclass(frozen=True)
class DiskField:
    """Harmonic extension of a circle map sampled on a polar grid.

    ``values[i, j]`` is the extension at ``radii[i] * e^{i theta_j}``; the last
    row is the boundary.
    """

    radii: np.ndarray
    weights: np.ndarray
    values: np.ndarray
    source: CircleMap

    @property
    def n_r(self):
        return self.radii.size

    @property
    def n_theta(self):
        return self.source.n_samples

    def _rows(self, coeff_fn):
        u = self.source
        k = np.abs(u.modes)
        out = np.empty((self.n_r, u.n_samples), dtype=complex)
        for i, r in enumerate(self.radii):
            out[i] = _synthesize(u.spectrum * coeff_fn(k, r), u.n_samples)
        return out

    def radial_derivative(self):
        """``d/dr`` of the extension, from the coefficient form."""
        return self._rows(lambda k, r: k * np.power(r, np.maximum(k - 1, 0)))

    def angular_derivative(self):
        """``d/dtheta`` of the extension, spectral in the angle."""
        n = self.n_theta
        kk = np.fft.fftfreq(n, 1.0 / n)
        kk[n // 2] = 0.0
        return np.fft.ifft(1j * kk * np.fft.fft(self.values, axis=1), axis=1)


def _synthesize(spectrum, n):
    return np.fft.ifft(_spectrum_to_fft(spectrum))


def poisson_extend(u, n_r=None):
    """Harmonic extension ``sum a_k r^{|k|} e^{ik theta} / sqrt(2 pi)``.

    Radial nodes are Clenshaw-Curtis points on [0, 1] (clustered at ``r = 1``
    and ``r = 0``); the last row is the boundary ``r = 1``.
    """
    n_r = default_radial_resolution(u.n_samples) if n_r is None else int(n_r)
    if n_r < 16:
        raise ValueError("radial resolution must be at least 16")
    radii, weights = clenshaw_curtis(n_r)
    k = np.abs(u.modes)
    vals = np.empty((n_r, u.n_samples), dtype=complex)
    for i, r in enumerate(radii):
        vals[i] = _synthesize(u.spectrum * np.power(r, k), u.n_samples)
    # r = 1 row reproduces the boundary samples up to round-off; pin it
    vals[-1] = u.samples
    vals.setflags(write=False)
    return DiskField(radii, weights, vals, u)


def extend_at(u, z):
    """Harmonic extension of ``u`` at arbitrary points of the closed disk.

    ``(1/sqrt(2 pi)) (sum_{k>=0} a_k z^k + sum_{k<0} a_k conj(z)^{|k|})``.
    """
    z = np.asarray(z, dtype=complex)
    k = u.modes
    pos = k >= 0
    zz = z.ravel()
    out = (np.power.outer(zz, k[pos]) @ u.spectrum[pos]
           + np.power.outer(np.conj(zz), -k[~pos]) @ u.spectrum[~pos])
    return (out / SQRT_2PI).reshape(z.shape)


def dirichlet_energy(f):
    """``int_D |grad u~|^2`` by polar quadrature.

    Integrand ``(|d_r u|^2 + r^-2 |d_theta u|^2) r``; the ``r = 0`` node carries
    zero integrand and is dropped.
    """
    dr = f.radial_derivative()
    dth = f.angular_derivative()
    r = f.radii[1:, None]
    dens = np.abs(dr[1:]) ** 2 * r + np.abs(dth[1:]) ** 2 / r
    h = 2.0 * np.pi / f.n_theta
    return float(np.sum(f.weights[1:] * dens.sum(axis=1)) * h)


def jacobian_integral(f):
    """``int_D J u~ dx dy`` where ``J dx dy = Im(conj(d_r u) d_theta u) dr dtheta``."""
    dr = f.radial_derivative()
    dth = f.angular_derivative()
    dens = np.imag(np.conj(dr) * dth)
    h = 2.0 * np.pi / f.n_theta
    return float(np.sum(f.weights * dens.sum(axis=1)) * h)


def fourier_degree(u):
    return float(np.sum(u.modes * np.abs(u.spectrum) ** 2) / (2.0 * np.pi))


def hilbert_pairing(u):
    """Grid value of ``(1/2pi i) int H[(-Delta)^{1/4} conj u] (-Delta)^{1/4} u``."""
    left = hilbert_transform(frac_laplacian_quarter(from_samples(np.conj(u.samples))))
    right = frac_laplacian_quarter(u)
    h = 2.0 * np.pi / u.n_samples
    pairing = np.sum(left.samples * right.samples) * h
    return complex(pairing / (2j * np.pi))


def jacobian_degree(u, n_r=None):
    return jacobian_integral(poisson_extend(u, n_r=n_r)) / np.pi


def lift_degree(samples):
    """Winding number of the closed polygon through the samples.

    Independent of all Fourier machinery: sums the principal phase increments.
    """
    z = np.asarray(samples, dtype=complex)
    steps = np.angle(np.roll(z, -1) / z)
    return float(np.sum(steps) / (2.0 * np.pi))


@dataclass(frozen=True)
class DegreeReport:
    """Degree by up to three formulas, rounded to the nearest integer."""

    fourier: float
    hilbert: float = None
    jacobian: float = None
    rounded: int = 0
    max_residual: float = 0.0
    hilbert_imag: float = None

    def values(self):
        return {k: v for k, v in (("fourier", self.fourier), ("hilbert", self.hilbert),
                                  ("jacobian", self.jacobian)) if v is not None}

    def spread(self):
        vals = list(self.values().values())
        return max(vals) - min(vals)


DEGREE_METHODS = ("fourier", "hilbert", "jacobian")


def degree(u, methods=DEGREE_METHODS, n_r=None, strict=True):
    """Degree of a circle-valued map.

    Parameters
    ----------
    u : CircleMap
        Must be circle-valued.
    methods : iterable of {"fourier", "hilbert", "jacobian"}
        ``fourier`` is always computed since it defines the rounding.
    n_r : int, optional
        Radial resolution for the Jacobian route.
    strict : bool
        Raise :class:`UnresolvedDegree` when the report's residual reaches
        ``UNRESOLVED_THRESHOLD``.
    """
    if not u.on_circle:
        raise ValueError("degree is defined for circle-valued maps")
    methods = set(methods) | {"fourier"}
    unknown = methods - set(DEGREE_METHODS)
    if unknown:
        raise ValueError(f"unknown degree methods {sorted(unknown)}")
    fourier = fourier_degree(u)
    hilbert = hilbert_imag = jacobian = None
    if "hilbert" in methods:
        hp = hilbert_pairing(u)
        hilbert, hilbert_imag = hp.real, hp.imag
    if "jacobian" in methods:
        jacobian = jacobian_degree(u, n_r=n_r)
    rounded = int(np.rint(fourier))
    filled = [v for v in (fourier, hilbert, jacobian) if v is not None]
    resid = max(abs(v - rounded) for v in filled)
    report = DegreeReport(fourier, hilbert, jacobian, rounded, float(resid), hilbert_imag)
    if strict and resid >= UNRESOLVED_THRESHOLD:
        raise UnresolvedDegree(
            f"degree formulas {report.values()} do not resolve an integer "
            f"(residual {resid:.3f})", report)
    return report


def degree_bound_slack(u):
    """``E/(2 pi) - |deg|`` computed from the spectrum; never negative in exact arithmetic."""
    return spectral_energy(u) / (2.0 * np.pi) - abs(fourier_degree(u))


def extension_energy(u, n_r=None):
    return dirichlet_energy(poisson_extend(u, n_r=n_r))


__all__ = [
    "DiskField", "DegreeReport", "poisson_extend", "dirichlet_energy", "jacobian_integral",
    "degree", "fourier_degree", "hilbert_pairing", "jacobian_degree", "lift_degree",
    "clenshaw_curtis", "SQRT_2PI", "UNRESOLVED_THRESHOLD", "degree_bound_slack",
    "extension_energy", "extend_at",
]
