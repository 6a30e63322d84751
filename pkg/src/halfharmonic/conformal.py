"""Stereographic projections, the half-plane/disk maps and Blaschke traces.

Points of the plane are complex numbers.  The circle is parametrized by
``theta``; the real line by ``x``.  The north-pole projection

    Pi_+(p) = Re p / (1 - Im p)

sends ``e^{i theta}`` to ``x = tan(theta/2 + pi/4)``, which is the formula used
internally so that the north pole ``theta = pi/2`` maps cleanly to infinity.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import PoleSingularity
from .spectral import from_samples, grid

NORTH = 1j
SOUTH = -1j


def stereo_north(p):
    """Projection from the north pole ``i``: ``x / (1 - y)``."""
    p = np.asarray(p, dtype=complex)
    if np.any(np.abs(p - NORTH) < 1e-12):
        raise PoleSingularity("stereographic projection evaluated at the north pole")
    out = p.real / (1.0 - p.imag)
    return out if out.ndim else float(out)


def stereo_south(p):
    """Projection from the south pole ``-i``: ``x / (1 + y)``."""
    p = np.asarray(p, dtype=complex)
    if np.any(np.abs(p - SOUTH) < 1e-12):
        raise PoleSingularity("stereographic projection evaluated at the south pole")
    out = p.real / (1.0 + p.imag)
    return out if out.ndim else float(out)


def inverse_stereo_north(x):
    """``Pi_+^{-1}(x) = (2x + i(x^2 - 1)) / (1 + x^2)``; ``+-inf`` maps to ``i``."""
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        out = (2.0 * x + 1j * (x * x - 1.0)) / (1.0 + x * x)
    out = np.where(np.isinf(x), NORTH, out)
    return out if out.ndim else complex(out)


def inverse_stereo_south(x):
    """``Pi_-^{-1}(x) = (2x + i(1 - x^2)) / (1 + x^2)``; ``+-inf`` maps to ``-i``."""
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        out = (2.0 * x + 1j * (1.0 - x * x)) / (1.0 + x * x)
    out = np.where(np.isinf(x), SOUTH, out)
    return out if out.ndim else complex(out)


def line_coordinate(theta):
    """``Pi_+(e^{i theta}) = tan(theta/2 + pi/4)`` (infinite at the north pole)."""
    return np.tan(np.asarray(theta) / 2.0 + np.pi / 4.0)


def phi_map(z):
    """Biholomorphism of the closed upper half-plane onto the disk minus ``i``."""
    z = np.asarray(z, dtype=complex)
    out = (z - 1j) / (1.0 - 1j * z)
    return out if out.ndim else complex(out)


def psi_map(w):
    """Inverse of :func:`phi_map`: ``-i (w + i) / (w - i)``."""
    w = np.asarray(w, dtype=complex)
    out = -1j * (w + 1j) / (w - 1j)
    return out if out.ndim else complex(out)


def disk_automorphism(z, a, rotation=0.0):
    """``e^{i rotation} (z - a) / (1 - conj(a) z)`` for ``|a| < 1``."""
    z = np.asarray(z, dtype=complex)
    return np.exp(1j * rotation) * (z - a) / (1.0 - np.conj(a) * z)


def _g_lambda_angles(theta, lam):
    # x/lambda with x = tan(beta), then back to an angle; arctan2 keeps the
    # north pole (cos beta = 0) finite
    beta = np.asarray(theta) / 2.0 + np.pi / 4.0
    return 2.0 * np.arctan2(np.sin(beta), lam * np.cos(beta)) - np.pi / 2.0


def g_lambda(x, lam):
    """Boundary datum ``g_lambda(x) = Pi_+^{-1}(x / lambda)`` on the line."""
    return inverse_stereo_north(np.asarray(x, dtype=float) / lam)


def g_lambda_circle(theta, lam):
    """``g_lambda(Pi_+(e^{i theta}))``; equals ``i`` at the north pole."""
    return np.exp(1j * _g_lambda_angles(theta, lam))


def concentrating_trace(theta, lam, center=1.5 * np.pi):
    """Degree-one Moebius trace of scale ``lam`` concentrating at angle ``center``.

    The identity for ``lam = 1``; as ``lam -> 0`` the whole circle except a
    shrinking arc around ``center`` maps near ``-e^{i center}``.  With
    ``center = 3 pi / 2`` this is the ``g_lambda`` trace.
    """
    beta = (np.asarray(theta, dtype=float) - center) / 2.0
    return np.exp(1j * (2.0 * np.arctan2(np.sin(beta), lam * np.cos(beta)) + center))


@dataclass(frozen=True)
class LambdaDatum:
    """Scale ``lam`` of the boundary datum ``g_lambda``.

    The prescribed region is the closed upper arc ``0 <= theta <= pi``, the
    image of ``|x| >= 1`` under ``Pi_+^{-1}``; its endpoints are
    ``Pi_+^{-1}(+-1) = +-1``.
    """

    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("lambda must be positive")

    @property
    def arc(self):
        return (0.0, np.pi)

    @property
    def endpoints(self):
        return inverse_stereo_north(np.array([1.0, -1.0]))


def g_lambda_trace(datum, n):
    """Circle-side samples of ``g_lambda`` on an ``n``-point grid."""
    lam = datum.lam if isinstance(datum, LambdaDatum) else float(datum)
    return from_samples(g_lambda_circle(grid(n), lam), assert_circle=True)


@dataclass(frozen=True)
class BlaschkeParams:
    """Phase and upper-half-plane poles of a Blaschke product.

    ``conjugated`` selects the conjugate class (degree ``-len(poles)``).
    """

    phase: float = 0.0
    poles: tuple = field(default_factory=tuple)
    conjugated: bool = False

    def __post_init__(self):
        poles = tuple(complex(b) for b in self.poles)
        if any(b.imag <= 0 for b in poles):
            raise ValueError("Blaschke poles must lie in the open upper half-plane")
        object.__setattr__(self, "poles", poles)

    @property
    def degree(self):
        return (-1 if self.conjugated else 1) * len(self.poles)

    @classmethod
    def from_disk_zeros(cls, zeros, phase=0.0, conjugated=False):
        """Parameters whose trace vanishes-in-the-disk at ``zeros`` (``|a| < 1``)."""
        return cls(phase, tuple(psi_map(np.asarray(zeros, dtype=complex))), conjugated)


def blaschke_line(x, params):
    """Half-plane Blaschke product evaluated on the real line (``inf`` allowed)."""
    x = np.asarray(x, dtype=float)
    big = np.isinf(x)
    beta = np.arctan(x)
    s, c = np.sin(beta), np.cos(beta)
    out = np.full(x.shape, np.exp(1j * params.phase), dtype=complex)
    for b in params.poles:
        # (x - b)/(x - conj b) with x = tan(beta), multiplied through by cos(beta)
        out *= (s - b * c) / (s - np.conj(b) * c)
    out = np.where(big, np.exp(1j * params.phase), out)
    return np.conj(out) if params.conjugated else out


def blaschke_circle(theta, params):
    """Blaschke product at ``z = Psi(e^{i theta})``, computed without overflow."""
    beta = np.asarray(theta, dtype=float) / 2.0 + np.pi / 4.0
    s, c = np.sin(beta), np.cos(beta)
    out = np.full(beta.shape, np.exp(1j * params.phase), dtype=complex)
    for b in params.poles:
        out *= (s - b * c) / (s - np.conj(b) * c)
    return np.conj(out) if params.conjugated else out


def blaschke_trace(params, n):
    """Samples of the Blaschke product on the circle."""
    return from_samples(blaschke_circle(grid(n), params), assert_circle=True)


def random_blaschke(rng, k, max_radius=0.8, conjugated=False):
    """Random degree-``k`` parameters with disk zeros of modulus ``<= max_radius``."""
    r = max_radius * np.sqrt(rng.uniform(0.0, 1.0, size=k))
    a = r * np.exp(1j * rng.uniform(0.0, 2 * np.pi, size=k))
    return BlaschkeParams.from_disk_zeros(a, phase=rng.uniform(0.0, 2 * np.pi),
                                          conjugated=conjugated)


def precompose_automorphism(u, a, rotation=0.0):
    """Return ``u o M`` with ``M`` the disk automorphism, on the same grid.

    Values are read off the trigonometric interpolant of ``u``.
    """
    theta = grid(u.n_samples)
    w = disk_automorphism(np.exp(1j * theta), a, rotation)
    vals = u.evaluate(np.angle(w))
    if u.on_circle:
        vals = vals / np.abs(vals)
    return from_samples(vals, assert_circle=u.on_circle)
